"""Command-line entry point.

Exit status: 0 on success, 2 when a requested audit verdict is fail or mixed,
1 on operational errors (bad arguments, missing data, numeric domain errors).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass

from . import arith, perron
from .audit import claims as claim_registry
from .audit.divisors import lagarias_check, robin_check
from .audit.induction import build_induction_sequence
from .audit.report import AuditReport, emit_report, to_csv, to_plain, worst_verdict
from .errors import ZetaAuditError
from .numkernel import EXTENDED, STANDARD, log_integral
from .zerodata import backlund_band, count_zeros, load_zeros
from .zeta import zeta_global

log = logging.getLogger("zeta_audit")

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


@dataclass
class RunConfig:
    sieve_limit: int = 10**7
    zeros_path: str | None = None
    precision: str = "standard"
    format: str = "plain"

    def precision_config(self):
        return EXTENDED if self.precision == "extended" else STANDARD

    def zeros(self):
        return load_zeros(claim_registry.default_zeros_path(self.zeros_path))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv", "plain"), default=d(None),
                        help="output format (default: json for audit reports, plain otherwise)")
    parser.add_argument("--sieve-limit", type=int, default=d(10**7))
    parser.add_argument("--zeros", default=d(None), help="zeros file (else $ZETA_AUDIT_ZEROS, else ./zeros.txt)")
    parser.add_argument("--precision", choices=("standard", "extended"), default=d("standard"))
    parser.add_argument("-v", "--verbose", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="zeta-audit", description="Zeta, prime-sum and Perron numerics with claim audits.")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def leaf(parent, name, **kw):
        q = parent.add_parser(name, **kw)
        _common(q, suppress=True)
        return q

    z = sub.add_parser("zeta", help="zeta evaluation").add_subparsers(dest="zcmd", required=True, parser_class=_Parser)
    q = leaf(z, "eval", help="zeta(re + i im)")
    q.add_argument("re", type=float)
    q.add_argument("im", type=float)

    for name, hlp in (("psi", "Chebyshev psi(x)"), ("varpi", "psi(x) minus the integer count"),
                      ("pi", "prime counting pi(x)"), ("li", "Li(x) = int_2^x du/log u")):
        q = leaf(sub, name, help=hlp)
        q.add_argument("x", type=float)

    zr = sub.add_parser("zeros", help="zero counting").add_subparsers(dest="zcmd", required=True, parser_class=_Parser)
    q = leaf(zr, "count", help="N(T)")
    q.add_argument("T", type=float)
    q = leaf(zr, "band", help="deviation of N(T) from the smooth main term")
    q.add_argument("T", type=float)
    q.add_argument("--variant", choices=("standard", "printed"), default="standard")

    pr = sub.add_parser("perron", help="Perron integrals").add_subparsers(dest="pcmd", required=True, parser_class=_Parser)
    q = leaf(pr, "varpi", help="varpi(x) from the truncated Perron integral")
    q.add_argument("x", type=float)
    q.add_argument("--m", type=float, required=True)
    q.add_argument("--T", type=float, required=True)
    q.add_argument("--tol", type=float, default=1e-6)
    q.add_argument("--experimental", action="store_true", help="allow 1/2 < m <= 1")
    q = leaf(pr, "explicit-psi", help="psi(x) from the explicit formula over zeros up to T")
    q.add_argument("x", type=float)
    q.add_argument("--T", type=float, required=True)
    q = leaf(pr, "wledger", help="the six W integrals and derived terms")
    q.add_argument("x", type=float)
    q.add_argument("y", type=float)
    q.add_argument("--m", type=float, required=True)
    q.add_argument("--Tcheck", type=float, required=True)
    q.add_argument("--no-zeta", action="store_true", help="skip the terms that need Z(s)")

    au = sub.add_parser("audit", help="claim audits").add_subparsers(dest="acmd", required=True, parser_class=_Parser)
    q = leaf(au, "run", help="run a registered claim, or all")
    q.add_argument("claim")
    q.add_argument("--grid", type=int, default=None, help="points per axis")
    leaf(au, "list", help="list registered claims")
    for name in ("robin", "lagarias"):
        q = leaf(au, name, help=f"{name} inequality over an integer range")
        q.add_argument("lo", type=int)
        q.add_argument("hi", type=int)

    q = leaf(sub, "induction", help="greedy descending sequence from x to the anchor")
    q.add_argument("x", type=float)
    q.add_argument("--anchor", type=float, required=True)

    q = leaf(sub, "mellin", help="Mellin identity residual at s = re + i im")
    q.add_argument("re", type=float)
    q.add_argument("im", type=float)
    q.add_argument("--U", type=int, required=True)
    return p


# ---------------------------------------------------------------- output


def _num(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if v is None:
        return ""
    return format(float(v), ".15g")


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": _jsonable(v.real), "im": _jsonable(v.imag)}
    if isinstance(v, float):
        return float(f"{v:.15g}") if math.isfinite(v) else v
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def emit_values(record: dict, fmt: str) -> str:
    """Plain: one value per line (complex values as 're im'); JSON: one object; CSV: header plus one row."""
    if fmt == "json":
        return json.dumps(_jsonable(record), indent=2) + "\n"
    flat = {}
    for k, v in record.items():
        if isinstance(v, complex):
            flat[f"{k}_re"], flat[f"{k}_im"] = v.real, v.imag
        elif isinstance(v, (list, tuple)):
            flat[k] = ";".join(_num(x) for x in v)
        else:
            flat[k] = v
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow([v if isinstance(v, str) else _num(v) for v in flat.values()])
        return buf.getvalue()
    lines = []
    for k, v in record.items():
        if isinstance(v, complex):
            lines.append(f"{_num(v.real)} {_num(v.imag)}")
        elif isinstance(v, (list, tuple)):
            lines.extend(_num(x) for x in v)
        elif isinstance(v, str):
            lines.append(v)
        else:
            lines.append(_num(v))
    return "\n".join(lines) + "\n"


def emit_reports(reports: list, fmt: str) -> str:
    if len(reports) == 1:
        return emit_report(reports[0], fmt)
    overall = worst_verdict([r.verdict for r in reports])
    if fmt == "json":
        body = {"verdict": overall, "reports": [r.to_dict() for r in reports]}
        return json.dumps(body, indent=2, allow_nan=True) + "\n"
    if fmt == "csv":
        return "".join(to_csv(r, header=(i == 0)) for i, r in enumerate(reports))
    return "\n".join(to_plain(r) for r in reports) + f"\noverall: {overall}\n"


# ---------------------------------------------------------------- commands


def _table(cfg: RunConfig, x: float):
    arith.set_default_limit(cfg.sieve_limit)
    return arith.sieve_for(x)


def _run(args, cfg: RunConfig, out) -> int:
    fmt = cfg.format
    cmd = args.cmd
    if cmd == "zeta":
        r = zeta_global(complex(args.re, args.im))
        out.write(emit_values({"value": r.value, "method": r.method, "error_estimate": r.est_error}, fmt)
                  if fmt != "plain" else emit_values({"value": r.value}, fmt))
        return EXIT_OK
    if cmd in ("psi", "varpi", "pi"):
        if cmd == "pi" and args.x <= 0:
            value = 0.0
        else:
            t = _table(cfg, args.x)
            fn = {"psi": arith.psi, "varpi": arith.varpi, "pi": arith.prime_pi}[cmd]
            value = fn(args.x, t)
        out.write(emit_values({cmd: value}, fmt))
        return EXIT_OK
    if cmd == "li":
        out.write(emit_values({"li": log_integral(args.x)}, fmt))
        return EXIT_OK
    if cmd == "zeros":
        zl = cfg.zeros()
        if args.zcmd == "count":
            out.write(emit_values({"N": count_zeros(zl, args.T)}, fmt))
        else:
            b = backlund_band(zl, args.T, args.variant)
            rec = {"N": b.N, "M": b.M, "Q": b.Q, "deviation": b.deviation, "in_band": b.in_band}
            out.write(emit_values(rec, fmt))
        return EXIT_OK
    if cmd == "perron":
        if args.pcmd == "varpi":
            arith.set_default_limit(cfg.sieve_limit)
            q = perron.varpi_via_perron(args.x, args.m, args.T, tol=args.tol, experimental=args.experimental)
            rec = {"varpi": float(q.value.real) if isinstance(q.value, complex) else float(q.value),
                   "error_estimate": q.error_estimate}
            out.write(emit_values(rec if fmt != "plain" else {"varpi": rec["varpi"]}, fmt))
        elif args.pcmd == "explicit-psi":
            zl = cfg.zeros()
            out.write(emit_values({"psi": perron.explicit_formula_psi(args.x, zl, args.T)}, fmt))
        else:
            arith.set_default_limit(cfg.sieve_limit)
            led = perron.w_ledger(args.x, args.y, args.m, args.Tcheck, with_zeta=not args.no_zeta)
            rec = {k: getattr(led, k) for k in ("W1", "W2", "W3", "W4", "W5", "W6", "W15", "W64", "W_tilde",
                                                 "JT1", "JT2", "JT2_double", "JT3", "JT3_0", "varpi1_diff",
                                                 "residue_25", "residue_36", "varpi_x", "varpi_y", "varpi_343")}
            if fmt == "plain":
                text = "".join(f"{k} {emit_values({k: v}, 'plain')}" for k, v in rec.items())
                out.write(text)
            else:
                out.write(emit_values(rec, fmt))
        return EXIT_OK
    if cmd == "audit":
        if args.acmd == "list":
            for cid in claim_registry.claim_ids():
                c = claim_registry.get_claim(cid)
                out.write(f"{cid}\t{c.description}\n")
            return EXIT_OK
        if args.acmd in ("robin", "lagarias"):
            t = _table(cfg, float(args.hi))
            fn = robin_check if args.acmd == "robin" else lagarias_check
            reports = [fn(args.lo, args.hi, t)]
        else:
            ctx = claim_registry.AuditContext(resolution=args.grid, precision=cfg.precision_config(),
                                              sieve_limit=cfg.sieve_limit, zeros_path=cfg.zeros_path)
            ids = claim_registry.claim_ids() if args.claim == "all" else [args.claim]
            reports = []
            for cid in ids:
                log.info("running %s", cid)
                reports.append(claim_registry.run_claim(cid, ctx=ctx))
        out.write(emit_reports(reports, fmt))
        bad = worst_verdict([r.verdict for r in reports]) in ("fail", "mixed")
        return EXIT_VIOLATION if bad else EXIT_OK
    if cmd == "induction":
        seq = build_induction_sequence(args.x, args.anchor)
        out.write(emit_values({"L": seq.L, "L0": seq.L0, "points": list(seq.points)}, fmt))
        return EXIT_OK
    if cmd == "mellin":
        arith.set_default_limit(cfg.sieve_limit)
        mc = perron.mellin_identity_check(complex(args.re, args.im), args.U)
        rec = {"residual": mc.residual, "lhs": mc.lhs, "Z": mc.Z, "tail_bound": mc.tail_bound, "certified": mc.certified}
        out.write(emit_values(rec if fmt != "plain" else {"residual": mc.residual}, fmt))
        return EXIT_OK
    raise AssertionError(cmd)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(message)s")
    fmt = args.format or ("json" if args.cmd == "audit" and args.acmd != "list" else "plain")
    cfg = RunConfig(args.sieve_limit, args.zeros, args.precision, fmt)
    try:
        return _run(args, cfg, out)
    except (ZetaAuditError, OSError, ValueError, ArithmeticError, MemoryError) as exc:
        sys.stderr.write(f"zeta-audit: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
