"""Audit reports: grading of point evaluations and serialization.

A point is graded from margin = rhs - lhs and an evaluation error estimate
err. It is a violation when the margin is negative by more than 10 err, clean
when positive by more than 10 err, and indeterminate in between or when the
evaluation failed. All floats are quantized to 15 significant digits when a
report is built, so the JSON form round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

VERDICTS = ("pass", "info", "mixed", "fail")
FIELD_ORDER = ("claim_id", "anchor", "grid", "points_checked", "violations", "min_margin", "verdict", "indeterminate", "notes", "extras")
ERR_FACTOR = 10.0


def q15(v):
    """Quantize to 15 significant digits (None and non-finite pass through)."""
    if v is None or isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    if not math.isfinite(v):
        return v
    return float(f"{v:.15g}")


def _q(obj):
    if isinstance(obj, dict):
        return {str(k): _q(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_q(v) for v in obj]
    if isinstance(obj, (str,)) or obj is None:
        return obj
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": q15(obj.real), "im": q15(obj.imag)}
    return q15(obj)


@dataclass(frozen=True)
class Violation:
    point: dict
    lhs: float
    rhs: float
    margin: float
    confirmed: bool | None = None
    lhs_extended: float | None = None

    def to_dict(self) -> dict:
        return {"point": dict(self.point), "lhs": self.lhs, "rhs": self.rhs, "margin": self.margin,
                "confirmed": self.confirmed, "lhs_extended": self.lhs_extended}

    @classmethod
    def from_dict(cls, d: dict) -> "Violation":
        return cls(dict(d["point"]), d["lhs"], d["rhs"], d["margin"], d.get("confirmed"), d.get("lhs_extended"))


@dataclass(frozen=True)
class AuditReport:
    claim_id: str
    anchor: str
    grid: str
    points_checked: int
    violations: tuple
    min_margin: float | None
    verdict: str
    indeterminate: tuple = ()
    notes: tuple = ()
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict in ("pass", "info")

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "anchor": self.anchor,
            "grid": self.grid,
            "points_checked": self.points_checked,
            "violations": [v.to_dict() for v in self.violations],
            "min_margin": self.min_margin,
            "verdict": self.verdict,
            "indeterminate": [dict(p) for p in self.indeterminate],
            "notes": list(self.notes),
            "extras": self.extras,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuditReport":
        return cls(
            d["claim_id"], d["anchor"], d["grid"], int(d["points_checked"]),
            tuple(Violation.from_dict(v) for v in d["violations"]),
            d["min_margin"], d["verdict"],
            tuple(dict(p) for p in d.get("indeterminate", ())),
            tuple(d.get("notes", ())),
            dict(d.get("extras", {})),
        )


def worst_verdict(verdicts: Sequence[str]) -> str:
    """fail > mixed > pass > info; an empty sequence counts as pass."""
    rank = {"info": 0, "pass": 1, "mixed": 2, "fail": 3}
    if not verdicts:
        return "pass"
    return max(verdicts, key=rank.__getitem__)


def _clean_point(p: dict) -> dict:
    return {k: q15(v) for k, v in p.items()}


def grade(
    claim_id: str,
    anchor: str,
    grid: str,
    points: Sequence[dict],
    lhs,
    rhs,
    err,
    *,
    strict: bool = False,
    oracle: Callable[[int], tuple] | None = None,
    resolve_indeterminate: bool = False,
    notes: Sequence[str] = (),
    extras: dict | None = None,
    info: bool = False,
) -> AuditReport:
    """Grade ``lhs <= rhs`` (or ``lhs < rhs`` when ``strict``) at every point.

    ``oracle(i)`` returns (lhs, err) from an independent evaluator. It is run on
    every violation, which stays a violation only if the independent margin is
    also negative beyond its own tolerance; otherwise the point is demoted to
    indeterminate. With ``resolve_indeterminate`` the oracle is also used to
    settle points inside the tolerance band.
    """
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.broadcast_to(np.asarray(rhs, dtype=float), lhs.shape)
    err = np.broadcast_to(np.asarray(err, dtype=float), lhs.shape)
    if len(points) != lhs.size:
        raise ValueError("points and values differ in length")
    margin = rhs - lhs
    tol = ERR_FACTOR * np.abs(err)
    finite = np.isfinite(margin)

    def classify(mg, tl):
        if not math.isfinite(mg):
            return "indeterminate"
        if tl == 0:
            bad = mg <= 0 if strict else mg < 0
            return "violation" if bad else "ok"
        if mg > tl:
            return "ok"
        if mg < -tl:
            return "violation"
        return "indeterminate"

    violations, indet = [], []
    for i in range(0 if info else lhs.size):
        state = classify(margin[i], tol[i])
        confirmed = lhs_ext = None
        if oracle is not None and (state == "violation" or (state == "indeterminate" and resolve_indeterminate)):
            try:
                lx, ex = oracle(i)
            except Exception:  # noqa: BLE001 - an oracle failure only makes the point indeterminate
                lx, ex = math.nan, math.nan
            lhs_ext = float(lx)
            state2 = classify(rhs[i] - lx, ERR_FACTOR * abs(ex)) if math.isfinite(lx) else "indeterminate"
            if state == "violation":
                confirmed = state2 == "violation"
                if not confirmed:
                    state = "indeterminate"
            else:
                state = state2
        if state == "violation":
            violations.append(Violation(_clean_point(points[i]), q15(lhs[i]), q15(rhs[i]), q15(margin[i]), confirmed, q15(lhs_ext)))
        elif state == "indeterminate":
            indet.append(_clean_point(points[i]))
    min_margin = q15(float(np.min(margin[finite]))) if finite.any() else None
    if info:
        verdict = "info"
    elif violations:
        verdict = "fail"
    elif indet:
        verdict = "mixed"
    else:
        verdict = "pass"
    return AuditReport(claim_id, anchor, grid, int(lhs.size), tuple(violations), min_margin, verdict,
                       tuple(indet), tuple(notes), _q(extras or {}))


# ---------------------------------------------------------------- serialization


def to_json(report: AuditReport) -> str:
    return json.dumps(report.to_dict(), indent=2, allow_nan=True)


def from_json(text: str) -> AuditReport:
    return AuditReport.from_dict(json.loads(text))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".15g")
    return str(v)


CSV_HEADER = ("claim_id", "verdict", "point", "lhs", "rhs", "margin", "confirmed")


def to_csv(report: AuditReport, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for v in report.violations:
        point = ";".join(f"{k}={_fmt(x)}" for k, x in v.point.items())
        w.writerow((report.claim_id, report.verdict, point, _fmt(v.lhs), _fmt(v.rhs), _fmt(v.margin), _fmt(v.confirmed)))
    return buf.getvalue()


def to_plain(report: AuditReport) -> str:
    lines = [
        f"claim_id: {report.claim_id}",
        f"anchor: {report.anchor}",
        f"grid: {report.grid}",
        f"points_checked: {report.points_checked}",
        f"violations: {len(report.violations)}",
        f"indeterminate: {len(report.indeterminate)}",
        f"min_margin: {_fmt(report.min_margin)}",
        f"verdict: {report.verdict}",
    ]
    lines += [f"note: {n}" for n in report.notes]
    return "\n".join(lines) + "\n"


def emit_report(report: AuditReport, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(report) + "\n"
    if fmt == "csv":
        return to_csv(report)
    if fmt == "plain":
        return to_plain(report)
    raise ValueError(f"unknown format {fmt!r}")
