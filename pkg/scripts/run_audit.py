"""Run every registered claim and write one JSON document with all reports.

    python scripts/run_audit.py --out audit.json [--grid 200] [--precision extended]
"""

from __future__ import annotations

import argparse
import json
import logging
import time
from dataclasses import dataclass

from zeta_audit.audit import AuditContext, claim_ids, run_claim, worst_verdict
from zeta_audit.numkernel import EXTENDED, STANDARD

log = logging.getLogger("run_audit")


@dataclass
class AuditRunConfig:
    out: str = "audit.json"
    grid: int | None = None
    precision: str = "standard"
    zeros: str | None = None


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default=AuditRunConfig.out)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--precision", choices=("standard", "extended"), default="standard")
    p.add_argument("--zeros", default=None)
    cfg = AuditRunConfig(**vars(p.parse_args(argv)))
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    ctx = AuditContext(resolution=cfg.grid, precision=EXTENDED if cfg.precision == "extended" else STANDARD,
                       zeros_path=cfg.zeros)
    reports, timing = [], {}
    for cid in claim_ids():
        t0 = time.perf_counter()
        r = run_claim(cid, ctx=ctx)
        timing[cid] = round(time.perf_counter() - t0, 3)
        log.info("%-22s %-5s %6d points  %5d violations  %.2fs", cid, r.verdict, r.points_checked,
                 len(r.violations), timing[cid])
        reports.append(r)
    overall = worst_verdict([r.verdict for r in reports])
    with open(cfg.out, "w") as fh:
        json.dump({"verdict": overall, "seconds": timing, "reports": [r.to_dict() for r in reports]}, fh, indent=2)
    log.info("overall %s -> %s", overall, cfg.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
