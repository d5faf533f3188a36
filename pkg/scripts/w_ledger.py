"""Tabulate the six W integrals and the residue identities across a parameter sweep.

    python scripts/w_ledger.py --x 1000.51 --y 1000.49 --m 0.75 0.9 1.5 --T 14 30 60
"""

from __future__ import annotations

import argparse
import itertools
import math
from dataclasses import dataclass, field

from zeta_audit import perron


@dataclass
class LedgerConfig:
    x: float = 1000.51
    y: float = 1000.49
    m: list = field(default_factory=lambda: [0.75, 0.9, 1.5])
    T: list = field(default_factory=lambda: [14.0, 30.0, 60.0])
    with_zeta: bool = False


def main(argv=None) -> int:
    d = LedgerConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--x", type=float, default=d.x)
    p.add_argument("--y", type=float, default=d.y)
    p.add_argument("--m", type=float, nargs="+", default=d.m)
    p.add_argument("--T", type=float, nargs="+", default=d.T)
    p.add_argument("--with-zeta", action="store_true")
    cfg = LedgerConfig(**vars(p.parse_args(argv)))

    print("m T |W15| |W64| W_tilde res25 res36")
    for m, T in itertools.product(cfg.m, cfg.T):
        led = perron.w_ledger(cfg.x, cfg.y, m, T, with_zeta=cfg.with_zeta)
        r25 = abs(led.W2 - led.W5 - 2j * math.pi)
        r36 = abs(led.W3 - led.W6 - 2j * math.pi)
        print(f"{m:g} {T:g} {abs(led.W15):.6e} {abs(led.W64):.6e} {led.W_tilde:.6e} {r25:.1e} {r36:.1e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
