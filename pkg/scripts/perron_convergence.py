"""Truncation error of the Perron reconstruction of varpi and of the zero-sum formula for psi.

For each x the Perron integral is evaluated at m = 1.5 over a range of heights T,
and the explicit formula over the first k zeros; both are compared with the sieve.

    python scripts/perron_convergence.py --x 100.5 1000.5 --T 250 500 1000 2000
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from zeta_audit import arith, perron
from zeta_audit.zerodata import load_zeros


@dataclass
class ConvergenceConfig:
    x: list = field(default_factory=lambda: [100.5, 1000.5])
    T: list = field(default_factory=lambda: [250.0, 500.0, 1000.0, 2000.0])
    m: float = 1.5
    zeros: str = "zeros.txt"
    zero_counts: list = field(default_factory=lambda: [10, 100, 1000, 10000])


def main(argv=None) -> int:
    d = ConvergenceConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--x", type=float, nargs="+", default=d.x)
    p.add_argument("--T", type=float, nargs="+", default=d.T)
    p.add_argument("--m", type=float, default=d.m)
    p.add_argument("--zeros", default=d.zeros)
    p.add_argument("--zero-counts", type=int, nargs="+", default=d.zero_counts)
    cfg = ConvergenceConfig(**vars(p.parse_args(argv)))

    table = arith.get_sieve(10**6)
    zl = load_zeros(cfg.zeros)
    print("perron: x T value target error est_error seconds")
    for x in cfg.x:
        target = arith.varpi(x, table)
        for T in cfg.T:
            t0 = time.perf_counter()
            r = perron.varpi_via_perron(x, cfg.m, T)
            v = r.value.real if isinstance(r.value, complex) else r.value
            print(f"{x:g} {T:g} {v:.10g} {target:.10g} {abs(v - target):.3e} {r.error_estimate:.1e} "
                  f"{time.perf_counter() - t0:.2f}")
    print("explicit: x k T error")
    for x in cfg.x:
        target = arith.psi(x, table)
        for k in cfg.zero_counts:
            T = zl[k]
            print(f"{x:g} {k} {T:.6f} {abs(perron.explicit_formula_psi(x, zl, T) - target):.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
