"""Acceptance suite: one test per criterion, each timed after a shared warm-up.

Warm-up compiles the numba kernels and builds the 10^6 sieve once, so the
recorded runtimes measure the computation rather than JIT compilation.
"""

import math
import time

import numpy as np
import pytest

from zeta_audit import arith, perron
from zeta_audit.audit import build_induction_sequence, lagarias_check, robin_check, run_claim
from zeta_audit.audit.claims import varpi_table_rows
from zeta_audit.numkernel import EXTENDED
from zeta_audit.zerodata import backlund_band, count_zeros
from zeta_audit.zeta import zeta_dirichlet, zeta_em, zeta_global

SIGN_ROW = "(26,27)"


@pytest.fixture(scope="module", autouse=True)
def warm(table):
    arith.varpi(np.array([2.5, 3.0]), table)
    arith.build_sieve(100)
    zeta_em(2 + 3j)
    zeta_global(-1.5 + 2j)
    perron.Z(2 + 3j)
    perron.delta_T(2, 0.9, 14)
    build_induction_sequence(150.5, 100)
    robin_check(5041, 5100, table)
    lagarias_check(1, 100, table)


class Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


@pytest.mark.criterion(1)
def test_varpi_table(acceptance):
    with Clock() as c:
        rows = varpi_table_rows(arith.build_sieve(100))
    intervals = rows[1:]
    assert len(intervals) == 28
    off = [(lab, p, s) for lab, _, p, s in intervals if lab != SIGN_ROW and abs(s - p) > 5e-4]
    sign = [(p, s) for lab, _, p, s in intervals if lab == SIGN_ROW][0]
    sign_ok = abs(sign[1] + 2.683) <= 5e-4 and sign[0] == -round(sign[1], 3)
    ok = not off and sign_ok and c.seconds < 1
    detail = f"{len(off)} of 27 entries off by > 5e-4; {SIGN_ROW} sieve {sign[1]:.5f} vs printed {sign[0]}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(2)
def test_zeta_engine(acceptance):
    rng = np.random.default_rng(2)
    with Clock() as c:
        e2 = abs(zeta_global(2).value - math.pi**2 / 6)
        e0 = abs(zeta_global(0).value + 0.5)
        etriv = max(abs(zeta_global(-2 * k).value) for k in range(1, 6))
        grid = np.linspace(1.5, 3, 20) + 1j * rng.uniform(-50, 50, 20)
        ecross = max(abs(zeta_dirichlet(s, 10**6) - zeta_em(s).value) for s in grid)
        pts = rng.uniform(-6, 4, 50) + 1j * rng.uniform(-80, 80, 50)
        erefl = max(abs(zeta_global(s.conjugate()).value - zeta_global(s).value.conjugate()) for s in pts)
    ok = e2 <= 1e-12 and e0 <= 1e-12 and etriv <= 1e-9 and ecross <= 1e-8 and erefl <= 1e-12 and c.seconds < 5
    detail = f"zeta(2) {e2:.1e}, zeta(0) {e0:.1e}, trivial {etriv:.1e}, cross {ecross:.1e}, reflection {erefl:.1e}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(3)
def test_backlund(acceptance, zeros):
    with Clock() as c:
        Ts = [20, 50, 100, 500, 1000, 5000, zeros.last]
        band = [backlund_band(zeros, T).in_band for T in Ts]
        T = np.geomspace(6, zeros.last, 100)
        upper = count_zeros(zeros, T) < T * np.log(T) / (2 * math.pi)
    ok = all(band) and bool(np.all(upper)) and c.seconds < 1
    detail = f"band {sum(band)}/7, upper count {int(np.sum(upper))}/100"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(4)
def test_perron_kernel(acceptance):
    with Clock() as c:
        res = max(abs(perron.delta_T(v, 0.9, 14).value + perron.delta_E(v, 0.9, 14).value - perron.heaviside(1, v))
                  for v in (0.3, 0.5, 2, 5))
        closed = abs(perron.delta_T(1, 0.9, 14).value - math.atan(14 / 0.9) / math.pi)
    ok = res <= 1e-8 and closed <= 1e-10 and c.seconds < 10
    detail = f"H1 residual {res:.1e}, v = 1 closed form {closed:.1e}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(5)
def test_residue_identities(acceptance):
    tuples = [(10.5, 7.5, 0.9, 14.0), (100.7, 50.2, 0.75, 21.0), (1000.51, 1000.49, 1.5, 30.0)]
    with Clock() as c:
        worst = 0.0
        for x, y, m, T in tuples:
            led = perron.w_ledger(x, y, m, T, with_zeta=False)
            worst = max(worst, abs(led.W2 - led.W5 - 2j * math.pi), abs(led.W3 - led.W6 - 2j * math.pi))
    ok = worst <= 1e-6 and c.seconds < 30
    detail = f"worst residue residual {worst:.1e} over 3 tuples"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(6)
def test_explicit_formula(acceptance, zeros, table):
    with Clock() as c:
        T = zeros[10000]
        errs = {x: abs(perron.explicit_formula_psi(x, zeros, T) - arith.psi(x, table)) for x in (100.5, 500.5, 1000.5)}
        p = arith.psi(100.5, table)
        trend = [abs(perron.explicit_formula_psi(100.5, zeros, zeros[k]) - p) for k in (100, 1000, 10000)]
    decreasing = trend[1] <= 1.1 * trend[0] and trend[2] <= 1.1 * trend[1]
    ok = max(errs.values()) <= 0.5 and decreasing and c.seconds < 10
    detail = f"max error {max(errs.values()):.3g}; trend {', '.join(f'{e:.3g}' for e in trend)}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(7)
def test_perron_reconstruction(acceptance, table):
    with Clock() as c:
        err = abs(perron.varpi_via_perron(100.5, 1.5, 2000).value - arith.varpi(100.5, table))
    ok = err <= 0.2 and c.seconds < 120
    detail = f"error {err:.3g}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(8)
def test_thm3(acceptance):
    with Clock() as c:
        r = run_claim("thm3", resolution=10**4)
    ok = r.verdict == "pass" and r.points_checked == 10**4 and not r.violations and c.seconds < 30
    detail = f"verdict {r.verdict}, {len(r.violations)} violations, min margin {r.min_margin}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(9)
def test_auditor_honesty(acceptance):
    with Clock() as c:
        box = run_claim("P1-box")
        cont = run_claim("H-continuity")
    confirmed = bool(box.violations) and all(v.confirmed for v in box.violations)
    right = cont.extras["right_piece"]["0"]
    ok = (box.verdict == "fail" and confirmed and cont.verdict == "fail"
          and abs(right - 0.985) <= 1e-3 and c.seconds < 30)
    detail = f"P1-box {box.verdict} ({len(box.violations)} confirmed), H-continuity {cont.verdict} (j=0 right piece {right:.4f})"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(10)
def test_robin_lagarias(acceptance, table):
    with Clock() as c:
        rob = robin_check(5041, 10**6, table)
        flag = robin_check(5040, 5040, table)
        lag = lagarias_check(1, 10**6, table)
    ok = (rob.verdict == "pass" and flag.verdict == "fail" and lag.verdict == "pass"
          and lag.extras["equalities"] == [1] and c.seconds < 30)
    detail = f"robin {rob.verdict}, n = 5040 {flag.verdict}, lagarias {lag.verdict} with equalities {lag.extras['equalities']}"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(11)
def test_induction(acceptance):
    with Clock() as c:
        seq = build_induction_sequence(120.5, 100)
    ok = not seq.violations() and seq.L <= seq.L0 == 8 and c.seconds < 1e-3
    detail = f"L = {seq.L}, L0 = {seq.L0}, {len(seq.violations())} broken invariants"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(12)
def test_mellin(acceptance, table):
    with Clock() as c:
        a = perron.mellin_identity_check(2 + 3j, 10**6, table).residual
        b = perron.mellin_identity_check(3, 10**5, table).residual
    ok = a <= 1e-3 and b <= 1e-4 and c.seconds < 30
    detail = f"residual {a:.2e} at 2+3i, {b:.2e} at 3"
    assert acceptance(ok, detail, c.seconds), detail


@pytest.mark.criterion(13)
def test_sandwich_and_half_max(acceptance, table):
    rng = np.random.default_rng(13)
    with Clock() as c:
        x = rng.uniform(2, 10**6, 10**5)
        x = x[x != np.floor(x)]
        v, p = arith.varpi(x, table), arith.psi(x, table)
        sandwich_bad = int(np.count_nonzero(~((v + x - 1 < p) & (p <= v + x + 1e-9))))
        n = rng.integers(2, 10**6, 10**5).astype(float)
        eps = rng.uniform(1e-6, 0.999, 10**5)
        half_bad = 0
        for field in ("lambda", "varpi", "pi", "mobius", "ones"):
            f = lambda a: arith.half_max_values(table, field, a)
            half_bad += int(np.count_nonzero(np.abs(f(n) - 0.5 * (f(n - eps) + f(n + eps))) > 1e-9))
    ok = sandwich_bad == 0 and half_bad == 0 and c.seconds < 10
    detail = f"sandwich failures {sandwich_bad}, half-max failures {half_bad} over 10^5 abscissae"
    assert acceptance(ok, detail, c.seconds), detail
