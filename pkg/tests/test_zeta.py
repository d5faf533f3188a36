import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeta_audit.errors import DomainError, NearSingularityError, PoleError
from zeta_audit.numkernel import gamma
from zeta_audit.zeta import (
    dirichlet_tail_bound,
    xi,
    xi_logderiv,
    zeta,
    zeta_dirichlet,
    zeta_em,
    zeta_extended,
    zeta_global,
    zeta_logderiv,
)

# mpmath, 30 digits
ZETA_HALF = -1.46035450880958681288949915252
ZETA_15_10 = complex(1.27839116643475973362271851263, -0.0957240559867088539023189715921)
LOGDERIV_2 = -0.56996099309453280639986436002
LOGDERIV_M1_5 = complex(0.107949615170402729110251218403, -0.37510579855356412992018066657)
XI_HALF = 0.497120778188314


def chi(s):
    return 2**s * math.pi ** (s - 1) * cmath.sin(math.pi * s / 2) * complex(gamma(1 - s))


class TestDirichlet:
    def test_zeta2(self):
        assert abs(zeta_dirichlet(2, 10**6) - math.pi**2 / 6) <= 1e-6

    def test_zeta4(self):
        assert abs(zeta_dirichlet(4, 10**4) - math.pi**4 / 90) <= 1e-8

    def test_cross_method(self):
        assert abs(zeta_dirichlet(1.5 + 10j, 10**6) - zeta_em(1.5 + 10j).value) <= 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            zeta_dirichlet(1.0, 100)
        with pytest.raises(DomainError):
            zeta_dirichlet(2, 5)

    def test_tail_bound(self):
        assert dirichlet_tail_bound(2, 100) == pytest.approx(0.01)


class TestEulerMaclaurin:
    def test_zeta2(self):
        r = zeta_em(2)
        assert abs(r.value - math.pi**2 / 6) <= 1e-12
        assert r.method == "euler_maclaurin"
        assert 0 <= r.est_error <= 1e-12

    def test_half(self):
        assert abs(zeta_em(0.5).value - ZETA_HALF) <= 1e-12

    def test_near_first_zero(self, zeros):
        assert abs(zeta_em(0.5 + 14.134725j).value) <= 1e-5
        assert abs(zeta_em(complex(0.5, zeros[1])).value) <= 1e-10

    def test_reference_value(self):
        assert abs(zeta_em(1.5 + 10j).value - ZETA_15_10) <= 1e-13

    def test_pole_and_domain(self):
        with pytest.raises(PoleError):
            zeta_em(1)
        with pytest.raises(DomainError, match="zeta_global"):
            zeta_em(-0.5)

    def test_high_t_error_budget(self):
        r = zeta_em(0.5 + 9000j)
        assert r.est_error <= 1e-12
        assert abs(r.value - zeta_extended(0.5 + 9000j)) <= 1e-9


class TestGlobal:
    def test_zero(self):
        r = zeta_global(0)
        assert abs(r.value + 0.5) <= 1e-12
        assert r.method == "functional_equation"

    @pytest.mark.parametrize("k", range(1, 6))
    def test_trivial_zeros(self, k):
        assert abs(zeta_global(-2 * k).value) <= 1e-9

    def test_conjugate_pair(self):
        a = zeta_global(-0.5 + 3j).value
        b = zeta_global(-0.5 - 3j).value
        assert abs(a - b.conjugate()) <= 1e-12

    def test_right_delegates(self):
        assert zeta_global(0.3 + 4j).method == "euler_maclaurin"

    def test_pole(self):
        with pytest.raises(PoleError):
            zeta_global(1)

    def test_left_half_plane_values(self):
        for s in (-3.5 + 2j, -0.25, -10 + 40j):
            ref = zeta_extended(s)
            assert abs(zeta_global(s).value - ref) <= 1e-11 * max(1, abs(ref))

    def test_vectorized_matches_scalar(self):
        pts = np.array([-2.5 + 1j, 0.5 + 20j, 3 - 4j])
        vec = zeta(pts)
        for s, v in zip(pts, vec):
            assert v == zeta_global(s).value


def test_cross_method_grid():
    rng = np.random.default_rng(11)
    sig = np.linspace(1.5, 3, 20)
    t = rng.uniform(-50, 50, 20)
    for s in sig + 1j * t:
        assert abs(zeta_dirichlet(s, 10**6) - zeta_em(s).value) <= 1e-8


@settings(max_examples=50, deadline=None)
@given(st.floats(-6, 4), st.floats(-80, 80))
def test_reflection(x, y):
    s = complex(x, y)
    if abs(s - 1) < 1e-3:
        return
    a = zeta_global(s.conjugate()).value
    b = zeta_global(s).value
    assert abs(a - b.conjugate()) <= 1e-12 * max(1.0, abs(b))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(-30, 30))
def test_functional_equation_twice(x, y):
    s = complex(x, y)
    direct = zeta_em(s).value
    once = chi(s) * zeta_em(1 - s).value
    twice = chi(s) * chi(1 - s) * direct
    assert abs(once - direct) <= 1e-9 * max(1.0, abs(direct))
    assert abs(twice - direct) <= 1e-9 * max(1.0, abs(direct))


class TestLogDerivative:
    def test_at_zero(self):
        assert abs(zeta_logderiv(0) - math.log(2 * math.pi)) <= 1e-10

    def test_at_two(self):
        h = 1e-5
        fd = (cmath.log(zeta(2 + h)) - cmath.log(zeta(2 - h))) / (2 * h)
        assert abs(zeta_logderiv(2) - fd) <= 1e-6
        assert abs(zeta_logderiv(2) - LOGDERIV_2) <= 1e-12

    def test_left_of_strip(self):
        s, h = -1 + 5j, 1e-5
        fd = (cmath.log(zeta(s + h)) - cmath.log(zeta(s - h))) / (2 * h)
        v = zeta_logderiv(s)
        assert abs(v - fd) <= 1e-6
        assert abs(v - LOGDERIV_M1_5) <= 1e-8 * abs(LOGDERIV_M1_5)

    def test_zero_screening(self, zeros):
        with pytest.raises(NearSingularityError):
            zeta_logderiv(complex(0.5, zeros[3] + 0.005), zeros)
        zeta_logderiv(complex(0.5, zeros[3] + 0.05), zeros)

    def test_trivial_zero(self):
        with pytest.raises(NearSingularityError):
            zeta_logderiv(-4)

    def test_relative_accuracy_grid(self):
        import mpmath

        for s in (-2 + 100j, 0.3 + 999j, 2.5 - 500j, -1.5 + 0.5j):
            with mpmath.workdps(30):
                ref = complex(mpmath.zeta(s, derivative=1) / mpmath.zeta(s))
            assert abs(zeta_logderiv(s) - ref) <= 1e-8 * abs(ref)


class TestXi:
    def test_symmetry(self):
        assert abs(xi(0.3 + 2j) - xi(0.7 - 2j)) <= 1e-10

    def test_real_at_half(self):
        v = xi(0.5)
        assert abs(v.imag) <= 1e-12
        assert abs(v.real - XI_HALF) <= 1e-12

    def test_removable_points(self):
        assert abs(xi(1) - 0.5) <= 1e-10
        assert abs(xi(0) - 0.5) <= 1e-10

    def test_logderiv_positive(self):
        h = 1e-5
        fd = (cmath.log(xi(2 + 3j + h)) - cmath.log(xi(2 + 3j - h))) / (2 * h)
        assert fd.real > 0
        assert abs(xi_logderiv(2 + 3j) - fd) <= 1e-6
