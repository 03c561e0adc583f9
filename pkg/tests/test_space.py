import math
from fractions import Fraction

import pytest

from oddapprox.mbasis import SparseVec, WeightSpec
from oddapprox.scalars import APPROX, EXACT, ScalarModeError, sqrt_rational
from oddapprox.space import HFunction, Space

RECIP = WeightSpec.reciprocal()
OMEGA2 = WeightSpec.omega_power(2)


@pytest.fixture(scope="module")
def rs():
    return Space(RECIP, EXACT)


def test_monomial_coords_examples(rs):
    assert rs.monomial_coords(0) == SparseVec({0: sqrt_rational(6)})
    assert rs.monomial_coords(3) == rs.x(3)


def test_polynomial_coords_examples(rs):
    assert rs.polynomial_coords({1: 1}) == SparseVec({1: 1, 0: -1})
    assert rs.polynomial_coords({}) == SparseVec()
    p = rs.polynomial({0: 1, 2: -1})
    assert rs.taylor_series(p) == {0: 1, 2: -1}


@pytest.mark.parametrize("w", [RECIP, OMEGA2])
def test_monomial_round_trip(w):
    s = Space(w, EXACT)
    for n in range(129):
        f = s.monomial(n)
        assert s.taylor_series(f) == {n: 1}


def test_taylor_of_e0_only_at_zero(rs):
    f = HFunction(SparseVec.unit(0))
    series = rs.taylor_series(f)
    assert list(series) == [0]
    assert series[0] == 1 / sqrt_rational(6)


def test_inner_products(rs):
    z0, z1 = rs.monomial(0), rs.monomial(1)
    assert rs.inner(z0, z1) == -sqrt_rational(6)
    for n in range(20):
        zn = rs.monomial(n)
        assert rs.inner(zn, zn) == rs.monomial_norm_sq(n)
    assert rs.monomial_norm_sq(3) == 21


def test_monomial_norm_check():
    rows = Space(OMEGA2, EXACT).monomial_norm_check(512)
    assert all(r.passed for r in rows)
    info = Space(RECIP, EXACT).monomial_norm_check(3)
    assert info[3].bound is None and math.isclose(info[3].norm, math.sqrt(21))


def test_even_monomial_norm_expansion():
    s = Space(OMEGA2, EXACT)
    c = s.cache
    for m in range(10):
        a, b = c.a(m), c.b(m + 1)
        assert s.monomial_norm_sq(2 * m) == 1 + a * a + b * b <= (1 + a + b) ** 2


def test_eval_at():
    s = Space(RECIP, EXACT)
    v = s.eval_at(s.monomial(3), 0.5)
    assert abs(v.value - 0.125) <= 1e-15 + v.error_bound
    zero = s.eval_at(HFunction(SparseVec()), 0.3 + 0.2j)
    assert zero.value == 0
    M = 64
    u = SparseVec({2 * j + 1: s.cache.eta(j) for j in range(M + 1)})
    tail = math.sqrt(RECIP.eta_sq_tail(M))
    f = HFunction(u, tail_bound=tail)
    ev = s.eval_at(f, 0.5)
    exact = sum(0.5 ** (2 * n + 1) / (n + 1) for n in range(400))
    assert abs(ev.value - exact) <= ev.error_bound + 1e-12


def test_continuity_of_point_evaluation(rs):
    f = rs.polynomial({0: 1, 1: Fraction(-2), 4: Fraction(1, 3)})
    norm = math.sqrt(float(rs.norm_sq(f)))
    for z in (0.1, -0.5, 0.3 + 0.6j, 0.9j):
        ev = rs.eval_at(f, z)
        assert abs(ev.value) <= norm / (1 - abs(z)) + ev.error_bound


def test_coefficient_respects_window(rs):
    f = HFunction(rs.x(1), valid_index=1)
    assert rs.coefficient(f, 1) == 1
    with pytest.raises(ValueError):
        rs.coefficient(f, 5)


def test_mode_guard():
    s = Space(RECIP, APPROX)
    with pytest.raises(ScalarModeError):
        s.function(SparseVec({0: Fraction(1)}))
    assert isinstance(s.norm_sq(s.monomial(2)), float)


def test_projection_interval_uses_tail(rs):
    f = HFunction(rs.x(1) + rs.x(0), tail_bound=0.25)
    r = rs.project(f, [rs.x(0)])
    lo, hi = r.interval
    assert math.isclose(hi - lo, 0.5) or lo == 0.0
