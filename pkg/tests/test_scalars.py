import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddapprox.scalars import (
    APPROX,
    EXACT,
    RADICALS,
    ScalarModeError,
    Surd,
    format_exact,
    is_zero,
    scalar_add,
    scalar_mul,
    sqrt_rational,
    zero_regime,
)

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicand = st.sampled_from([2, 3, 5, 6, 7, 10, 12, 15, 18, 21, 35, Fraction(3, 2), Fraction(5, 7)])


@st.composite
def surds(draw):
    out = draw(small_q)
    for _ in range(draw(st.integers(0, 3))):
        out = out + draw(small_q) * sqrt_rational(draw(radicand))
    return out


def test_rational_add():
    assert scalar_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_additive_and_multiplicative_identity():
    x = 3 * sqrt_rational(2) + Fraction(1, 7)
    assert x + 0 == x
    assert x * 1 == x


def test_cancellation_to_exact_zero():
    # 1/eta - eta * a with a = 1/eta^2 for an irrational eta
    eta = sqrt_rational(Fraction(61, 16))
    a = 1 / (eta * eta)
    assert is_zero(1 / eta - eta * a)


def test_product_of_conjugate_radicals_is_rational():
    eta = sqrt_rational(Fraction(1, 4))
    assert eta * eta == Fraction(1, 4)
    assert sqrt_rational(2) * sqrt_rational(8) == 4
    r = sqrt_rational(8) - 2 * sqrt_rational(2)
    assert r == 0 and isinstance(r, Fraction)


def test_distinct_radicals_stay_symbolic():
    prod = sqrt_rational(Fraction(61, 16)) * sqrt_rational(Fraction(223, 144))
    assert isinstance(prod, Surd)
    assert math.isclose(float(prod), math.sqrt(61 / 16 * 223 / 144))


def test_sqrt_rational_cases():
    assert sqrt_rational(Fraction(1, 4)) == Fraction(1, 2)
    s = sqrt_rational(Fraction(3, 2))
    assert isinstance(s, Surd) and s * s == Fraction(3, 2)
    assert format_exact(s) == "1/2*sqrt(6)"
    assert sqrt_rational(2, APPROX) == 1.4142135623730951
    with pytest.raises(ValueError):
        sqrt_rational(-1)


def test_zero_test_regimes():
    assert is_zero(1e-15, 1e-12)
    assert not is_zero(Fraction(1))
    assert zero_regime(1e-15) == "tolerance"
    assert zero_regime(Fraction(0)) == "exact"


def test_mode_mixing_is_rejected():
    with pytest.raises(ScalarModeError):
        scalar_add(Fraction(1), 1.0)
    with pytest.raises(ScalarModeError):
        scalar_mul(sqrt_rational(2), 2.0)
    with pytest.raises(ScalarModeError):
        sqrt_rational(2) + 0.5


def test_sign_and_ordering_of_near_cancellation():
    # 99/70 is a convergent of sqrt(2) from above
    d = Fraction(99, 70) - sqrt_rational(2)
    assert d > 0 and d.sign() == 1
    assert sqrt_rational(2) + sqrt_rational(3) > Fraction(314, 100)


def test_format_exact_caps_long_values():
    big = Fraction(3 ** 2000, 7 ** 1500)
    assert format_exact(big, 50).startswith("<exact:")
    assert format_exact(Fraction(5, 6), 50) == "5/6"


@settings(max_examples=150, deadline=None)
@given(surds(), surds(), surds())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if a != 0:
        assert a * (1 / a) == 1


@settings(max_examples=100, deadline=None)
@given(surds(), surds())
def test_float_agrees_with_exact(a, b):
    assert math.isclose(float(a * b), float(a) * float(b), rel_tol=1e-9, abs_tol=1e-9)
    assert (a < b) == (float(a) < float(b)) or math.isclose(float(a), float(b), abs_tol=1e-12)


@settings(max_examples=100, deadline=None)
@given(surds())
def test_canonical_form_is_idempotent(a):
    if isinstance(a, Surd):
        t1 = dict(a.terms())
        again = (a + 0) * 1
        assert dict(again.terms()) == t1
        assert format_exact(again) == format_exact(a)
        # radicands are squarefree over the current base
        for k in t1:
            if k != 1:
                assert RADICALS.reduce(k) == (1, k)
