from fractions import Fraction

import pytest

from oddapprox import counterexample as cx
from oddapprox.mbasis import WeightSpec, dot
from oddapprox.scalars import APPROX, EXACT
from oddapprox.space import IDENTITY, HFunction, Space
from oddapprox.variants import (
    FOURIER,
    SupportError,
    SupportSpec,
    build_sigma,
    check_sigma,
    fourier_counterexample,
    fourier_space,
    generator_inner_products,
    l2_norm_sq,
    support_space,
    supported_span_distance,
)

RECIP = WeightSpec.reciprocal()


def test_sigma_examples():
    assert build_sigma(SupportSpec.named("odds"), 50) is IDENTITY
    ev = build_sigma(SupportSpec.named("evens"), 50)
    assert [ev.forward(n) for n in (1, 3, 0, 2)] == [0, 2, 1, 3]
    sq = build_sigma(SupportSpec.named("squares"), 50)
    assert [sq.forward(n) for n in (1, 3, 5, 0, 2)] == [0, 1, 4, 2, 3]


@pytest.mark.parametrize("spec", [SupportSpec.named("evens"), SupportSpec.named("squares"),
                                  SupportSpec.custom([0, 2, 3], 5, 3, [1])])
def test_sigma_is_parity_respecting_injection(spec):
    sigma = build_sigma(spec, 300)
    assert check_sigma(sigma, 300, spec).passed
    assert spec.both_infinite_certificate


def test_fourier_map():
    assert [FOURIER.forward(n) for n in (1, 3, 0, 2)] == [0, 1, -1, -2]
    assert check_sigma(FOURIER, 500).passed


def test_support_spec_validation():
    with pytest.raises(SupportError):
        SupportSpec("primes")
    with pytest.raises(SupportError):
        SupportSpec.custom([7], 5, 2, [0])
    finite = SupportSpec.custom([1, 2], 3, 4, [])
    assert not finite.both_infinite_certificate
    with pytest.raises(SupportError):
        build_sigma(finite, 20)
    spec = SupportSpec.custom([0, 2], 4, 3, [0, 2])
    assert SupportSpec.from_dict(spec.to_dict()) == spec
    assert SupportSpec.from_dict("squares") == SupportSpec.named("squares")


@pytest.mark.parametrize("name", ["evens", "squares"])
@pytest.mark.parametrize("mode", [EXACT, APPROX])
def test_supported_span_distance(name, mode):
    spec = SupportSpec.named(name)
    s = support_space(RECIP, spec, 200, mode)
    pair = cx.make_witnesses(s, 32, 32)
    checks, rows = supported_span_distance(s, pair, spec)
    assert all(c.passed for c in checks)
    assert all(r.passed for r in rows)
    f = cx.witness_f(s, pair)
    assert all(spec.contains(d) for d, c in s.taylor_series(f).items()
               if s.index_of(d) <= 2 * 32 - 1 and abs(float(c)) > 1e-9)


def test_support_norm_bound_relabelled():
    spec = SupportSpec.named("squares")
    w = WeightSpec.omega_power(2)
    rows = Space(w, EXACT, build_sigma(spec, 200)).monomial_norm_check(100)
    assert all(r.passed for r in rows)
    assert rows[1].degree == 0 and rows[0].degree == 2


def test_identity_sigma_reproduces_core():
    a = Space(RECIP, EXACT)
    b = Space(RECIP, EXACT, build_sigma(SupportSpec.named("odds"), 100))
    pa, pb = cx.make_witnesses(a, 8, 8), cx.make_witnesses(b, 8, 8)
    ra = cx.headline_contrast(a, pa, [2, 8])
    rb = cx.headline_contrast(b, pb, [2, 8])
    assert [c.to_record() for c in ra[0]] == [c.to_record() for c in rb[0]]
    assert [r.to_record() for r in ra[1]] == [r.to_record() for r in rb[1]]


@pytest.mark.parametrize("mode", [EXACT, APPROX])
def test_fourier_counterexample(mode):
    s = fourier_space(RECIP, mode)
    pair = cx.make_witnesses(s, 32, 32)
    checks, tables = fourier_counterexample(s, pair)
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]
    for rows in tables.values():
        assert all(r.passed is not False for r in rows)
    f = cx.witness_f(s, pair)
    # filter on the undamped pairing; the coefficients themselves carry 2^-n
    freqs = {d for d in s.taylor_series(f)
             if s.index_of(d) <= 2 * 32 - 1 and abs(float(s.pairing(f, s.index_of(d)))) > 1e-9}
    assert freqs == set(range(32))


def test_fourier_monomials_and_partial_sums():
    s = fourier_space(RECIP, EXACT)
    for n in range(10):
        assert s.taylor_series(s.monomial(FOURIER.forward(n))) == {FOURIER.forward(n): 1}
    pair = cx.make_witnesses(s, 6, 6)
    f = cx.witness_f(s, pair)
    s2 = cx.partial_sum(s, f, 2)
    assert set(s.taylor_series(s2)) <= {0, 1, 2}


def test_fourier_generator_inner_products():
    s = fourier_space(RECIP, EXACT)
    for n, m in ((0, 1), (3, 2), (5, 5), (4, 7)):
        a, b = generator_inner_products(s, n, m)
        assert a == b


def test_l2_continuity_bound():
    s = fourier_space(RECIP, EXACT)
    pair = cx.make_witnesses(s, 10, 10)
    for v in (pair.u, pair.v, s.x(0), s.x(7), s.y(4)):
        assert l2_norm_sq(s, HFunction(v)) <= 4 * v.norm_sq()
    with pytest.raises(ValueError):
        l2_norm_sq(Space(RECIP, EXACT), HFunction(pair.u))


def test_pairing_survives_relabelling():
    for sigma in (build_sigma(SupportSpec.named("evens"), 40), FOURIER):
        s = Space(RECIP, EXACT, sigma, damping=sigma is FOURIER)
        p = cx.make_witnesses(s, 5, 9)
        assert dot(p.u, p.v) == Fraction(1)
