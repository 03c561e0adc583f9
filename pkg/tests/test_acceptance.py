"""Acceptance criteria, one test per criterion.  The terminal summary prints
one PASS/FAIL line per criterion (see conftest.py)."""

import math
import random
import time

import pytest
import sympy as sp

from oracles import normal_equations_dist_sq, random_instance, to_sympy

from oddapprox import cli
from oddapprox import counterexample as cx
from oddapprox.mbasis import (
    SequenceCache,
    SparseVec,
    WeightSpec,
    check_biorthogonality,
    check_reconstruction,
)
from oddapprox.projection import project
from oddapprox.scalars import APPROX, EXACT
from oddapprox.space import Space

OMEGA2 = WeightSpec.omega_power(2)
RECIP = WeightSpec.reciprocal()


@pytest.mark.criterion(1, "biorthogonality: exact 0 for n,m <= 128; approx < 1e-10 for n,m <= 512; < 5 s")
def test_ac01_biorthogonality():
    t = time.perf_counter()
    for w in (OMEGA2, RECIP):
        assert check_biorthogonality(SequenceCache(w, EXACT), 128) == 0
        assert check_biorthogonality(SequenceCache(w, APPROX), 512) < 1e-10
    assert time.perf_counter() - t < 5.0


@pytest.mark.criterion(2, "unit vectors reconstructed exactly from both bases for n <= 128")
def test_ac02_reconstruction():
    for w in (OMEGA2, RECIP):
        assert check_reconstruction(SequenceCache(w, EXACT), 128) == []


@pytest.mark.criterion(3, "monomial norms ||z^n||^2 <= (1 + omega_n)^2 exactly for n <= 512")
def test_ac03_norm_bound():
    rows = Space(OMEGA2, EXACT).monomial_norm_check(512)
    assert len(rows) == 513 and all(r.passed for r in rows)


@pytest.mark.criterion(4, "witness identities exact at M = N = 64: even coefficients, odd orthogonality, pairing")
def test_ac04_witness_identities():
    for w in (OMEGA2, RECIP):
        s = Space(w, EXACT)
        pair = cx.make_witnesses(s, 64, 64)
        checks = cx.check_f_odd(s, pair) + cx.check_g_perp_odd(s, pair) + [cx.check_pairing(s, pair)]
        by_name = {c.name: c for c in checks}
        for name in ("f_even_coefficients_vanish", "g_orthogonal_to_odd_monomials", "f_g_pairing_is_one"):
            assert by_name[name].passed, (w.kind, name, by_name[name].failures)
        assert by_name["f_g_pairing_is_one"].value == 1


@pytest.mark.criterion(5, "headline contrast: full span distance 0, odd spans >= 1/||v_k||, k=64 bound >= 0.615; < 60 s")
def test_ac05_headline_contrast():
    t = time.perf_counter()
    s = Space(RECIP, EXACT)
    pair = cx.make_witnesses(s, 64, 64)
    checks, odd, _ = cx.headline_contrast(s, pair, [4, 8, 16, 32, 64])
    by_name = {c.name: c for c in checks}
    assert by_name["full_span_distance_zero"].value == 0
    for k, row in zip([4, 8, 16, 32, 64], odd):
        _, bound_sq = cx.odd_span_distance_bound(s, k)
        assert row.dist_sq >= bound_sq, k
        assert by_name[f"odd_span_distance_k{k}"].passed
    bound64, _ = cx.odd_span_distance_bound(s, 64)
    assert bound64 >= 0.615
    assert time.perf_counter() - t < 60.0


@pytest.mark.criterion(6, "projection equals an exact normal-equations oracle on >= 50 random instances")
def test_ac06_oracle_equivalence():
    rng = random.Random(6)
    n = 0
    for trial in range(56):
        f, gens = random_instance(rng, with_radicals=trial % 7 == 0)
        assert len(gens) <= 8
        oracle = normal_equations_dist_sq(f, gens)
        exact = project(f, gens, mode=EXACT)
        assert sp.simplify(to_sympy(exact.dist_sq) - oracle) == 0
        fl = lambda v: SparseVec({i: float(x) for i, x in v.entries.items()})  # noqa: E731
        approx = project(fl(f), [fl(g) for g in gens], mode=APPROX)
        assert abs(approx.dist_sq - float(oracle)) <= 1e-10 * max(float(f.norm_sq()), 1e-300)
        n += 1
    assert n >= 50


@pytest.mark.criterion(7, "summability methods stay >= certificate - slack; full-span control < 0.01 by degree 129")
def test_ac07_summability_failure():
    s = Space(RECIP, EXACT)
    pair = cx.make_witnesses(s, 64, 64)
    methods = cx.default_methods(s, pair, n_random=20, seed=7)
    kinds = [m.name for m in methods]
    assert kinds[:5] == ["taylor", "cesaro", "abel_0.5", "abel_0.9", "abel_0.99"]
    assert len([k for k in kinds if k.startswith("random_row")]) == 20
    rows = cx.summability_failure_report(s, pair, methods, levels=list(range(128)))
    assert len(rows) == 2 * 128 + 3 + 20
    for r in rows:
        assert r.passed, (r.method, r.level)
        assert r.distance >= r.bound - r.slack
    control = cx.control_projection(s, pair, [9, 33, 65, 129])
    assert control[-1].level == 129 and control[-1].distance < 0.01
    assert all(b.dist_sq < a.dist_sq for a, b in zip(control, control[1:]))


@pytest.mark.criterion(8, "partial-sum growth: ||s_k(f)||^(1/k) <= 1.1 for k in [32, 256]")
def test_ac08_partial_sum_growth():
    s = Space(OMEGA2, EXACT)
    pair = cx.make_witnesses(s, 64, 64)
    rows = cx.partial_sum_norm_growth(s, cx.witness_f(s, pair), 256)
    window = [r for r in rows if 32 <= r.k <= 256]
    assert len(window) == 225
    for r in window:
        assert r.norm_sq <= (cx.Fraction(11, 10)) ** (2 * r.k), r.k
    assert all(c.passed for c in cx.growth_checks(rows))


def _variant(kind, **extra):
    cfg = cli.RunConfig.from_dict({"levels": {"M": 32, "N": 32, "odd_span_ks": [4, 8, 16, 32]},
                                   "variant": {"kind": kind, **extra}})
    return cli.cmd_variant(cfg)


@pytest.mark.criterion(9, "variants: evens, squares and Fourier pipelines pass; identity variant equals core output")
def test_ac09_variants():
    for support in ("evens", "squares"):
        b = _variant("support", support=support)
        assert b.ok, [c.name for c in b.failed]
        assert b.tables["support_span_distances"]
    f = _variant("fourier")
    assert f.ok, [c.name for c in f.failed]
    assert all(r.passed for r in f.tables["fourier_partial_sums"])
    ident = _variant("identity").to_json()
    core = cli.cmd_verify(cli.RunConfig.from_dict({"levels": {"M": 32, "N": 32, "odd_span_ks": [4, 8, 16, 32]}}))
    core = core.to_json()
    assert ident["checks"] == core["checks"]
    assert ident["tables"] == core["tables"]


def _values(report: dict) -> dict:
    out = {}
    for c in report["checks"]:
        for key in ("value", "bound"):
            if isinstance(c[key], (int, float)):
                out[("check", c["name"], key)] = float(c[key])
    for table, rows in report["tables"].items():
        for r in rows:
            for key in ("distance", "certified_lower_bound"):
                if isinstance(r[key], (int, float)):
                    out[(table, r["method"], r["level"], key)] = float(r[key])
    return out


@pytest.mark.criterion(10, "exact and approx reports agree within 1e-9 relative wherever both are computed")
def test_ac10_cross_mode():
    levels = {"M": 64, "N": 64, "biorthogonality_n": 128, "growth_k": 256}
    compared = 0
    for weights, cmds in (({"kind": "omega_power", "alpha": "2"}, (cli.cmd_verify, cli.cmd_distances)),
                          ({"kind": "eta_direct", "rule": "reciprocal"}, (cli.cmd_verify, cli.cmd_distances))):
        for cmd in cmds:
            reps = {}
            for mode in (EXACT, APPROX):
                cfg = cli.RunConfig.from_dict({"weights": weights, "mode": mode, "levels": levels})
                reps[mode] = _values(cmd(cfg).to_json())
            common = reps[EXACT].keys() & reps[APPROX].keys()
            assert len(common) > 10
            for key in common:
                a, b = reps[EXACT][key], reps[APPROX][key]
                assert math.isfinite(a) and math.isfinite(b), key
                assert abs(a - b) <= 1e-9 * max(1.0, abs(a)), (key, a, b)
            compared += len(common)
    assert compared > 100
