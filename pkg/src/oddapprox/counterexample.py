"""The witnesses f = J(u), g = J(v) and the failure of odd approximation.

    u = sum_j eta_j e_{2j+1},        v = (1/eta_0) e_1 + sum_k eta_k e_{2k}

f is odd, g is orthogonal to every odd monomial, and <f, g> = 1.  For any
p in the span of odd monomials, Cauchy-Schwarz against g gives
||f - p|| >= 1/||v||, so summability methods built from Taylor partial sums
(which are odd polynomials) can never reach f.

Everything here works on truncations u_M, v_N.  Each identity holds
exactly inside a validity window; boundary terms just outside it are
reported rather than hidden.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .mbasis import SparseVec, dot
from .projection import ConditioningError
from .report import Check, DistanceRow
from .scalars import APPROX, EXACT, convert, is_zero, one_of, zero_of
from .space import HFunction, Space


class ValidityWindowError(ValueError):
    """An index lies outside the range where a truncated identity is exact."""


class SummabilityError(ValueError):
    """The summability series has no usable convergence certificate."""


@dataclass(frozen=True)
class WitnessPair:
    """Truncated witnesses u_M, v_N with l^2 tail bounds (sum_{j>level} eta_j^2)^(1/2)."""

    u_trunc: SparseVec
    v_trunc: SparseVec
    M: int
    N: int
    u_tail: float
    v_tail: float

    @property
    def u(self) -> SparseVec:
        return self.u_trunc

    @property
    def v(self) -> SparseVec:
        return self.v_trunc


def make_witnesses(space: Space, M: int, N: int) -> WitnessPair:
    """u_M = sum_{j<=M} eta_j e_{2j+1} and v_N = (1/eta_0) e_1 + sum_{k<=N} eta_k e_{2k}."""
    if M < 0 or N < 0:
        raise ValueError("truncation levels must be non-negative")
    c = space.cache
    u = SparseVec({2 * j + 1: c.eta(j) for j in range(M + 1)})
    v_entries = {2 * k: c.eta(k) for k in range(N + 1)}
    v_entries[1] = 1 / c.eta(0)
    v = SparseVec(v_entries)
    w = space.weights
    return WitnessPair(u, v, M, N, math.sqrt(w.eta_sq_tail(M)), math.sqrt(w.eta_sq_tail(N)))


def witness_f(space: Space, pair: WitnessPair) -> HFunction:
    """f_M = J(u_M), knowing the true Taylor data of the untruncated f."""
    c = space.cache
    zero = zero_of(space.mode)

    def pairing(n):
        return c.eta(n // 2) if n % 2 else zero

    def pairing_float(n):
        return math.sqrt(float(c.eta_sq(n // 2))) if n % 2 else 0.0

    return HFunction(pair.u, tail_bound=pair.u_tail, valid_index=2 * pair.M - 1,
                     pairing_rule=pairing, pairing_float=pairing_float, label="f")


def witness_g(space: Space, pair: WitnessPair) -> HFunction:
    c = space.cache
    zero = zero_of(space.mode)

    def pairing(n):
        m, odd = divmod(n, 2)
        if odd:
            return 1 / c.eta(0) if m == 0 else zero
        out = c.eta(m)
        if m == 0:
            out = out + c.a(0) / c.eta(0)
        return out

    return HFunction(pair.v, tail_bound=pair.v_tail, label="g", pairing_rule=pairing)


def _vanishes(space: Space, value, scale=1.0) -> bool:
    if space.mode == EXACT:
        return is_zero(value)
    return abs(value) <= space.zero_tol * max(1.0, abs(float(scale)))


def check_f_odd(space: Space, pair: WitnessPair, up_to: int | None = None) -> list[Check]:
    """<u_M, y_{2n}> = eta_n a_n - eta_{n+1} b_{n+1} = 0 for n <= up_to (at most M-1)."""
    M = pair.M
    up_to = M - 1 if up_to is None else up_to
    if up_to > M - 1:
        raise ValidityWindowError(f"evenness is exact only for n <= M-1 = {M - 1}")
    c = space.cache
    failures = []
    worst = zero_of(space.mode)
    for n in range(up_to + 1):
        val = dot(pair.u, space.y(2 * n))
        if not _vanishes(space, val, c.eta(n) * c.a(n)):
            failures.append((2 * n, val))
        if abs(val) > worst:
            worst = abs(val)
    checks = [Check("f_even_coefficients_vanish", not failures, worst, None,
                    f"degrees 0..{2 * up_to}", failures)]
    # truncation artifact: f_M picks up (1/eta_M)/||y_{2M}|| at degree 2M
    f = witness_f(space, pair)
    resid = space.taylor_of(f, 2 * M)
    eta_M = c.eta(M)
    checks.append(Check("f_boundary_even_residual", bool(abs(resid) <= eta_M), resid, eta_M,
                        f"degree {2 * M}", details={"note": "truncation artifact, bounded by eta_M"}))
    return checks


def check_g_perp_odd(space: Space, pair: WitnessPair, up_to: int | None = None) -> list[Check]:
    """<x_{2n+1}, v_N> = 0 for n <= up_to <= N; the first non-vanishing term is reported."""
    N = pair.N
    up_to = N if up_to is None else up_to
    if up_to > N:
        raise ValidityWindowError(f"orthogonality is exact only for n <= N = {N}")
    c = space.cache
    failures = []
    worst = zero_of(space.mode)
    for n in range(up_to + 1):
        val = dot(space.x(2 * n + 1), pair.v)
        if not _vanishes(space, val, c.a(n) * c.eta(n)):
            failures.append((2 * n + 1, val))
        if abs(val) > worst:
            worst = abs(val)
    boundary = dot(space.x(2 * N + 3), pair.v)
    expected = c.eta(N) * c.b(N + 1)
    return [
        Check("g_orthogonal_to_odd_monomials", not failures, worst, None,
              f"degrees 1..{2 * up_to + 1} (odd)", failures),
        Check("g_boundary_pairing", _vanishes(space, boundary - expected, expected), boundary, expected,
              f"degree {2 * N + 3}", details={"note": "eta_N * b_{N+1}, outside the window"}),
    ]


def check_pairing(space: Space, pair: WitnessPair) -> Check:
    val = dot(pair.u, pair.v)
    one = one_of(space.mode)
    return Check("f_g_pairing_is_one", _vanishes(space, val - one), val, one,
                 f"M={pair.M}, N={pair.N}")


def v_norm_sq(space: Space, k: int):
    """||v_k||^2 = 1/eta_0^2 + sum_{j<=k} eta_j^2, without building v_k."""
    c = space.cache
    s = c.a(0)
    for j in range(k + 1):
        s = s + c.eta_sq(j)
    return s


def odd_span_distance_bound(space: Space, pair_or_level: WitnessPair | int):
    """(bound, bound_sq) with bound = 1/||v_N|| <= dist(f, span{z, z^3, ..., z^{2N+1}}).

    Accepts a witness pair (uses its N) or the level N directly.
    """
    k = pair_or_level.N if isinstance(pair_or_level, WitnessPair) else pair_or_level
    bound_sq = 1 / v_norm_sq(space, k)
    return math.sqrt(float(bound_sq)), bound_sq


def _dominates(dist_sq, bound_sq) -> bool:
    """dist^2 >= bound^2: exact comparison, or to 1e-12 relative in float."""
    if isinstance(dist_sq, float) or isinstance(bound_sq, float):
        return float(dist_sq) >= float(bound_sq) * (1 - 1e-12)
    return dist_sq >= bound_sq


def _project(space: Space, f: HFunction, indices: Sequence[int], notices: list | None):
    try:
        return space.project(f, [space.x(n) for n in indices], ids=list(indices))
    except ConditioningError as exc:
        if space.mode != APPROX:
            raise
        exact = Space(space.weights, EXACT, space.sigma, damping=space.damping)
        if notices is not None:
            notices.append(f"conditioning failure ({exc}); escalated to exact mode")
        g = HFunction(SparseVec({i: Fraction(v) for i, v in f.coords.items()}))
        return exact.project(g, [exact.x(n) for n in indices], ids=list(indices))


def headline_contrast(space: Space, pair: WitnessPair, ks: Sequence[int] | None = None,
                      notices: list | None = None) -> tuple[list[Check], list[DistanceRow], list[DistanceRow]]:
    """All polynomials reach f_M; odd polynomials stay at distance >= 1/||v_k||.

    Returns checks plus the odd-span and all-span distance tables.
    """
    M, N = pair.M, pair.N
    if ks is None:
        ks = sorted({k for k in (0, 1, 2, 4, 8, 16, 32, 64, 128, N) if k <= N})
    if any(k > N for k in ks):
        raise ValidityWindowError(f"odd-span levels must be <= N = {N}")
    f = witness_f(space, pair)
    f_sq = f.norm_sq()
    full = _project(space, f, range(2 * M + 2), notices)
    if space.mode == EXACT:
        full_ok = is_zero(full.dist_sq)
    else:
        full_ok = float(full.dist_sq) <= space.zero_tol * max(1.0, float(f_sq))
    checks = [Check("full_span_distance_zero", full_ok, full.dist_sq, None,
                    f"span z^0..z^{2 * M + 1}", details={"dropped": full.dropped})]
    odd_rows, all_rows = [], []
    for k in ks:
        res = _project(space, f, [2 * j + 1 for j in range(k + 1)], notices)
        _, bound_sq = odd_span_distance_bound(space, k)
        ok = _dominates(res.dist_sq, bound_sq)
        odd_rows.append(DistanceRow("odd_span", 2 * k + 1, res.dist_sq, bound_sq, 0.0, ok))
        checks.append(Check(f"odd_span_distance_k{k}", ok, res.dist_sq, bound_sq,
                            f"span z^1,z^3,..,z^{2 * k + 1}",
                            details={"distance": res.distance, "bound": math.sqrt(float(bound_sq))}))
        ctrl = _project(space, f, range(2 * k + 2), notices)
        all_rows.append(DistanceRow("all_span", 2 * k + 1, ctrl.dist_sq, None))
    dists = [r.dist_sq for r in odd_rows]
    mono = all(b <= a or _close(a, b) for a, b in zip(dists, dists[1:]))
    checks.append(Check("odd_span_distance_nonincreasing", mono, dists[-1] if dists else None))
    ctrl = [r.dist_sq for r in all_rows]
    checks.append(Check("all_span_distance_nonincreasing",
                        all(b <= a or _close(a, b) for a, b in zip(ctrl, ctrl[1:])), ctrl[-1] if ctrl else None))
    return checks, odd_rows, all_rows


def _close(a, b, rtol=1e-9):
    if isinstance(a, float) or isinstance(b, float):
        return abs(float(a) - float(b)) <= rtol * max(1.0, abs(float(a)))
    return False


# partial sums and summability ---------------------------------------------


def partial_sum(space: Space, f: HFunction, k: int) -> HFunction:
    """s_k(f): the Taylor (or symmetric Fourier) partial sum of degree k."""
    pairings = {}
    for d in space.degrees_up_to(k):
        n = space.sigma.inverse(d)
        if n is None:
            continue
        pairings[n] = _true_pairing(space, f, n)
    return HFunction(space.index_polynomial(pairings), label=f"s_{k}({f.label})")


def _true_pairing(space: Space, f: HFunction, n: int):
    if f.pairing_rule is not None:
        return f.pairing_rule(n)
    if f.valid_index is not None and n > f.valid_index:
        raise ValidityWindowError(f"Taylor data at index {n} is outside the validity window")
    return space.pairing(f, n)


@dataclass
class GrowthRow:
    k: int
    norm_sq: object
    norm: float
    root: float
    triangle_bound: float


def partial_sum_norm_growth(space: Space, f: HFunction, K: int) -> list[GrowthRow]:
    """||s_k(f)||_H and its k-th root for 1 <= k <= K."""
    if not space.weights.nth_root_limit_one:
        raise ValueError("growth table needs weights with omega_n^(1/n) -> 1")
    if space.damping:
        raise ValueError("growth table is defined for holomorphic spaces")
    coords: dict[int, object] = {}
    norm_sq = zero_of(space.mode)
    triangle = 0.0
    rows = []
    for k in range(K + 1):
        n = space.index_of(k)
        p = _true_pairing(space, f, n)
        if not is_zero(p, 0.0):
            for i, xv in space.x(n).items():
                old = coords.get(i, 0)
                new = old + p * xv
                norm_sq = norm_sq + new * new - old * old
                coords[i] = new
            triangle += abs(float(p)) * math.sqrt(float(space.monomial_norm_sq(n))) / float(space.scale(n))
        if k >= 1:
            norm = math.sqrt(max(float(norm_sq), 0.0))
            rows.append(GrowthRow(k, norm_sq, norm, norm ** (1.0 / k) if norm > 0 else 0.0, triangle))
    return rows


def growth_checks(rows: Sequence[GrowthRow], R=Fraction(11, 10), k_min: int = 32) -> list[Check]:
    bad = []
    for r in rows:
        if r.k < k_min:
            continue
        lim = R ** (2 * r.k)
        if isinstance(r.norm_sq, float):
            lim = float(lim)
        if not r.norm_sq <= lim:
            bad.append((r.k, r.norm_sq))
    tri_bad = [(r.k, r.norm_sq) for r in rows if r.norm > r.triangle_bound * (1 + 1e-12) + 1e-12]
    tail = [r for r in rows if r.k >= k_min]
    return [
        Check("partial_sum_root_below_R", not bad, tail[-1].root if tail else None, float(R),
              f"k in [{k_min}, {rows[-1].k if rows else k_min}]", bad),
        Check("partial_sum_triangle_inequality", not tri_bad, None, None, failures=tri_bad),
    ]


TAYLOR = "taylor"
CESARO = "cesaro"
TRIANGULAR = "triangular"
POWER_DECAY = "power_decay"
ABEL = "abel"


@dataclass
class SummabilityVector:
    """A summability method applied to the partial sums s_k(f).

    ``triangular``: ``row(n)`` returns [c_{n0}, ..., c_{nn}].
    ``power_decay``: ``coeff(k)`` with a declared majorant |c_k| <= constant * radius**k.
    ``abel``: c_k = (1 - r) r^k.
    """

    kind: str
    name: str
    row: Callable[[int], list] | None = None
    coeff: Callable[[int], object] | None = None
    radius: float | None = None
    constant: float = 1.0
    r: Fraction | float | None = None
    meta: dict = field(default_factory=dict)

    @classmethod
    def taylor(cls):
        return cls(TRIANGULAR, TAYLOR, row=lambda n: [0] * n + [1])

    @classmethod
    def cesaro(cls):
        return cls(TRIANGULAR, CESARO, row=lambda n: [Fraction(1, n + 1)] * (n + 1))

    @classmethod
    def triangular(cls, name, rows: dict[int, list]):
        return cls(TRIANGULAR, name, row=lambda n: rows[n], meta={"levels": sorted(rows)})

    @classmethod
    def random_triangular(cls, seed: int, n: int, name: str | None = None):
        """One row of length n+1 with integer-ratio entries normalized to sum 1."""
        rng = random.Random(seed)
        while True:
            raw = [rng.randint(-20, 40) for _ in range(n + 1)]
            if sum(raw):
                break
        total = sum(raw)
        row = [Fraction(x, total) for x in raw]
        return cls(TRIANGULAR, name or f"random_{seed}", row=lambda m: row, meta={"levels": [n], "seed": seed})

    @classmethod
    def abel(cls, r):
        r = Fraction(str(r)) if not isinstance(r, Fraction) else r
        if not 0 < r < 1:
            raise ValueError("Abel radius must lie in (0, 1)")
        return cls(ABEL, f"abel_{float(r):g}", r=r, radius=float(r))

    @classmethod
    def power_decay(cls, name, coeff, radius: float, constant: float = 1.0):
        if not 0 <= radius < 1:
            raise SummabilityError("power-decay methods need limsup |c_k|^(1/k) < 1")
        return cls(POWER_DECAY, name, coeff=coeff, radius=radius, constant=constant)


def _degree_weight_map(space: Space, f: HFunction, weights: Callable[[int], object], top: int) -> SparseVec:
    """sum_d W(|d|) fhat(d) z^d over degrees |d| <= top, built from x-vectors."""
    pairings = {}
    for d in space.degrees_up_to(top):
        n = space.sigma.inverse(d)
        if n is None:
            continue
        p = _true_pairing(space, f, n)
        if is_zero(p, 0.0):
            continue
        pairings[n] = p * weights(abs(d))
    return space.index_polynomial(pairings)


def _x_norm_bound(f: HFunction) -> float:
    return math.sqrt(float(f.norm_sq())) + f.tail_bound


def series_tail_bound(space: Space, f: HFunction, term_weight: Callable[[int], float], D: int,
                      horizon: int | None = None, weight_ratio: float | None = None) -> float:
    """Bound on sum_{|d| > D} |fhat(d)| * term_weight(|d|) * ||z^d||_H.

    Terms up to ``horizon`` use actual coefficients (when f knows them) and
    actual monomial norms; beyond, |fhat| <= ||x|| and the weight-spec
    majorant give a geometric remainder by the ratio test.  ``weight_ratio``
    bounds term_weight(d+1)/term_weight(d) past the horizon (pass it when
    the weights underflow there).
    """
    if space.damping:
        raise SummabilityError("series tails are certified for holomorphic spaces only")
    w = space.weights
    B = w.monomial_norm_majorant
    horizon = horizon if horizon is not None else max(4 * D, D + 64)

    def ratio(h):
        r = weight_ratio if weight_ratio is not None else term_weight(h + 2) / term_weight(h + 1)
        return r * (B(h + 2) / B(h + 1))

    # push the horizon out until the ratio test applies past it
    while ratio(horizon) >= 1:
        if horizon > 10 ** 6:
            raise SummabilityError("ratio test fails at every horizon; the series is not certified")
        horizon *= 2
    xn = _x_norm_bound(f)
    total = 0.0
    fl = Space(w, APPROX, space.sigma) if space.mode == EXACT else space
    for d in range(D + 1, horizon + 1):
        n = space.sigma.inverse(d)
        if f.pairing_float is not None:
            coef = abs(f.pairing_float(n)) / fl.scale(n)
        elif f.pairing_rule is not None:
            coef = abs(float(f.pairing_rule(n))) / fl.scale(n)
        else:
            coef = xn
        if coef == 0:
            continue
        total += coef * term_weight(d) * math.sqrt(fl.monomial_norm_sq(n))
    t_next = xn * term_weight(horizon + 1) * B(horizon + 1)
    if not math.isfinite(t_next):
        raise SummabilityError("no monomial-norm majorant for these weights; tail cannot be certified")
    q = ratio(horizon)
    return total + t_next / (1 - q)


def apply_summability(space: Space, f: HFunction, method: SummabilityVector, level: int,
                      tail_tol: float | None = None) -> tuple[HFunction, float]:
    """T(f) for one level of a summability method, with a bound on ||T_exact - T||.

    For triangular methods ``level`` is the row index n.  For Abel and
    power-decay methods it is the truncation degree; with ``tail_tol`` the
    degree grows until the certified tail falls below it.
    """
    mode = space.mode
    if method.kind == TRIANGULAR:
        row = [convert(c, mode) for c in method.row(level)]
        if len(row) != level + 1:
            raise ValueError(f"row {level} must have {level + 1} entries")
        cum = [zero_of(mode)] * (level + 2)
        for k in range(level, -1, -1):
            cum[k] = cum[k + 1] + row[k]
        T = _degree_weight_map(space, f, lambda d: cum[d], level)
        return HFunction(T, label=f"{method.name}_{level}({f.label})"), 0.0
    if method.kind == ABEL:
        r = convert(method.r, mode)
        rf = float(method.r)
        D = level
        while True:
            tail = series_tail_bound(space, f, lambda d: rf ** d, D, weight_ratio=rf)
            if tail_tol is None or tail <= tail_tol or D > 100000:
                break
            D = max(D + 1, int(D * 1.25))
        # sum_{k<=D} (1-r) r^k s_k + r^{D+1} s_D has weight r^d at degree d <= D
        T = _degree_weight_map(space, f, lambda d: r ** d, D)
        return HFunction(T, label=f"{method.name}({f.label})", valid_index=D), tail
    if method.kind == POWER_DECAY:
        rho, C = method.radius, method.constant
        K = level
        B = space.weights.monomial_norm_majorant
        while True:
            # ||s_k(f)|| <= ||x|| (k+1) B(k); |c_k| <= C rho^k
            xn = _x_norm_bound(f)
            term = lambda k: C * rho ** k * xn * (k + 1) * B(k)  # noqa: E731
            q = rho * ((K + 3) / (K + 2)) * (B(K + 2) / B(K + 1))
            tail = term(K + 1) / (1 - q) if q < 1 and math.isfinite(term(K + 1)) else math.inf
            if tail_tol is None or tail <= tail_tol or K > 100000:
                break
            K = max(K + 1, int(K * 1.25))
        if not math.isfinite(tail):
            raise SummabilityError("series sum |c_k| ||s_k(f)|| is not certified at this truncation")
        cs = [convert(method.coeff(k), mode) for k in range(K + 1)]
        cum = [zero_of(mode)] * (K + 2)
        for k in range(K, -1, -1):
            cum[k] = cum[k + 1] + cs[k]
        T = _degree_weight_map(space, f, lambda d: cum[d], K)
        return HFunction(T, label=f"{method.name}_{K}({f.label})", valid_index=K), tail
    raise ValueError(f"unknown summability kind {method.kind!r}")


def dilate_identity_failures(space: Space, f: HFunction, T: HFunction, r) -> list:
    """Degrees d <= deg T where the Abel result's coefficient differs from fhat(d) r^d.

    Both sides share the factor 1/scale(n), so the comparison is made on
    pairings with y_n and stays rational-free of new radicals.
    """
    r = convert(r, space.mode)
    bad = []
    support = set(space.taylor_support(T)) | {n for n in range(T.valid_index + 1)
                                              if not is_zero(_true_pairing(space, f, n), 0.0)}
    for n in sorted(support):
        d = space.sigma.forward(n)
        got = space.pairing(T, n)
        want = _true_pairing(space, f, n) * r ** abs(d) if abs(d) <= T.valid_index else zero_of(space.mode)
        diff = got - want
        ok = is_zero(diff) if space.mode == EXACT else abs(diff) <= 1e-12 * max(1.0, abs(float(want)))
        if not ok:
            bad.append((d, diff))
    return bad


def certified_distance(space: Space, pair: WitnessPair, T: HFunction, method: str, level: int,
                       top_index: int, extra_slack: float = 0.0) -> DistanceRow:
    """||T - f_M|| against 1/||v_N'|| with 2N'+1 covering the top index of T.

    T must lie in the span of odd monomials; the pairing of T - f_M with
    v_N' equals -1 in that case and is verified on the way.
    """
    N = max(pair.N, (top_index - 1) // 2 + 1)
    diff = T.coords - pair.u
    dist_sq = diff.norm_sq()
    _, bound_sq = odd_span_distance_bound(space, N)
    v = pair.v if N == pair.N else make_witnesses(space, 0, N).v
    pairing = dot(diff, v)
    slack = pair.u_tail + extra_slack
    ok = _dominates(dist_sq, bound_sq) and _vanishes(space, pairing + 1, 1.0 / math.sqrt(float(bound_sq)))
    return DistanceRow(method, level, dist_sq, bound_sq, slack, ok)


def summability_failure_report(space: Space, pair: WitnessPair, methods: Sequence[SummabilityVector],
                               levels: Sequence[int] | None = None, abel_tail_tol: float = 1e-3) -> list[DistanceRow]:
    """||T_n(f) - f|| for each method and level, certified against the odd-span bound."""
    f = witness_f(space, pair)
    max_level = 2 * pair.M - 1
    if levels is None:
        levels = list(range(0, max_level + 1))
    rows = []
    for m in methods:
        if m.kind == TRIANGULAR:
            lv = m.meta.get("levels", levels)
            for n in lv:
                if n > max_level:
                    raise ValidityWindowError(f"row {n} needs Taylor data beyond degree {max_level}")
                T, tail = apply_summability(space, f, m, n)
                rows.append(certified_distance(space, pair, T, m.name, n, n, tail))
        else:
            start = 2 * pair.M + 1
            T, tail = apply_summability(space, f, m, start, tail_tol=abel_tail_tol)
            D = T.valid_index
            if m.kind == ABEL:
                bad = dilate_identity_failures(space, f, T, m.r)
                if bad:
                    raise ArithmeticError(f"dilate identity failed at degrees {[d for d, _ in bad][:5]}")
            rows.append(certified_distance(space, pair, T, m.name, D, D, tail))
    return rows


def control_projection(space: Space, pair: WitnessPair, degrees: Sequence[int],
                       notices: list | None = None) -> list[DistanceRow]:
    """dist(f_M, span{z^0..z^D}) for each D: the density control case."""
    f = witness_f(space, pair)
    rows = []
    for D in degrees:
        res = _project(space, f, [space.index_of(d) for d in range(D + 1)], notices)
        rows.append(DistanceRow("all_polynomials", D, res.dist_sq, None))
    return rows


def default_methods(space: Space, pair: WitnessPair, radii=(Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)),
                    n_random: int = 20, seed: int = 0) -> list[SummabilityVector]:
    rng = random.Random(seed)
    max_level = 2 * pair.M - 1
    methods = [SummabilityVector.taylor(), SummabilityVector.cesaro()]
    methods += [SummabilityVector.abel(r) for r in radii]
    for i in range(n_random):
        n = rng.randint(0, max_level)
        methods.append(SummabilityVector.random_triangular(rng.randrange(2 ** 31), n, f"random_row_{i}"))
    return methods
