"""Support-set variants (monomials relabelled by a permutation sigma) and the
Fourier model over L^2 of the circle.

With a permutation sigma of the non-negative integers that sends odd
indices into a set I and even indices into its complement, the witnesses
of the odd case show that polynomials supported on I are not dense in the
functions supported on I.  The Fourier model sends odd indices to
non-negative frequencies and damps the n-th generator by 2^-n.
"""

from __future__ import annotations

import bisect
import math
import threading
from fractions import Fraction
from dataclasses import dataclass
from typing import Sequence

from .counterexample import (
    WitnessPair,
    certified_distance,
    check_g_perp_odd,
    check_pairing,
    odd_span_distance_bound,
    partial_sum,
    witness_f,
    witness_g,
    _dominates,
    _project,
)
from .mbasis import WeightSpec, dot, norm_sq_y
from .report import Check, DistanceRow
from .scalars import EXACT, is_zero
from .space import IDENTITY, HFunction, Space


class SupportError(ValueError):
    """A support set or its complement is too thin for the requested bound."""


BUILTIN_SUPPORTS = ("evens", "odds", "squares")


@dataclass(frozen=True)
class SupportSpec:
    """A subset I of the non-negative integers.

    Built-ins: ``evens``, ``odds``, ``squares``.  ``custom`` takes an
    explicit finite ``prefix`` (members below ``start``) and, from
    ``start`` on, the rule ``(i - start) % period in residues``.
    """

    kind: str
    prefix: tuple[int, ...] = ()
    start: int = 0
    period: int = 1
    residues: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in BUILTIN_SUPPORTS + ("custom",):
            raise SupportError(f"unknown support kind {self.kind!r}")
        if self.kind == "custom":
            if self.period < 1 or self.start < 0:
                raise SupportError("custom support needs period >= 1 and start >= 0")
            if any(not 0 <= p < self.start for p in self.prefix):
                raise SupportError("prefix members must lie in [0, start)")
            if any(not 0 <= r < self.period for r in self.residues):
                raise SupportError("residues must lie in [0, period)")

    @classmethod
    def named(cls, name: str) -> "SupportSpec":
        return cls(name)

    @classmethod
    def custom(cls, prefix: Sequence[int], start: int, period: int, residues: Sequence[int]) -> "SupportSpec":
        return cls("custom", tuple(sorted(set(prefix))), start, period, tuple(sorted(set(residues))))

    def contains(self, i: int) -> bool:
        if i < 0:
            return False
        if self.kind == "evens":
            return i % 2 == 0
        if self.kind == "odds":
            return i % 2 == 1
        if self.kind == "squares":
            return math.isqrt(i) ** 2 == i
        if i < self.start:
            return i in self.prefix
        return (i - self.start) % self.period in self.residues

    @property
    def both_infinite_certificate(self) -> bool:
        """Analytic flag: I and its complement are both infinite."""
        if self.kind in BUILTIN_SUPPORTS:
            return True
        return 0 < len(self.residues) < self.period

    def to_dict(self) -> dict:
        if self.kind != "custom":
            return {"kind": self.kind}
        return {"kind": "custom", "prefix": list(self.prefix), "start": self.start,
                "period": self.period, "residues": list(self.residues)}

    @classmethod
    def from_dict(cls, d) -> "SupportSpec":
        if isinstance(d, str):
            return cls.named(d)
        if not isinstance(d, dict) or "kind" not in d:
            raise SupportError("support must be a name or an object with a 'kind'")
        if d["kind"] != "custom":
            return cls.named(d["kind"])
        try:
            return cls.custom(d.get("prefix", []), int(d["start"]), int(d["period"]), d["residues"])
        except (KeyError, TypeError) as exc:
            raise SupportError(f"bad custom support: {exc}") from exc


class IndexMap:
    """sigma: index n of the basis -> degree (or frequency) of its monomial."""

    kind = "abstract"

    def forward(self, n: int) -> int:
        raise NotImplementedError

    def inverse(self, k: int) -> int | None:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.kind}


class PermutationMap(IndexMap):
    """Odd indices enumerate I in increasing order, even indices its complement."""

    kind = "permutation"

    def __init__(self, spec: SupportSpec, search_limit: int):
        self.spec = spec
        self.search_limit = search_limit
        self._members: list[int] = []
        self._others: list[int] = []
        self._scanned = 0
        self._lock = threading.Lock()

    def _scan_to(self, bound: int) -> None:
        with self._lock:
            for i in range(self._scanned, bound + 1):
                (self._members if self.spec.contains(i) else self._others).append(i)
            self._scanned = max(self._scanned, bound + 1)

    def _nth(self, lst_name: str, j: int) -> int:
        lst = getattr(self, lst_name)
        while len(lst) <= j:
            if self._scanned > self.search_limit:
                raise SupportError(f"support enumeration exceeds search limit {self.search_limit}")
            self._scan_to(min(max(2 * self._scanned, 16), self.search_limit))
            lst = getattr(self, lst_name)
        return lst[j]

    def forward(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be non-negative")
        j, odd = divmod(n, 2)
        return self._nth("_members" if odd else "_others", j)

    def inverse(self, k: int) -> int | None:
        if k < 0:
            return None
        if k >= self._scanned:
            if k > self.search_limit:
                raise SupportError(f"degree {k} exceeds search limit {self.search_limit}")
            self._scan_to(min(max(k, 2 * self._scanned, 16), self.search_limit))
        inside = self.spec.contains(k)
        lst = self._members if inside else self._others
        j = bisect.bisect_left(lst, k)
        return 2 * j + 1 if inside else 2 * j

    def to_dict(self) -> dict:
        return {"kind": self.kind, "support": self.spec.to_dict()}


class FourierMap(IndexMap):
    """2j+1 -> j and 2j -> -(j+1): odd indices onto the non-negative frequencies."""

    kind = "fourier"

    def forward(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be non-negative")
        j, odd = divmod(n, 2)
        return j if odd else -(j + 1)

    def inverse(self, k: int) -> int:
        return 2 * k + 1 if k >= 0 else 2 * (-k - 1)


FOURIER = FourierMap()


def build_sigma(spec: SupportSpec, bound: int, search_factor: int = 64):
    """Increasing-enumeration sigma for support I, valid for indices n <= bound.

    Both I and its complement must supply ceil((bound+1)/2) members; they are
    searched for up to max(search_factor * (bound + 1), (bound + 2)**2), which
    covers sets as thin as the squares.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    if spec.kind == "odds":
        return IDENTITY
    limit = max(search_factor * (bound + 1), (bound + 2) ** 2) + 16
    sigma = PermutationMap(spec, limit)
    need = (bound + 2) // 2
    try:
        sigma.forward(2 * (need - 1) + 1)
        sigma.forward(2 * (need - 1))
    except SupportError as exc:
        raise SupportError(f"I or its complement has fewer than {need} members below {limit}") from exc
    return sigma


def check_sigma(sigma, bound: int, spec: SupportSpec | None = None) -> Check:
    """Injectivity, inverse consistency and parity placement for n <= bound."""
    seen = {}
    bad = []
    for n in range(bound + 1):
        k = sigma.forward(n)
        if k in seen:
            bad.append((n, f"collides with {seen[k]}"))
        seen[k] = n
        if sigma.inverse(k) != n:
            bad.append((n, f"inverse({k}) = {sigma.inverse(k)}"))
        if spec is not None and spec.contains(k) != (n % 2 == 1):
            bad.append((n, f"degree {k} on the wrong side of I"))
        if isinstance(sigma, FourierMap) and (k >= 0) != (n % 2 == 1):
            bad.append((n, f"frequency {k} has the wrong sign"))
    return Check("sigma_is_parity_respecting_injection", not bad, None, None, f"indices 0..{bound}", bad)


def support_space(weights: WeightSpec, spec: SupportSpec, bound: int, mode: str = EXACT, **kw) -> Space:
    return Space(weights, mode, build_sigma(spec, bound), **kw)


def check_support(space: Space, f: HFunction, valid_index: int, inside, name: str) -> Check:
    """Every nonzero coefficient at an index <= valid_index sits at a degree accepted by ``inside``."""
    bad = []
    for n in space.taylor_support(f):
        if n > valid_index:
            continue
        p = space.pairing(f, n)
        if not is_zero(p, space.zero_tol if space.mode != EXACT else 0.0) and not inside(space.sigma.forward(n)):
            bad.append((space.sigma.forward(n), p))
    return Check(name, not bad, None, None, f"indices 0..{valid_index}", bad)


def monomial_orthogonality(space: Space, g: HFunction, degrees: Sequence[int], name: str) -> Check:
    """<monomial of degree d, g>_H = 0 for each listed degree (computed in H, not via x_n)."""
    bad = []
    for d in degrees:
        val = space.inner(space.monomial(d), g)
        if not is_zero(val, 0.0 if space.mode == EXACT else space.zero_tol * max(1.0, float(space.scale(space.index_of(d))))):
            bad.append((d, val))
    return Check(name, not bad, None, None, f"degrees {list(degrees)[:3]}..{list(degrees)[-1:]}", bad)


def supported_span_distance(space: Space, pair: WitnessPair, spec: SupportSpec,
                            ks: Sequence[int] | None = None, notices: list | None = None):
    """The support-set analogue of the odd-span contrast.

    Returns (checks, rows) where rows are distances from f to the span of
    monomials z^i with i in I and i <= sigma(2k+1).
    """
    M, N = pair.M, pair.N
    if ks is None:
        ks = sorted({k for k in (0, 1, 2, 4, 8, 16, 32, N) if k <= N})
    f = witness_f(space, pair)
    g = witness_g(space, pair)
    checks = [
        check_support(space, f, 2 * M - 1, spec.contains, "f_supported_in_I"),
        monomial_orthogonality(space, g, [space.sigma.forward(2 * j + 1) for j in range(N + 1)],
                               "g_orthogonal_to_monomials_in_I"),
        check_pairing(space, pair),
    ]
    rows = []
    for k in ks:
        top = space.sigma.forward(2 * k + 1)
        idx = [space.index_of(i) for i in range(top + 1) if spec.contains(i)]
        res = _project(space, f, idx, notices)
        _, bound_sq = odd_span_distance_bound(space, k)
        ok = _dominates(res.dist_sq, bound_sq)
        rows.append(DistanceRow("support_span", top, res.dist_sq, bound_sq, 0.0, ok))
    return checks, rows


# Fourier model -----------------------------------------------------------


def fourier_space(weights: WeightSpec, mode: str = EXACT, **kw) -> Space:
    """H over L^2 of the circle: index n carries frequency sigma(n), damped by 2^-n."""
    return Space(weights, mode, FOURIER, damping=True, **kw)


def l2_norm_sq(space: Space, f: HFunction, indices: Sequence[int] | None = None):
    """||J(x)||^2 in L^2 of the circle: sum_n <x, y_n>^2 / (||y_n||^2 4^n).

    Distinct indices carry distinct frequencies, so the image terms are
    orthogonal.  With no ``indices`` the sum runs over the Taylor support.
    """
    if not space.damping:
        raise ValueError("L^2 norm is defined for the Fourier model")
    total = 0 * f.coords.norm_sq()
    for n in indices if indices is not None else space.taylor_support(f):
        p = space.pairing(f, n)
        if is_zero(p, 0.0):
            continue
        damp = Fraction(1, 4 ** n) if space.mode == EXACT else 0.25 ** n
        total = total + p * p / norm_sq_y(space.cache, n) * damp
    return total


def check_l2_continuity(space: Space, fs: Sequence[HFunction]) -> Check:
    """||J(x)||_{L^2} <= 2 ||x|| for each listed element."""
    bad = []
    worst = 0.0
    for f in fs:
        lhs = l2_norm_sq(space, f)
        rhs = 4 * f.coords.norm_sq()
        if not lhs <= rhs:
            bad.append((f.label or "f", lhs))
        if float(rhs) > 0:
            worst = max(worst, math.sqrt(float(lhs) / float(rhs)))
    return Check("l2_continuity", not bad, worst, 2.0, "||J(x)||_L2 / ||x||", bad)


def fourier_counterexample(space: Space, pair: WitnessPair, ks: Sequence[int] | None = None,
                           partial_levels: Sequence[int] | None = None, notices: list | None = None):
    """Holomorphic polynomials are not dense in the part of H with non-negative spectrum.

    Returns (checks, tables).  Symmetric partial sums s_n(f) keep the
    frequencies |k| <= n; they are holomorphic polynomials and meet the
    same certificate.
    """
    if not isinstance(space.sigma, FourierMap):
        raise ValueError("fourier_counterexample needs the Fourier model")
    M, N = pair.M, pair.N
    if ks is None:
        ks = sorted({k for k in (0, 1, 2, 4, 8, 16, 32, N) if k <= N})
    if partial_levels is None:
        partial_levels = sorted({n for n in (0, 1, 2, 4, 8, 16, 32, M - 1) if 0 <= n <= M - 1})
    f = witness_f(space, pair)
    g = witness_g(space, pair)
    checks = [
        check_sigma(space.sigma, 2 * max(M, N) + 3),
        check_support(space, f, 2 * M - 1, lambda k: k >= 0, "f_spectrum_nonnegative"),
        monomial_orthogonality(space, g, list(range(N + 1)), "g_orthogonal_to_holomorphic_monomials"),
        *check_g_perp_odd(space, pair),
        check_pairing(space, pair),
        check_l2_continuity(space, [f, g, HFunction(space.x(0), label="x_0"),
                                    HFunction(space.x(2 * M + 1), label=f"x_{2 * M + 1}")]),
    ]
    hol, full = [], []
    for k in ks:
        res = _project(space, f, [2 * j + 1 for j in range(k + 1)], notices)
        _, bound_sq = odd_span_distance_bound(space, k)
        hol.append(DistanceRow("holomorphic_span", k, res.dist_sq, bound_sq, 0.0, _dominates(res.dist_sq, bound_sq)))
        ctrl = _project(space, f, range(2 * k + 2), notices)
        full.append(DistanceRow("trigonometric_span", k, ctrl.dist_sq, None))
    res = _project(space, f, range(2 * M + 2), notices)
    zero_ok = is_zero(res.dist_sq) if space.mode == EXACT else float(res.dist_sq) <= space.zero_tol * max(1.0, float(f.norm_sq()))
    checks.append(Check("trigonometric_span_distance_zero", zero_ok, res.dist_sq, None,
                        f"frequencies -{M + 1}..{M}"))
    sums = []
    support_bad = []
    for n in partial_levels:
        s = partial_sum(space, f, n)
        degs = set(space.taylor_series(s))
        if not degs <= set(range(0, n + 1)):
            support_bad.append((n, str(sorted(degs))))
        sums.append(certified_distance(space, pair, s, "symmetric_partial_sum", n, 2 * n + 1))
    checks.append(Check("symmetric_partial_sums_holomorphic", not support_bad, None, None,
                        f"n in {list(partial_levels)}", support_bad))
    return checks, {"fourier_holomorphic_span": hol, "fourier_trigonometric_span": full,
                    "fourier_partial_sums": sums}


def generator_inner_products(space: Space, n: int, m: int):
    """(<J(c_n x_n), J(c_m x_m)>_H, c_n c_m <x_n, x_m>) for the Fourier generators."""
    a = space.inner(HFunction(space.monomial_coords(n)), HFunction(space.monomial_coords(m)))
    b = space.scale(n) * space.scale(m) * dot(space.x(n), space.x(m))
    return a, b


__all__ = [
    "SupportSpec", "SupportError", "IndexMap", "PermutationMap", "FourierMap", "FOURIER",
    "build_sigma", "check_sigma", "support_space", "supported_span_distance", "fourier_space",
    "fourier_counterexample", "l2_norm_sq", "check_l2_continuity", "generator_inner_products",
]
