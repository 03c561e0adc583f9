"""Weight sequences and the biorthogonal system (x_n, y_n) on l^2.

For a positive sequence eta with a_n = 1/eta_n^2 and b_n = 1/(eta_n eta_{n-1}):

    x_{2m}   = e_{2m}
    x_{2m+1} = e_{2m+1} - a_m e_{2m} + b_m e_{2m-2}      (no b-term when m = 0)
    y_{2m}   = e_{2m} + a_m e_{2m+1} - b_{m+1} e_{2m+3}
    y_{2m+1} = e_{2m+1}

The sequence eta either comes directly (``eta_direct``) or is derived from a
weight sequence omega with sum(1/omega_n) finite, chosen so that the
monomials of the resulting space satisfy ||z^n|| <= 1 + omega_n.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from scipy.special import zeta

from .scalars import (
    APPROX,
    EXACT,
    ScalarModeError,
    convert,
    mode_of,
    one_of,
    sqrt_rational,
    zero_of,
)

OMEGA_POWER = "omega_power"
OMEGA_LIST = "omega_list"
ETA_DIRECT = "eta_direct"


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class WeightSpec:
    """Where the eta sequence comes from.

    ``kind`` is one of ``omega_power`` (omega_n = (n+1)**alpha),
    ``omega_list`` (explicit omega values), or ``eta_direct`` (eta_n given
    directly: ``rule="reciprocal"`` for eta_n = 1/(n+1), or explicit
    ``values``).
    """

    kind: str
    alpha: Fraction | None = None
    values: tuple[Fraction, ...] | None = None
    rule: str | None = None
    summable_reciprocal: bool = False
    nth_root_limit_one: bool = False

    def __post_init__(self):
        if self.kind == OMEGA_POWER:
            if self.alpha is None or self.alpha <= 1:
                raise WeightError("omega_power needs alpha > 1 so that sum(1/omega_n) converges")
        elif self.kind == OMEGA_LIST or (self.kind == ETA_DIRECT and self.rule is None):
            if not self.values:
                raise WeightError(f"{self.kind} needs a non-empty list of values")
            if any(v <= 0 for v in self.values):
                raise WeightError("weights must be strictly positive")
        elif self.kind == ETA_DIRECT:
            if self.rule != "reciprocal":
                raise WeightError(f"unknown eta rule {self.rule!r}")
        else:
            raise WeightError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def omega_power(cls, alpha=2):
        return cls(OMEGA_POWER, alpha=Fraction(alpha), summable_reciprocal=True, nth_root_limit_one=True)

    @classmethod
    def omega_list(cls, values: Iterable, *, summable_reciprocal=False, nth_root_limit_one=False):
        return cls(OMEGA_LIST, values=tuple(Fraction(v) for v in values),
                   summable_reciprocal=summable_reciprocal, nth_root_limit_one=nth_root_limit_one)

    @classmethod
    def reciprocal(cls):
        # Monomial norms grow polynomially here, so the n-th root limit is 1.
        return cls(ETA_DIRECT, rule="reciprocal", summable_reciprocal=True, nth_root_limit_one=True)

    @classmethod
    def eta_list(cls, values: Iterable):
        return cls(ETA_DIRECT, values=tuple(Fraction(v) for v in values))

    @property
    def omega_mode(self) -> bool:
        return self.kind in (OMEGA_POWER, OMEGA_LIST)

    def omega(self, n: int):
        """omega_n as a Fraction (float for a non-integer power)."""
        if self.kind == OMEGA_POWER:
            if self.alpha.denominator == 1:
                return Fraction(n + 1) ** int(self.alpha)
            return float(n + 1) ** float(self.alpha)
        if self.kind == OMEGA_LIST:
            if n >= len(self.values):
                raise WeightError(f"omega_{n} is beyond the supplied list of {len(self.values)} values")
            return self.values[n]
        raise WeightError("eta_direct weights have no omega sequence")

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        if self.alpha is not None:
            d["alpha"] = str(self.alpha)
        if self.values is not None:
            d["values"] = [str(v) for v in self.values]
        if self.rule is not None:
            d["rule"] = self.rule
        d["summable_reciprocal"] = self.summable_reciprocal
        d["nth_root_limit_one"] = self.nth_root_limit_one
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "WeightSpec":
        kind = d.get("kind")
        if kind == OMEGA_POWER:
            return cls.omega_power(Fraction(str(d.get("alpha", 2))))
        if kind == OMEGA_LIST:
            return cls.omega_list([Fraction(str(v)) for v in d["values"]],
                                  summable_reciprocal=bool(d.get("summable_reciprocal", False)),
                                  nth_root_limit_one=bool(d.get("nth_root_limit_one", False)))
        if kind == ETA_DIRECT:
            if d.get("rule") == "reciprocal":
                return cls.reciprocal()
            if "values" in d:
                return cls.eta_list([Fraction(str(v)) for v in d["values"]])
            raise WeightError("eta_direct needs rule='reciprocal' or a values list")
        raise WeightError(f"unknown weight kind {kind!r}")

    # analytic tails ---------------------------------------------------------

    def eta_sq_tail(self, m: int) -> float:
        """sum_{j > m} eta_j^2, or inf when it cannot be certified."""
        if self.kind == ETA_DIRECT and self.rule == "reciprocal":
            return float(zeta(2, m + 2))
        if self.kind == OMEGA_POWER:
            # omega_k = (k+1)^alpha; sum_{j>=J} (2j+c)^-alpha = 2^-alpha * zeta(alpha, J + c/2)
            s = float(self.alpha)
            j0 = m + 1
            h = lambda c: 2.0 ** (-s) * float(zeta(s, j0 + c / 2))  # noqa: E731
            # terms: 3/omega_{2j}, 1/omega_{2j-2}, 3/omega_{2j+1}, 1/omega_{2j+3}
            return 3 * h(1) + h(-1) + 3 * h(2) + h(4)
        return math.inf

    def monomial_norm_majorant(self, n: int) -> float:
        """An upper bound for ||z^n||_H whose consecutive ratios decrease in n."""
        if self.kind == OMEGA_POWER:
            return 1.0 + float(n + 1) ** float(self.alpha)
        if self.kind == ETA_DIRECT and self.rule == "reciprocal":
            return 1.0 + 2.0 * (n + 2) ** 2
        return math.inf


def eta_sq_from_omega(w: WeightSpec, n: int):
    """3/omega_{2n} + 1/omega_{2n-2} + 3/omega_{2n+1} + 1/omega_{2n+3} (second term dropped at n = 0)."""
    if not w.omega_mode:
        raise WeightError("eta_sq_from_omega needs an omega-mode weight spec")
    s = 3 / w.omega(2 * n) + 3 / w.omega(2 * n + 1) + 1 / w.omega(2 * n + 3)
    if n >= 1:
        s += 1 / w.omega(2 * n - 2)
    return s


class SequenceCache:
    """Memoized eta_n^2, eta_n, a_n and b_n in one scalar mode.

    Extension is guarded by a lock, so a cache may be shared between threads.
    """

    def __init__(self, weights: WeightSpec, mode: str = EXACT):
        if mode not in (EXACT, APPROX):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == EXACT and weights.kind == OMEGA_POWER and weights.alpha.denominator != 1:
            raise WeightError("exact mode needs an integer omega exponent")
        self.weights = weights
        self.mode = mode
        self._lock = threading.RLock()
        self._eta_sq: dict[int, object] = {}
        self._eta: dict[int, object] = {}
        self._b: dict[int, object] = {}

    def eta_sq(self, n: int):
        v = self._eta_sq.get(n)
        if v is None:
            with self._lock:
                w = self.weights
                if w.omega_mode:
                    v = eta_sq_from_omega(w, n)
                elif w.rule == "reciprocal":
                    v = Fraction(1, (n + 1) ** 2)
                else:
                    if n >= len(w.values):
                        raise WeightError(f"eta_{n} is beyond the supplied list")
                    v = w.values[n] ** 2
                if self.mode == APPROX:
                    v = float(v)
                self._eta_sq[n] = v
        return v

    def eta(self, n: int):
        v = self._eta.get(n)
        if v is None:
            with self._lock:
                w = self.weights
                if w.kind == ETA_DIRECT:
                    if w.rule == "reciprocal":
                        v = Fraction(1, n + 1)
                    elif n < len(w.values):
                        v = w.values[n]
                    else:
                        raise WeightError(f"eta_{n} is beyond the supplied list")
                    v = convert(v, self.mode)
                else:
                    v = sqrt_rational(self.eta_sq(n), self.mode)
                self._eta[n] = v
        return v

    def a(self, n: int):
        return 1 / self.eta_sq(n)

    def b(self, n: int):
        if n < 1:
            raise IndexError("b_n is defined for n >= 1 only")
        v = self._b.get(n)
        if v is None:
            with self._lock:
                v = 1 / (self.eta(n) * self.eta(n - 1))
                self._b[n] = v
        return v

    def prefetch(self, n_max: int) -> None:
        """Fill eta_0..eta_{n_max}; keeps the exact radical base from churning later."""
        for n in range(n_max + 1):
            self.eta(n)


class SparseVec:
    """Finitely supported vector in l^2(Z+) with no stored zeros."""

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[int, object] | None = None):
        self.entries = {}
        if entries:
            for i, v in entries.items():
                if i < 0:
                    raise IndexError("l^2 indices are non-negative")
                if v != 0:
                    self.entries[i] = v

    @classmethod
    def unit(cls, n: int, mode: str = EXACT) -> "SparseVec":
        return cls({n: one_of(mode)})

    def __getitem__(self, i):
        return self.entries.get(i, 0)

    def __iter__(self):
        return iter(sorted(self.entries))

    def __len__(self):
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def support(self) -> list[int]:
        return sorted(self.entries)

    def __eq__(self, other):
        if not isinstance(other, SparseVec):
            return NotImplemented
        return self.entries == other.entries

    def __add__(self, other: "SparseVec") -> "SparseVec":
        out = dict(self.entries)
        for i, v in other.entries.items():
            s = out.get(i, 0) + v
            if s != 0:
                out[i] = s
            else:
                out.pop(i, None)
        return SparseVec._raw(out)

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseVec":
        if c == 0:
            return SparseVec()
        return SparseVec._raw({i: v * c for i, v in self.entries.items()})

    __mul__ = scale
    __rmul__ = scale

    def add_scaled(self, c, other: "SparseVec") -> "SparseVec":
        return self + other.scale(c)

    def norm_sq(self):
        vals = list(self.entries.values())
        if not vals:
            return Fraction(0)
        return sum((v * v for v in vals[1:]), vals[0] * vals[0])

    def mode(self) -> str | None:
        for v in self.entries.values():
            return mode_of(v)
        return None

    @classmethod
    def _raw(cls, entries):
        self = object.__new__(cls)
        self.entries = entries
        return self

    def __repr__(self):
        body = ", ".join(f"{i}: {v}" for i, v in self.items())
        return f"SparseVec({{{body}}})"


def dot(u: SparseVec, v: SparseVec):
    """l^2 inner product (real entries, no conjugation)."""
    mu, mv = u.mode(), v.mode()
    if mu is not None and mv is not None and mu != mv:
        raise ScalarModeError(f"mode mismatch: {mu} vs {mv}")
    a, b = (u.entries, v.entries) if len(u.entries) <= len(v.entries) else (v.entries, u.entries)
    acc = None
    for i, x in a.items():
        y = b.get(i)
        if y is not None:
            acc = x * y if acc is None else acc + x * y
    if acc is None:
        return zero_of(mu or mv or EXACT)
    return acc


def x_vec(cache: SequenceCache, n: int) -> SparseVec:
    one = one_of(cache.mode)
    m, odd = divmod(n, 2)
    if not odd:
        return SparseVec._raw({n: one})
    out = {n: one, 2 * m: -cache.a(m)}
    if m >= 1:
        out[2 * m - 2] = cache.b(m)
    return SparseVec._raw(out)


def y_vec(cache: SequenceCache, n: int) -> SparseVec:
    one = one_of(cache.mode)
    m, odd = divmod(n, 2)
    if odd:
        return SparseVec._raw({n: one})
    return SparseVec._raw({n: one, n + 1: cache.a(m), n + 3: -cache.b(m + 1)})


def norm_sq_x(cache: SequenceCache, n: int):
    m, odd = divmod(n, 2)
    one = one_of(cache.mode)
    if not odd:
        return one
    a = cache.a(m)
    s = one + a * a
    if m >= 1:
        b = cache.b(m)
        s = s + b * b
    return s


def norm_sq_y(cache: SequenceCache, n: int):
    m, odd = divmod(n, 2)
    one = one_of(cache.mode)
    if odd:
        return one
    a, b = cache.a(m), cache.b(m + 1)
    return one + a * a + b * b


def check_biorthogonality(cache: SequenceCache, N: int):
    """max over 0 <= n, m <= N of |<x_n, y_m> - delta_nm| (exact zero in exact mode)."""
    xs = [x_vec(cache, n) for n in range(N + 1)]
    ys = [y_vec(cache, m) for m in range(N + 1)]
    # y_m is supported in {m, m+1, m+3}; every other pair has disjoint support.
    holders: dict[int, list[int]] = {}
    for m, y in enumerate(ys):
        for i in y.entries:
            holders.setdefault(i, []).append(m)
    worst = zero_of(cache.mode)
    one = one_of(cache.mode)
    for n, x in enumerate(xs):
        partners = {m for i in x.entries for m in holders.get(i, ())}
        partners.add(n)
        for m in partners:
            d = abs(dot(x, ys[m]) - (one if m == n else 0))
            if d > worst:
                worst = d
    return worst


def check_biorthogonality_dense(cache: SequenceCache, N: int):
    """Same quantity as :func:`check_biorthogonality`, looping over every pair."""
    xs = [x_vec(cache, n) for n in range(N + 1)]
    ys = [y_vec(cache, m) for m in range(N + 1)]
    worst = zero_of(cache.mode)
    for n in range(N + 1):
        for m in range(N + 1):
            d = abs(dot(xs[n], ys[m]) - (1 if n == m else 0))
            if d > worst:
                worst = d
    return worst


X_BASIS = "X"
Y_BASIS = "Y"


def reconstruct_e(cache: SequenceCache, n: int, basis: str = X_BASIS) -> SparseVec:
    """Coefficients c with e_n = sum_k c_k x_k (or y_k)."""
    one = one_of(cache.mode)
    m, odd = divmod(n, 2)
    if basis == X_BASIS:
        if not odd:
            return SparseVec._raw({n: one})
        out = {n: one, 2 * m: cache.a(m)}
        if m >= 1:
            out[2 * m - 2] = -cache.b(m)
        return SparseVec._raw(out)
    if basis == Y_BASIS:
        if odd:
            return SparseVec._raw({n: one})
        return SparseVec._raw({n: one, n + 1: -cache.a(m), n + 3: cache.b(m + 1)})
    raise ValueError(f"unknown basis {basis!r}")


def expand(cache: SequenceCache, coeffs: SparseVec, basis: str = X_BASIS) -> SparseVec:
    """sum_k coeffs_k x_k (or y_k) as an l^2 vector."""
    make = x_vec if basis == X_BASIS else y_vec
    out = SparseVec()
    for k, c in coeffs.items():
        out = out + make(cache, k).scale(c)
    return out


def check_reconstruction(cache: SequenceCache, N: int) -> list[tuple[int, str]]:
    """Indices n <= N (with basis) where expanding reconstruct_e fails to give e_n."""
    bad = []
    for n in range(N + 1):
        target = SparseVec.unit(n, cache.mode)
        for basis in (X_BASIS, Y_BASIS):
            got = expand(cache, reconstruct_e(cache, n, basis), basis)
            if cache.mode == EXACT:
                ok = got == target
            else:
                # cancellation of O(a_m * b_m) products
                scale = max(1.0, float(cache.a(n // 2 + 1)) ** 2)
                ok = all(abs(v) <= 1e-12 * scale for v in (got - target).entries.values())
            if not ok:
                bad.append((n, basis))
    return bad
