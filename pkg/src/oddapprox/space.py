"""The Hilbert function space H = J(l^2).

An element f of H is stored through its l^2 representative x, with
f = J(x) and

    J(x) = sum_n  <x, y_n> / ||y_n||  *  z^{sigma(n)}.

The inner product of H is the one of l^2, so ||f||_H = ||x||.  Because
J(||y_n|| x_n) = z^{sigma(n)}, monomials (and hence polynomials) have
finite representatives built from the x_n.

Taylor caches on :class:`HFunction` are filled lazily; distinct indices
may be filled from different threads since every value is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, NamedTuple, Sequence

from .mbasis import (
    SequenceCache,
    SparseVec,
    WeightSpec,
    dot,
    norm_sq_x,
    norm_sq_y,
    x_vec,
    y_vec,
)
from .projection import DEFAULT_PIVOT_TOL, ProjectionResult, project
from .scalars import APPROX, DEFAULT_ZERO_TOL, EXACT, ScalarModeError, is_zero, sqrt_rational


class IdentityMap:
    kind = "identity"

    def forward(self, n: int) -> int:
        return n

    def inverse(self, k: int) -> int | None:
        return k if k >= 0 else None

    def to_dict(self) -> dict:
        return {"kind": self.kind}


IDENTITY = IdentityMap()


@dataclass(eq=False)
class HFunction:
    """f = J(coords), with optional knowledge of the untruncated function.

    ``tail_bound`` bounds ||x_true - coords|| for the function being
    approximated.  ``pairing_rule(n)``, when given, returns <x_true, y_n>
    for the untruncated representative (so Taylor coefficients are known
    beyond the stored coordinates).  ``valid_index`` is the largest index n
    at which the stored coordinates reproduce the true pairing.
    ``pairing_float`` is a cheap float version of ``pairing_rule`` used for
    tail estimates.
    """

    coords: SparseVec
    tail_bound: float = 0.0
    valid_index: int | None = None
    pairing_rule: Callable[[int], object] | None = None
    label: str = ""
    pairing_float: Callable[[int], float] | None = None
    _taylor: dict = field(default_factory=dict, repr=False)

    def norm_sq(self):
        return self.coords.norm_sq()


class Evaluation(NamedTuple):
    value: complex
    error_bound: float
    degree: int


class MonomialNormRow(NamedTuple):
    n: int
    degree: int
    norm: float
    bound: float | None
    passed: bool | None


def _sqrt_float(q) -> float:
    """sqrt of a non-negative scalar as a float, without overflowing on huge rationals."""
    try:
        return math.sqrt(float(q))
    except OverflowError:
        q = Fraction(q)
        return math.exp(0.5 * (math.log(q.numerator) - math.log(q.denominator)))


class Space:
    """One concrete space H: weights, scalar mode and degree map sigma."""

    def __init__(self, weights: WeightSpec, mode: str = EXACT, sigma=None, *, damping: bool = False,
                 zero_tol: float = DEFAULT_ZERO_TOL, pivot_tol: float = DEFAULT_PIVOT_TOL):
        self.weights = weights
        self.mode = mode
        self.cache = SequenceCache(weights, mode)
        self.sigma = sigma if sigma is not None else IDENTITY
        self.damping = damping
        self.zero_tol = zero_tol
        self.pivot_tol = pivot_tol
        self._ynorm: dict[int, object] = {}

    @property
    def holomorphic(self) -> bool:
        return not self.damping

    # building blocks -----------------------------------------------------

    def x(self, n: int) -> SparseVec:
        return x_vec(self.cache, n)

    def y(self, n: int) -> SparseVec:
        return y_vec(self.cache, n)

    def y_norm(self, n: int):
        v = self._ynorm.get(n)
        if v is None:
            v = sqrt_rational(norm_sq_y(self.cache, n), self.mode)
            self._ynorm[n] = v
        return v

    def scale(self, n: int):
        """c_n with J(c_n x_n) equal to the monomial of degree sigma(n)."""
        s = self.y_norm(n)
        if self.damping:
            s = s * (2 ** n)
        return s

    def index_of(self, degree: int) -> int:
        n = self.sigma.inverse(degree)
        if n is None:
            raise ValueError(f"degree {degree} is not in the range of sigma")
        return n

    def degrees_up_to(self, k: int) -> list[int]:
        """Degrees kept by the k-th partial sum (symmetric for Fourier spaces)."""
        if self.damping:
            return list(range(-k, k + 1))
        return list(range(k + 1))

    # coordinates ---------------------------------------------------------

    def monomial_coords(self, n: int) -> SparseVec:
        """Representative of z^{sigma(n)}: scale(n) * x_n."""
        return self.x(n).scale(self.scale(n))

    def degree_coords(self, degree: int) -> SparseVec:
        return self.monomial_coords(self.index_of(degree))

    def polynomial_coords(self, taylor_coeffs: Mapping[int, object]) -> SparseVec:
        out = SparseVec()
        for d, c in sorted(taylor_coeffs.items()):
            if c != 0:
                out = out + self.degree_coords(d).scale(c)
        return out

    def index_polynomial(self, pairings: Mapping[int, object]) -> SparseVec:
        """sum_n p_n x_n: the element whose pairing with y_n is p_n at each listed n."""
        out = SparseVec()
        for n, p in sorted(pairings.items()):
            if p != 0:
                out = out + self.x(n).scale(p)
        return out

    def function(self, coords: SparseVec, **kw) -> HFunction:
        m = coords.mode()
        if m is not None and m != self.mode:
            raise ScalarModeError(f"{m} coordinates in a {self.mode} space")
        return HFunction(coords, **kw)

    def polynomial(self, taylor_coeffs: Mapping[int, object], label: str = "") -> HFunction:
        return HFunction(self.polynomial_coords(taylor_coeffs), label=label)

    def monomial(self, degree: int) -> HFunction:
        return HFunction(self.degree_coords(degree), label=f"z^{degree}")

    # Taylor coefficients ---------------------------------------------------

    def pairing(self, f: HFunction, n: int):
        return dot(f.coords, self.y(n))

    def taylor_of(self, f: HFunction, n: int):
        """Coefficient of the degree-sigma(n) monomial of J(f.coords)."""
        v = f._taylor.get(n)
        if v is None:
            p = self.pairing(f, n)
            v = p if is_zero(p, 0.0) else p / self.scale(n)
            f._taylor[n] = v
        return v

    def coefficient(self, f: HFunction, degree: int):
        """Taylor coefficient of the represented function (not just its truncation)."""
        n = self.sigma.inverse(degree)
        if n is None:
            return 0.0 if self.mode == APPROX else Fraction(0)
        if f.pairing_rule is not None:
            p = f.pairing_rule(n)
            return p if is_zero(p, 0.0) else p / self.scale(n)
        if f.valid_index is not None and n > f.valid_index:
            raise ValueError(f"coefficient at index {n} is outside the validity window (<= {f.valid_index})")
        return self.taylor_of(f, n)

    def taylor_support(self, f: HFunction) -> list[int]:
        """Indices n whose y_n meets supp(coords); every other coefficient is 0."""
        out = set()
        for i in f.coords.entries:
            out.add(i)
            if i % 2:
                out.add(i - 1)
                if i >= 3:
                    out.add(i - 3)
        return sorted(out)

    def taylor_series(self, f: HFunction) -> dict[int, object]:
        """Nonzero coefficients of J(f.coords) keyed by degree."""
        out = {}
        for n in self.taylor_support(f):
            c = self.taylor_of(f, n)
            if not is_zero(c, 0.0):
                out[self.sigma.forward(n)] = c
        return out

    # geometry ------------------------------------------------------------

    def inner(self, f: HFunction, g: HFunction):
        return dot(f.coords, g.coords)

    def norm_sq(self, f: HFunction):
        return f.coords.norm_sq()

    def monomial_norm_sq(self, n: int):
        """||monomial of degree sigma(n)||_H^2 = ||x_n||^2 ||y_n||^2 (times 4^n when damped)."""
        v = norm_sq_x(self.cache, n) * norm_sq_y(self.cache, n)
        if self.damping:
            if self.mode == APPROX:
                return v * 4.0 ** n if n < 500 else math.inf
            v = v * (4 ** n)
        return v

    def monomial_norm_check(self, N: int) -> list[MonomialNormRow]:
        """Compare ||z^{sigma(n)}||^2 with (1 + omega_n)^2 for n <= N.

        Only omega-derived holomorphic spaces carry the bound; otherwise
        rows are informational (``bound`` and ``passed`` are None).
        """
        rows = []
        claimed = self.weights.omega_mode and not self.damping
        for n in range(N + 1):
            sq = self.monomial_norm_sq(n)
            if claimed:
                bound = 1 + self.weights.omega(n)
                if self.mode == APPROX:
                    bound = float(bound)
                rows.append(MonomialNormRow(n, self.sigma.forward(n), _sqrt_float(sq),
                                            float(bound), bool(sq <= bound * bound)))
            else:
                rows.append(MonomialNormRow(n, self.sigma.forward(n), _sqrt_float(sq), None, None))
        return rows

    def project(self, f: HFunction, generators: Sequence, ids: Sequence | None = None) -> ProjectionResult:
        vecs = [g.coords if isinstance(g, HFunction) else g for g in generators]
        res = project(f.coords, vecs, mode=self.mode, ids=ids, pivot_tol=self.pivot_tol)
        res.tail_bound = f.tail_bound
        return res

    def eval_at(self, f: HFunction, z: complex, accuracy: float = 1e-12) -> Evaluation:
        """J(f.coords)(z) with a bound covering series and truncation tails.

        The series tail past degree D is at most ||x|| |z|^{D+1} / (1 - |z|);
        the declared tail bound of f adds f.tail_bound / (1 - |z|).
        """
        if self.damping:
            raise ValueError("point evaluation is defined for holomorphic spaces only")
        r = abs(z)
        if r >= 1:
            raise ValueError("evaluation point must lie in the open unit disk")
        series = self.taylor_series(f)
        top = max(series, default=-1)
        norm = math.sqrt(float(self.norm_sq(f)))
        D = top
        if norm > 0 and r > 0:
            need = math.log(accuracy * (1 - r) / norm) / math.log(r) - 1 if accuracy * (1 - r) < norm else 0
            D = min(top, max(0, math.ceil(need)))
        value = sum((complex(float(c)) * z ** d for d, c in series.items() if d <= D), 0j)
        err = 0.0 if D >= top else norm * r ** (D + 1) / (1 - r)
        err += f.tail_bound / (1 - r)
        return Evaluation(value, err, D)
