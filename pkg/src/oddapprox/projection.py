"""Orthogonal projection onto the span of finitely many l^2 vectors.

Exact mode factors the Gram matrix as U^T D U by sparse symmetric
elimination; a zero pivot means the generator is already in the span of
the earlier ones and it is dropped.  Approx mode scales the Gram matrix
to unit diagonal, runs a diagonally pivoted Cholesky factorization and
drops pivots below ``pivot_tol`` (relative to the unit diagonal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .mbasis import SparseVec, dot
from .scalars import APPROX, EXACT, format_exact, zero_of

DEFAULT_PIVOT_TOL = 1e-12
RESIDUAL_RTOL = 1e-8


class ConditioningError(ArithmeticError):
    """The approximate Gram system could not be solved reliably."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass
class ProjectionResult:
    generator_ids: list
    gram: list[list]
    coeffs: list
    dist_sq: object
    pythagoras_dist_sq: object
    dropped: list = field(default_factory=list)
    condition_estimate: float | None = None
    mode: str = EXACT
    tail_bound: float = 0.0

    @property
    def distance(self) -> float:
        return math.sqrt(max(float(self.dist_sq), 0.0))

    @property
    def interval(self) -> tuple[float, float]:
        """Distance range for the untruncated target, given its declared tail bound."""
        d = self.distance
        return max(d - self.tail_bound, 0.0), d + self.tail_bound

    def to_json(self) -> dict:
        return {
            "generator_ids": [str(g) for g in self.generator_ids],
            "dropped": [str(g) for g in self.dropped],
            "coeffs": [format_exact(c) for c in self.coeffs],
            "dist_sq_exact": format_exact(self.dist_sq) if self.mode == EXACT else None,
            "dist_sq": float(self.dist_sq),
            "distance": self.distance,
            "condition_estimate": self.condition_estimate,
            "interval": list(self.interval),
        }


def gram_matrix(vectors: Sequence[SparseVec], mode: str = EXACT) -> list[list]:
    n = len(vectors)
    zero = zero_of(mode)
    G = [[zero] * n for _ in range(n)]
    owners: dict[int, list[int]] = {}
    for i, v in enumerate(vectors):
        for k in v.entries:
            owners.setdefault(k, []).append(i)
    for i, v in enumerate(vectors):
        partners = {j for k in v.entries for j in owners[k] if j >= i}
        for j in partners:
            G[i][j] = G[j][i] = dot(v, vectors[j])
    return G


def _combine(coeffs, vectors):
    out = SparseVec()
    for c, v in zip(coeffs, vectors):
        if c != 0:
            out = out + v.scale(c)
    return out


def project(f: SparseVec, generators: Sequence[SparseVec], *, mode: str = EXACT,
            ids: Sequence | None = None, pivot_tol: float = DEFAULT_PIVOT_TOL) -> ProjectionResult:
    """Best approximation of ``f`` from span(generators) in l^2."""
    ids = list(ids) if ids is not None else list(range(len(generators)))
    if len(ids) != len(generators):
        raise ValueError("one id per generator")
    f_sq = f.norm_sq()
    if mode == APPROX:
        f_sq = float(f_sq)
    if not generators:
        return ProjectionResult([], [], [], f_sq, f_sq, mode=mode)
    if any(len(g) == 0 for g in generators):
        raise ValueError("generators must be nonzero")
    G = gram_matrix(generators, mode)
    rhs = [dot(g, f) for g in generators]
    if mode == EXACT:
        coeffs, dropped, pyth = _solve_exact(G, rhs, f_sq)
        cond = None
    else:
        coeffs, dropped, pyth, cond = _solve_approx(G, rhs, f_sq, pivot_tol)
    residual = f - _combine(coeffs, generators)
    direct = residual.norm_sq()
    if mode == EXACT:
        if direct != pyth:
            raise ArithmeticError("exact projection failed the Pythagoras residual identity")
        dist_sq = pyth
    else:
        direct = float(direct)
        if abs(direct - pyth) > RESIDUAL_RTOL * max(f_sq, 1e-300):
            raise ConditioningError("Pythagoras and direct residuals disagree",
                                    pythagoras=pyth, direct=direct, norm_sq=f_sq, condition=cond)
        dist_sq = direct
    return ProjectionResult(ids, G, coeffs, dist_sq, pyth, [ids[i] for i in dropped], cond, mode)


def _solve_exact(G, rhs, f_sq):
    n = len(G)
    # upper-triangular sparse storage of the working Schur complement
    A = [{j: G[i][j] for j in range(i, n) if G[i][j] != 0} for i in range(n)]
    U: dict[int, dict[int, object]] = {}
    D: dict[int, object] = {}
    dropped = []
    for i in range(n):
        row = A[i]
        d = row.get(i, 0)
        if d == 0:
            if any(v != 0 for j, v in row.items() if j != i):
                raise ArithmeticError("Gram matrix is not positive semidefinite")
            dropped.append(i)
            continue
        D[i] = d
        off = {j: v for j, v in row.items() if j > i}
        U[i] = {j: v / d for j, v in off.items()}
        for j, uij in U[i].items():
            Aj = A[j]
            for k, v in off.items():
                if k >= j:
                    nv = Aj.get(k, 0) - uij * v
                    if nv != 0:
                        Aj[k] = nv
                    else:
                        Aj.pop(k, None)
    kept = sorted(D)
    # U^T y = rhs
    y = {}
    for j in kept:
        s = rhs[j]
        for i in kept:
            if i >= j:
                break
            u = U[i].get(j)
            if u is not None:
                s = s - u * y[i]
        y[j] = s
    z = {i: y[i] / D[i] for i in kept}
    c = {}
    for i in reversed(kept):
        s = z[i]
        for j, u in U[i].items():
            if j in c:
                s = s - u * c[j]
        c[i] = s
    zero = 0 * f_sq
    coeffs = [c.get(i, zero) for i in range(n)]
    pyth = f_sq
    for i in kept:
        pyth = pyth - y[i] * z[i]
    return coeffs, dropped, pyth


def pivoted_cholesky(G: np.ndarray, tol: float = DEFAULT_PIVOT_TOL):
    """Return (L, piv, rank) with G[piv][:, piv] ~ L @ L.T over the first ``rank`` pivots.

    Raises ConditioningError if a trailing diagonal goes negative beyond the
    drop tolerance (the matrix is indefinite in floating point).
    """
    A = np.array(G, dtype=float, copy=True)
    n = A.shape[0]
    piv = np.arange(n)
    dmax = float(np.max(np.diag(A))) if n else 0.0
    cutoff = tol * dmax
    rank = n
    for i in range(n):
        d = np.diag(A)[i:]
        j = i + int(np.argmax(d))
        if A[j, j] <= cutoff:
            rank = i
            break
        if d.min() < -max(cutoff, 10 * n * np.finfo(float).eps * dmax):
            raise ConditioningError("Gram matrix is indefinite beyond tolerance",
                                    pivot=i, value=float(d.min()), max_diag=dmax)
        if j != i:
            A[[i, j], :] = A[[j, i], :]
            A[:, [i, j]] = A[:, [j, i]]
            piv[[i, j]] = piv[[j, i]]
        A[i, i] = math.sqrt(A[i, i])
        A[i + 1:, i] /= A[i, i]
        A[i + 1:, i + 1:] -= np.outer(A[i + 1:, i], A[i + 1:, i])
    L = np.tril(A)[:rank, :rank]
    return L, piv, rank


def _solve_approx(G, rhs, f_sq, tol):
    Gm = np.array(G, dtype=float)
    b = np.array(rhs, dtype=float)
    n = len(rhs)
    # Equilibrate to unit diagonal; unscaled monomial Grams drop genuine pivots.
    s = 1.0 / np.sqrt(np.diag(Gm))
    Gs = Gm * s[:, None] * s[None, :]
    bs = b * s
    L, piv, rank = pivoted_cholesky(Gs, tol)
    kept = piv[:rank]
    coeffs = np.zeros(n)
    if rank:
        w = solve_triangular(L, bs[kept], lower=True)
        coeffs[kept] = solve_triangular(L.T, w, lower=False) * s[kept]
        diag = np.abs(np.diag(L))
        cond = float((diag.max() / diag.min()) ** 2)
        pyth = float(f_sq - w @ w)
    else:
        cond = math.inf
        pyth = float(f_sq)
    dropped = sorted(int(i) for i in piv[rank:])
    return [float(c) for c in coeffs], dropped, pyth, cond
