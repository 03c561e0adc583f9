"""Independent reference computations used by several test modules."""

import random
from fractions import Fraction

import sympy as sp

from oddapprox.mbasis import SequenceCache, SparseVec, WeightSpec, x_vec
from oddapprox.scalars import EXACT, Surd


def to_sympy(x):
    if isinstance(x, Surd):
        return sum(sp.Rational(c.numerator, c.denominator) * sp.sqrt(k) for k, c in x.terms().items())
    q = Fraction(x)
    return sp.Rational(q.numerator, q.denominator)


def normal_equations_dist_sq(f: SparseVec, gens: list[SparseVec]):
    """||f||^2 - b^T c with G c = b solved by sympy Gauss-Jordan (free parameters set to 0)."""
    idx = sorted(set(f.entries).union(*[g.entries for g in gens]))
    col = lambda v: sp.Matrix([to_sympy(v[i]) for i in idx])  # noqa: E731
    A = sp.Matrix.hstack(*[col(g) for g in gens])
    fv = col(f)
    G = A.T * A
    b = A.T * fv
    sol, params = G.gauss_jordan_solve(b)
    sol = sol.subs({p: 0 for p in params})
    return sp.radsimp(sp.expand((fv.T * fv)[0] - (b.T * sol)[0]))


def random_instance(rng: random.Random, with_radicals: bool = False):
    """A target and 1..8 generators in dimension <= 10, sometimes with dependent generators."""
    dim = rng.randint(2, 10)
    k = rng.randint(1, 8)

    def rvec():
        return SparseVec({i: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for i in range(dim)
                          if rng.random() < 0.6})

    gens = []
    while len(gens) < k:
        if gens and rng.random() < 0.2:
            g = gens[rng.randrange(len(gens))].scale(Fraction(rng.randint(-3, 3) or 1)) + \
                gens[rng.randrange(len(gens))]
        else:
            g = rvec()
        if len(g):
            gens.append(g)
    f = rvec()
    if with_radicals:
        c = SequenceCache(WeightSpec.omega_power(2), EXACT)
        gens[0] = x_vec(c, 2 * rng.randint(0, 3) + 1)
        f = f + x_vec(c, 2 * rng.randint(0, 3) + 1).scale(Fraction(1, 2))
    return f, gens
