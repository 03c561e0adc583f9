"""Exact and floating-point scalars.

Exact values live in the field generated over the rationals by square
roots of positive rationals.  An irrational value is a :class:`Surd`,
a finite sum ``c_1*sqrt(K_1) + ... + c_m*sqrt(K_m)`` with rational
``c_i`` and integer radicands ``K_i`` that are products of distinct
elements of a global coprime base (see :class:`RadicalBase`).  No
element of the base is a perfect square, so the square roots of distinct
radicands are linearly independent over the rationals and zero testing
is decidable.  Rational values stay as :class:`fractions.Fraction`.

Approximate values are plain Python floats.  Mixing a float with an
exact value raises :class:`ScalarModeError`.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from numbers import Rational

EXACT = "exact"
APPROX = "approx"
MODES = (EXACT, APPROX)

DEFAULT_ZERO_TOL = 1e-12


class ScalarModeError(TypeError):
    """Exact and approximate scalars were combined."""


class RadicalBase:
    """Append-only coprime base of non-square integers > 1.

    Every integer ever passed to :meth:`include` factors as a product of
    powers of base elements.  The base is refined (elements split by gcd)
    when a new number shares a factor with an existing element; ``version``
    changes whenever that happens so stale radicands can be re-reduced.
    """

    def __init__(self):
        self._atoms: tuple[int, ...] = ()
        self._lock = threading.Lock()
        self._reduce_cache: dict[int, tuple[int, int]] = {}
        self.version = 0

    @property
    def atoms(self) -> tuple[int, ...]:
        return self._atoms

    def include(self, n: int) -> None:
        if n <= 1:
            return
        with self._lock:
            atoms = list(self._atoms)
            present = set(atoms)
            # small primes become atoms directly, so later atoms never contain them
            for p in _SMALL_PRIMES:
                if n % p == 0:
                    while n % p == 0:
                        n //= p
                    if p not in present:
                        atoms.append(p)
                        present.add(p)
            _, _, n = _reduce_over(atoms, n)
            atoms, split = _refine(atoms, n)
            self._atoms = tuple(atoms)
            if split:
                self.version += 1
                self._reduce_cache = {}

    def reduce(self, n: int) -> tuple[int, int]:
        """Return ``(c, k)`` with ``n == c*c*k`` and ``k`` squarefree over the base."""
        if n == 1:
            return 1, 1
        cache = self._reduce_cache
        hit = cache.get(n)
        if hit is not None:
            return hit
        c, k, rest = _reduce_over(self._atoms, n)
        if rest != 1:
            self.include(n)
            cache = self._reduce_cache
            c, k, rest = _reduce_over(self._atoms, n)
            assert rest == 1
        cache[n] = (c, k)
        return c, k

    def atom_dividing(self, k: int) -> int:
        for a in self._atoms:
            if k % a == 0:
                return a
        raise ValueError(f"{k} is not built from the radical base")


def _reduce_over(atoms, n):
    c = k = 1
    for a in atoms:
        if n % a:
            continue
        e = 0
        while n % a == 0:
            n //= a
            e += 1
        c *= a ** (e // 2)
        if e % 2:
            k *= a
        if n == 1:
            break
    return c, k, n


def _primes_below(limit: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * limit
    sieve[:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return tuple(i for i in range(limit) if sieve[i])


_SMALL_PRIMES = _primes_below(1000)


def _refine(atoms: list[int], n: int) -> tuple[list[int], bool]:
    split = False
    work = [n]
    while work:
        x = work.pop()
        if x == 1:
            continue
        r = math.isqrt(x)
        if r * r == x:
            work.append(r)
            continue
        for i, a in enumerate(atoms):
            g = math.gcd(a, x)
            if g == 1:
                continue
            if a == x:
                break
            atoms.pop(i)
            split = True
            work.extend((g, a // g, x // g))
            break
        else:
            atoms.append(x)
    return atoms, split


RADICALS = RadicalBase()


def _collapse(terms: dict[int, Fraction], version: int):
    if not terms:
        return Fraction(0)
    if len(terms) == 1 and 1 in terms:
        return terms[1]
    return Surd._from_terms(terms, version)


class Surd:
    """A rational linear combination of square roots of coprime-base radicands.

    Instances always carry at least one irrational term; arithmetic that
    cancels every radical returns a ``Fraction`` instead.
    """

    __slots__ = ("_terms", "_version")

    @classmethod
    def _from_terms(cls, terms, version):
        self = object.__new__(cls)
        self._terms = terms
        self._version = version
        return self

    def terms(self) -> dict[int, Fraction]:
        """Canonical ``{radicand: coefficient}`` map (radicand 1 is the rational part)."""
        if self._version != RADICALS.version:
            out: dict[int, Fraction] = {}
            for k, c in self._terms.items():
                s, kk = RADICALS.reduce(k)
                out[kk] = out.get(kk, 0) + c * s
            self._terms = {k: c for k, c in out.items() if c}
            self._version = RADICALS.version
        return self._terms

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Surd):
            t = dict(self.terms())
            for k, c in other.terms().items():
                v = t.get(k, 0) + c
                if v:
                    t[k] = v
                else:
                    t.pop(k, None)
            return _collapse(t, RADICALS.version)
        if isinstance(other, (int, Rational)):
            if not other:
                return self
            t = dict(self.terms())
            v = t.get(1, 0) + other
            if v:
                t[1] = Fraction(v)
            else:
                t.pop(1, None)
            return _collapse(t, RADICALS.version)
        if isinstance(other, float):
            raise ScalarModeError("cannot add an exact and an approximate scalar")
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Surd._from_terms({k: -c for k, c in self.terms().items()}, RADICALS.version)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (Surd, int, Rational)):
            return self + (-other)
        if isinstance(other, float):
            raise ScalarModeError("cannot subtract an exact and an approximate scalar")
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return (-self) + other
        if isinstance(other, float):
            raise ScalarModeError("cannot subtract an exact and an approximate scalar")
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Surd):
            t: dict[int, Fraction] = {}
            other_terms = other.terms()
            for k1, c1 in self.terms().items():
                for k2, c2 in other_terms.items():
                    g = math.gcd(k1, k2)
                    k = (k1 // g) * (k2 // g)
                    t[k] = t.get(k, 0) + c1 * c2 * g
            return _collapse({k: c for k, c in t.items() if c}, RADICALS.version)
        if isinstance(other, (int, Rational)):
            if not other:
                return Fraction(0)
            return Surd._from_terms({k: c * other for k, c in self.terms().items()}, RADICALS.version)
        if isinstance(other, float):
            raise ScalarModeError("cannot multiply an exact and an approximate scalar")
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        terms = self.terms()
        if len(terms) == 1:
            (k, c), = terms.items()
            return Surd._from_terms({k: 1 / (c * k)}, RADICALS.version)
        # Rationalize one radical at a time: x = p + q*sqrt(a), x*(p - q*sqrt(a)) = p^2 - a*q^2.
        a = RADICALS.atom_dividing(next(k for k in terms if k != 1))
        conj: dict[int, Fraction] = {}
        for k, c in terms.items():
            conj[k] = -c if k % a == 0 else c
        conj_s = Surd._from_terms(conj, RADICALS.version)
        norm = self * conj_s
        if isinstance(norm, Surd):
            return conj_s * norm.inverse()
        return conj_s * (1 / norm)

    def __truediv__(self, other):
        if isinstance(other, Surd):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division by exact zero")
            return self * (1 / Fraction(other))
        if isinstance(other, float):
            raise ScalarModeError("cannot divide an exact and an approximate scalar")
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.inverse() * other
        if isinstance(other, float):
            raise ScalarModeError("cannot divide an exact and an approximate scalar")
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Fraction(1)
        base = self
        while n:
            if n & 1:
                out = base * out
            n >>= 1
            if n:
                base = base * base
        return out

    # comparisons ------------------------------------------------------------

    def _bounds(self, bits):
        lo = hi = Fraction(0)
        scale = 1 << bits
        for k, c in self.terms().items():
            if k == 1:
                lo += c
                hi += c
                continue
            s = math.isqrt(k << (2 * bits))
            r_lo = Fraction(s, scale)
            r_hi = r_lo if s * s == k << (2 * bits) else Fraction(s + 1, scale)
            if c > 0:
                lo += c * r_lo
                hi += c * r_hi
            else:
                lo += c * r_hi
                hi += c * r_lo
        return lo, hi

    def sign(self) -> int:
        bits = 64
        while True:
            lo, hi = self._bounds(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __float__(self):
        bits = 64
        while True:
            lo, hi = self._bounds(bits)
            if (lo > 0 or hi < 0) and hi - lo <= abs(lo) * Fraction(1, 1 << 60):
                return float((lo + hi) / 2)
            bits *= 2

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, Surd):
            return self.terms() == other.terms()
        if isinstance(other, (int, Rational)):
            return False
        if isinstance(other, float):
            raise ScalarModeError("cannot compare an exact and an approximate scalar")
        return NotImplemented

    def __hash__(self):
        return hash(round(float(self), 9))

    def _cmp(self, other):
        d = self - other
        return d.sign() if isinstance(d, Surd) else (d > 0) - (d < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return True

    def __str__(self):
        return format_exact(self)

    def __repr__(self):
        return f"Surd({format_exact(self)})"


# public helpers --------------------------------------------------------------


def mode_of(x) -> str:
    if isinstance(x, float):
        return APPROX
    if isinstance(x, (Surd, int, Rational)):
        return EXACT
    raise TypeError(f"not a scalar: {x!r}")


def _same_mode(a, b):
    ma, mb = mode_of(a), mode_of(b)
    if ma != mb:
        raise ScalarModeError(f"mode mismatch: {ma} vs {mb}")
    return ma


def scalar_add(a, b):
    _same_mode(a, b)
    return a + b


def scalar_mul(a, b):
    _same_mode(a, b)
    return a * b


def is_zero(x, tol: float = DEFAULT_ZERO_TOL) -> bool:
    """Exact scalars are tested exactly; floats against ``tol``."""
    if isinstance(x, float):
        return abs(x) <= tol
    if isinstance(x, Surd):
        return False
    return x == 0


def zero_regime(x) -> str:
    return "tolerance" if isinstance(x, float) else "exact"


def sqrt_rational(r, mode: str = EXACT):
    """Square root of a positive rational in the requested mode.

    Perfect rational squares come back as ``Fraction``; anything else is a
    one-term ``Surd`` whose radicand is registered in the global base.
    """
    if mode == APPROX:
        r = float(r)
        if r <= 0:
            raise ValueError("square root of a non-positive value")
        return math.sqrt(r)
    if mode != EXACT:
        raise ValueError(f"unknown mode {mode!r}")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("square root of a non-positive value")
    p, q = r.numerator, r.denominator
    sp, sq = math.isqrt(p), math.isqrt(q)
    if sp * sp == p and sq * sq == q:
        return Fraction(sp, sq)
    # sqrt(p/q) = sqrt(p*q)/q
    n = p * q
    RADICALS.include(n)
    c, k = RADICALS.reduce(n)
    if k == 1:
        return Fraction(c, q)
    return Surd._from_terms({k: Fraction(c, q)}, RADICALS.version)


def sqrt_scalar(x):
    """Square root of a non-negative scalar that is rational or a float."""
    if isinstance(x, float):
        return math.sqrt(x)
    if isinstance(x, Surd):
        raise ValueError("square roots of irrational values are not representable")
    if x == 0:
        return Fraction(0)
    return sqrt_rational(x)


def to_float(x) -> float:
    return float(x)


def format_exact(x, max_digits: int | None = None) -> str:
    """``p/q`` for rationals, ``p/q*sqrt(K) + ...`` for surds, ``repr`` for floats.

    With ``max_digits``, values whose integers are longer than that are
    summarized as ``<exact: D digits>`` instead of spelled out.
    """
    if isinstance(x, float):
        return repr(x)
    if max_digits is not None:
        ints = []
        if isinstance(x, Surd):
            for k, c in x.terms().items():
                ints += [k, c.numerator, c.denominator]
        else:
            q = Fraction(x)
            ints = [q.numerator, q.denominator]
        bits = max(abs(i).bit_length() for i in ints)
        if bits * 0.30103 > max_digits:
            return f"<exact: {int(bits * 0.30103) + 1} digits>"
    if isinstance(x, Surd):
        parts = []
        for k in sorted(x.terms()):
            c = x.terms()[k]
            parts.append(str(c) if k == 1 else f"{c}*sqrt({k})")
        return " + ".join(parts)
    return str(Fraction(x))


def zero_of(mode: str):
    return 0.0 if mode == APPROX else Fraction(0)


def one_of(mode: str):
    return 1.0 if mode == APPROX else Fraction(1)


def convert(x, mode: str):
    """Bring a rational (or exact) input into ``mode``."""
    if mode == APPROX:
        return float(x)
    if isinstance(x, float):
        raise ScalarModeError("cannot convert a float into exact mode")
    return x if isinstance(x, Surd) else Fraction(x)
