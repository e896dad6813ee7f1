"""Exact scalars and small dense linear algebra over the rationals.

``ExactScalar`` is :class:`fractions.Fraction` (always reduced, positive
denominator). ``RadicalScalar`` holds ``q*sqrt(g)`` values, which is what
lower-dimensional contents of rational polytopes look like.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational

from .errors import SingularMatrix, SpecError

ExactScalar = Fraction

_SMALL_PRIMES = [p for p in range(2, 1000) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def _square_split(m: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``m == s*s*r`` and ``r`` squarefree."""
    if m < 0:
        raise ValueError("negative radicand")
    if m in (0, 1):
        return 1, m
    s, r = 1, 1
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            s *= p ** (e // 2)
            if e % 2:
                r *= p
    if m > 1:
        root = math.isqrt(m)
        if root * root == m:
            s *= root
        elif m < 1000**3:
            # every prime factor is > 1000, so m is p, p*q or p*p
            r *= m
        else:
            from sympy import factorint

            for p, e in factorint(m).items():
                s *= p ** (e // 2)
                if e % 2:
                    r *= p
    return s, r


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class IncommensurableRadicals(ArithmeticError):
    """Raised when adding q1*sqrt(g1) + q2*sqrt(g2) with g1 != g2."""


class RadicalScalar:
    """The real number ``q * sqrt(g)`` with rational ``q`` and integer squarefree ``g``.

    Rational ``g`` inputs are normalised (``sqrt(a/b) = sqrt(a*b)/b``), so two
    equal values always have identical ``(q, g)``.
    """

    __slots__ = ("q", "g")

    def __init__(self, q=1, g=1):
        q = as_fraction(q)
        g = as_fraction(g)
        if g < 0:
            raise ValueError("radicand must be non-negative")
        if q == 0 or g == 0:
            self.q, self.g = Fraction(0), 1
            return
        # sqrt(a/b) = sqrt(a*b) / b
        q = q / g.denominator
        s, r = _square_split(g.numerator * g.denominator)
        self.q = q * s
        self.g = r

    @classmethod
    def sqrt(cls, x) -> "RadicalScalar":
        return cls(1, x)

    @property
    def is_rational(self) -> bool:
        return self.g == 1

    def to_fraction(self) -> Fraction:
        if self.g != 1:
            raise ValueError(f"{self} is irrational")
        return self.q

    def square(self) -> Fraction:
        return self.q * self.q * self.g

    def sign(self) -> int:
        return (self.q > 0) - (self.q < 0)

    def __float__(self):
        return float(self.q) * math.sqrt(self.g)

    def __repr__(self):
        return f"RadicalScalar({self.q}, {self.g})"

    def __str__(self):
        if self.g == 1:
            return format_rational(self.q)
        return f"{format_rational(self.q)}*sqrt({self.g})"

    # arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, RadicalScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return RadicalScalar(other, 1)
        return None

    def __neg__(self):
        return RadicalScalar(-self.q, self.g)

    def __abs__(self):
        return RadicalScalar(abs(self.q), self.g)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.q == 0:
            return self
        if self.q == 0:
            return o
        if o.g != self.g:
            raise IncommensurableRadicals(f"{self} + {o}")
        return RadicalScalar(self.q + o.q, self.g)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RadicalScalar(self.q * o.q, self.g * o.g)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.q == 0:
            raise ZeroDivisionError("division by zero radical")
        # q1 sqrt(g1) / (q2 sqrt(g2)) = q1/(q2 g2) * sqrt(g1 g2)
        return RadicalScalar(self.q / (o.q * o.g), self.g * o.g)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    # comparison --------------------------------------------------------
    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare RadicalScalar with {type(other).__name__}")
        s1, s2 = self.sign(), o.sign()
        if s1 != s2:
            return (s1 > s2) - (s1 < s2)
        if s1 == 0:
            return 0
        a, b = self.square(), o.square()
        c = (a > b) - (a < b)
        return c if s1 > 0 else -c

    def __eq__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        if self.g == 1:
            return hash(self.q)
        return hash((self.q, self.g))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


def exact_sqrt(x) -> RadicalScalar:
    return RadicalScalar(1, x)


def radical_sum(terms) -> RadicalScalar | None:
    """Sum RadicalScalar/rational terms exactly if they are commensurable.

    Returns ``None`` when two nonzero terms carry different radicands.
    """
    total = RadicalScalar(0)
    try:
        for t in terms:
            total = total + t
    except IncommensurableRadicals:
        return None
    return total


# --------------------------------------------------------------------------
# parsing / formatting


def parse_rational(value, field=None) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a JSON integer into a Fraction."""
    if isinstance(value, bool):
        raise SpecError(f"expected a rational, got boolean {value!r}", field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            num, sep, den = text.partition("/")
            if not sep:
                return Fraction(int(num))
            return Fraction(int(num), int(den))
        except ZeroDivisionError:
            raise SpecError(f"zero denominator in {value!r}", field) from None
        except ValueError:
            raise SpecError(f"malformed rational {value!r}", field) from None
    raise SpecError(f"expected a rational string 'p/q', got {value!r}", field)


def format_rational(x) -> str:
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x):
    """JSON-ready rendering: 'p/q', 'q*sqrt(g)' or a float."""
    if isinstance(x, RadicalScalar):
        return str(x)
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    return float(x)


# --------------------------------------------------------------------------
# vectors and matrices (tuples of Fractions / ints)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def norm_sq(u):
    return sum(a * a for a in u)


def scale(lam, u):
    return tuple(lam * a for a in u)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def lcm_denominators(values) -> int:
    return reduce(math.lcm, (as_fraction(v).denominator for v in values), 1)


def det_int(rows) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - a * rk[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def det(rows) -> Fraction:
    """Exact determinant of a square rational matrix."""
    rows = [tuple(as_fraction(x) for x in r) for r in rows]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    dens = [lcm_denominators(r) for r in rows]
    ints = [[int(x * d) for x in r] for r, d in zip(rows, dens)]
    return Fraction(det_int(ints), math.prod(dens))


def rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot_columns)."""
    m = [[as_fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Rational basis (as primitive integer tuples) of {x : rows @ x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(m, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def primitive(v) -> tuple[int, ...]:
    """Scale a rational vector to the integer vector with content gcd 1 (same direction)."""
    v = [as_fraction(x) for x in v]
    d = lcm_denominators(v)
    ints = [int(x * d) for x in v]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def canonical_direction(v) -> tuple[int, ...]:
    """Primitive integer vector spanning the same line, first nonzero coordinate positive."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p


def solve(a, b):
    """Solve the square system ``a @ x = b`` exactly. ``b`` may be a vector or matrix (list of rows)."""
    n = len(a)
    vector = bool(b) and not isinstance(b[0], (list, tuple))
    rhs = [[as_fraction(x)] for x in b] if vector else [[as_fraction(x) for x in r] for r in b]
    aug = [[as_fraction(x) for x in a[i]] + rhs[i] for i in range(n)]
    m, pivots = rref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    sol = [row[n:] for row in m[:n]]
    if vector:
        return [r[0] for r in sol]
    return sol


def inverse(a):
    n = len(a)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return solve(a, ident)


def transpose(a):
    return [list(col) for col in zip(*a)]


def matvec(a, x):
    return tuple(dot(row, x) for row in a)


def gram(basis):
    return [[dot(u, v) for v in basis] for u in basis]
