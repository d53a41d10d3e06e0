"""Exact arithmetic in the golden field Q(tau), tau = (1 + sqrt 5) / 2.

Every value is a pair of rationals (a, b) standing for a + b*tau.  Products
use tau**2 = tau + 1, so no floating point enters any comparison made here.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

SQRT5 = math.sqrt(5.0)
TAU_FLOAT = (1.0 + SQRT5) / 2.0


class GoldenNumber:
    """Immutable element a + b*tau of Q(tau)."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: Rational | int | str = 0, b: Rational | int | str = 0):
        object.__setattr__(self, "_a", Fraction(a))
        object.__setattr__(self, "_b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("GoldenNumber is immutable")

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @classmethod
    def coerce(cls, x) -> GoldenNumber:
        if isinstance(x, GoldenNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot interpret {type(x).__name__} as a golden-field element")

    # arithmetic

    def __add__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self._a, -self._b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return GoldenNumber(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._a, self._b, o._a, o._b
        return GoldenNumber(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm x * conj(x) = a**2 + a*b - b**2 (a rational)."""
        a, b = self._a, self._b
        return a * a + a * b - b * b

    def inverse(self) -> GoldenNumber:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("golden-field division by zero")
        c = self.conjugate()
        return GoldenNumber(c._a / n, c._b / n)

    def __truediv__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GoldenNumber:
        """Galois conjugate: tau -> 1 - tau."""
        return GoldenNumber(self._a + self._b, -self._b)

    # comparisons

    def __eq__(self, other):
        try:
            o = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def sign(self) -> int:
        """Exact sign of the real number a + b*tau."""
        # a + b*tau = s + u*sqrt5 with s = a + b/2, u = b/2
        s = self._a + self._b / 2
        u = self._b / 2
        if u == 0:
            return (s > 0) - (s < 0)
        if s == 0:
            return (u > 0) - (u < 0)
        if (s > 0) == (u > 0):
            return 1 if s > 0 else -1
        # opposite signs: compare s**2 with 5*u**2
        d = s * s - 5 * u * u
        if d == 0:
            return 0
        dominant = s if d > 0 else u
        return 1 if dominant > 0 else -1

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __float__(self):
        return to_float(self)

    def is_rational(self) -> bool:
        return self._b == 0

    def __repr__(self):
        return f"GoldenNumber({self._a!s}, {self._b!s})"

    def __str__(self):
        return f"{self._a} + {self._b}*tau"


ZERO = GoldenNumber(0, 0)
ONE = GoldenNumber(1, 0)
TAU = GoldenNumber(0, 1)
TAU_CONJ = TAU.conjugate()


def golden_add(x, y) -> GoldenNumber:
    return GoldenNumber.coerce(x) + y


def golden_mul(x, y) -> GoldenNumber:
    return GoldenNumber.coerce(x) * y


def golden_div(x, y) -> GoldenNumber:
    return GoldenNumber.coerce(x) / y


def galois_conjugate(x) -> GoldenNumber:
    return GoldenNumber.coerce(x).conjugate()


def to_float(x) -> float:
    x = GoldenNumber.coerce(x)
    # a and b are combined only after each is rounded once; keeps error within a few ulp
    return float(x.a) + float(x.b) * TAU_FLOAT


_TEXT = re.compile(r"^\s*(-?\d+(?:/\d+)?)\s*\+\s*(-?\d+(?:/\d+)?)\s*\*\s*tau\s*$")


def parse_golden(text: str) -> GoldenNumber:
    """Inverse of ``str``: parse ``"a + b*tau"`` with integer or fraction parts."""
    m = _TEXT.match(text)
    if not m:
        raise ValueError(f"not a golden-field literal: {text!r}")
    return GoldenNumber(Fraction(m.group(1)), Fraction(m.group(2)))


class ScaledGoldenMatrix:
    """Matrix ``entries / sqrt(norm_squared)`` with golden-field entries.

    ``norm_squared`` is kept separate so that frames such as the 6D reduction
    matrix, whose normalisation 1/sqrt(2(2+tau)) lies outside Q(tau), can still
    be multiplied and checked exactly.
    """

    __slots__ = ("entries", "norm_squared", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable], norm_squared=1):
        rows = tuple(tuple(GoldenNumber.coerce(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        ns = GoldenNumber.coerce(norm_squared)
        if ns.sign() <= 0:
            raise ValueError("norm_squared must be strictly positive")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "norm_squared", ns)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledGoldenMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> ScaledGoldenMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], 1)

    def __eq__(self, other):
        if not isinstance(other, ScaledGoldenMatrix):
            return NotImplemented
        # compare entries/sqrt(ns) via squared ratio to stay in Q(tau)
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            x * x * other.norm_squared == y * y * self.norm_squared
            and (x.sign() == y.sign())
            for rx, ry in zip(self.entries, other.entries)
            for x, y in zip(rx, ry)
        )

    def __hash__(self):
        return hash((self.entries, self.norm_squared))

    def transpose(self) -> ScaledGoldenMatrix:
        return ScaledGoldenMatrix(zip(*self.entries), self.norm_squared)

    @property
    def T(self) -> ScaledGoldenMatrix:
        return self.transpose()

    def __matmul__(self, other: ScaledGoldenMatrix) -> ScaledGoldenMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries))
        prod = [[_dot(r, c) for c in cols] for r in self.entries]
        return ScaledGoldenMatrix(prod, self.norm_squared * other.norm_squared)

    def gram(self) -> list[list[GoldenNumber]]:
        """Unscaled entries @ entries.T."""
        return [[_dot(r, s) for s in self.entries] for r in self.entries]

    def normalized(self) -> ScaledGoldenMatrix:
        """Same matrix with norm_squared absorbed, when its square root lies in Q(tau)."""
        root = golden_sqrt(self.norm_squared)
        if root is None:
            raise ValueError(f"sqrt({self.norm_squared}) is not in Q(tau)")
        return ScaledGoldenMatrix([[x / root for x in r] for r in self.entries], 1)

    def exact_entries(self) -> list[list[GoldenNumber]]:
        return self.normalized().entries

    def to_numpy(self):
        import numpy as np

        scale = math.sqrt(to_float(self.norm_squared))
        return np.array([[to_float(x) for x in r] for r in self.entries]) / scale

    def block(self, rows: slice, cols: slice) -> ScaledGoldenMatrix:
        return ScaledGoldenMatrix([r[cols] for r in self.entries[rows]], self.norm_squared)

    def __repr__(self):
        return f"ScaledGoldenMatrix({self.rows}x{self.cols}, norm_squared={self.norm_squared})"


def _dot(r: Sequence[GoldenNumber], c: Sequence[GoldenNumber]) -> GoldenNumber:
    a = Fraction(0)
    b = Fraction(0)
    for x, y in zip(r, c):
        if not x or not y:
            continue
        p = x * y
        a += p.a
        b += p.b
    return GoldenNumber(a, b)


def golden_sqrt(x) -> GoldenNumber | None:
    """Return y in Q(tau) with y*y == x and y >= 0, or None if there is none."""
    x = GoldenNumber.coerce(x)
    if x == 0:
        return ZERO
    if x.sign() < 0:
        return None
    # y = p + q*tau with N(y) = +-sqrt(N(x)), trace(y)^2 = trace(x) + 2 N(y)
    # and 5 q^2 = trace(x) - 2 N(y)
    rn = _rational_sqrt(x.norm())
    if rn is None:
        return None
    tr = 2 * x.a + x.b
    for ny in (rn, -rn):
        s = _rational_sqrt(tr + 2 * ny)
        q5 = _rational_sqrt((tr - 2 * ny) / 5)
        if s is None or q5 is None:
            continue
        for ss in (s, -s):
            for q in (q5, -q5):
                y = GoldenNumber((ss - q) / 2, q)
                if y * y == x and y.sign() >= 0:
                    return y
    return None


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def frame_check(m: ScaledGoldenMatrix) -> bool:
    """True iff entries @ entries.T == norm_squared * I exactly."""
    if m.rows != m.cols:
        raise ValueError("frame_check needs a square matrix")
    g = m.gram()
    ns = m.norm_squared
    return all(
        g[i][j] == (ns if i == j else ZERO) for i in range(m.rows) for j in range(m.cols)
    )


def golden_matrix(rows: Iterable[Iterable], scale=1) -> tuple[tuple[GoldenNumber, ...], ...]:
    """Plain tuple-of-tuples golden matrix with every entry multiplied by ``scale``."""
    s = GoldenNumber.coerce(scale)
    return tuple(tuple(GoldenNumber.coerce(x) * s for x in r) for r in rows)


def matmul(x, y):
    """Product of two tuple-of-tuples golden matrices."""
    cols = list(zip(*y))
    return tuple(tuple(_dot(r, c) for c in cols) for r in x)


def transpose(x):
    return tuple(zip(*x))


def to_numpy(x):
    import numpy as np

    return np.array([[to_float(v) for v in r] for r in x], dtype=float)
