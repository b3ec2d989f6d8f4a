"""Exact rational arithmetic and small linear algebra.

Rationals are :class:`fractions.Fraction`, which is already canonical
(reduced, positive denominator) after every operation.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RationalMatrix",
    "ShapeError",
    "as_rational",
    "parse_rational",
    "format_rational",
    "rat_arith",
    "det",
    "solve3",
]


class ShapeError(ValueError):
    """Matrix has the wrong shape for the requested operation."""


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; floats and decimals are rejected."""
    s = s.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except ValueError:
        raise ValueError(f"not a rational literal: {s!r}") from None


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat_arith(a, b, op: str):
    """Apply ``op`` to two rationals.

    ``cmp`` returns -1, 0 or 1.  Division by zero raises
    :class:`ZeroDivisionError`.
    """
    a, b = as_rational(a), as_rational(b)
    if op == "cmp":
        return (a > b) - (a < b)
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(as_rational(x) for x in row) for row in entries)
        if not rows:
            raise ShapeError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        self._rows = rows
        self.rows = len(rows)
        self.cols = ncols

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def entries(self) -> tuple:
        return self._rows

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows)
        return f"RationalMatrix([{body}])"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._rows))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = list(zip(*other._rows))
        return RationalMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows]
        )

    def scale(self, c) -> "RationalMatrix":
        c = as_rational(c)
        return RationalMatrix([[c * x for x in r] for r in self._rows])

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def leading_minor(self, k: int) -> Fraction:
        return det(RationalMatrix([r[:k] for r in self._rows[:k]]))

    def to_json(self) -> list:
        return [[format_rational(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        return cls([[as_rational(x) for x in r] for r in data])


def _bareiss(a: list) -> int:
    """Fraction-free determinant of an integer matrix (list of lists, consumed)."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _gauss_det(a: list) -> Fraction:
    n = len(a)
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        akk = a[k][k]
        result *= akk
        for i in range(k + 1, n):
            f = a[i][k] / akk
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return result


def det(m) -> Fraction:
    """Exact determinant.

    Integer input goes through Bareiss elimination; anything with a
    proper fraction falls back to rational Gaussian elimination.
    """
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix(m)
    if not m.is_square:
        raise ShapeError(f"determinant of a {m.rows}x{m.cols} matrix")
    if m.is_integral():
        return Fraction(_bareiss([[int(x) for x in r] for r in m.entries]))
    return _gauss_det([list(r) for r in m.entries])


def _det3(a):
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def solve3(a: Sequence[Sequence], b: Sequence, eps: float = 1e-12):
    """Solve a 3x3 system by Cramer's rule.

    Exact (Fraction) when every input is an int/Fraction, float otherwise.
    Returns ``None`` when the system has no unique solution; for float
    input "singular" means ``|det| <= eps * (max |a_ij|)**3``.
    """
    if len(a) != 3 or any(len(r) != 3 for r in a) or len(b) != 3:
        raise ShapeError("solve3 needs a 3x3 matrix and a 3-vector")
    exact = all(isinstance(x, (int, Fraction)) for r in a for x in r) and all(
        isinstance(x, (int, Fraction)) for x in b
    )
    if exact:
        a = [[Fraction(x) for x in r] for r in a]
        b = [Fraction(x) for x in b]
    else:
        a = [[float(x) for x in r] for r in a]
        b = [float(x) for x in b]
    d = _det3(a)
    if exact:
        if d == 0:
            return None
    else:
        scale = max(abs(x) for r in a for x in r)
        if scale == 0 or abs(d) <= eps * scale**3:
            return None
    out = []
    for k in range(3):
        ak = [[b[i] if j == k else a[i][j] for j in range(3)] for i in range(3)]
        out.append(_det3(ak) / d)
    return tuple(out)
