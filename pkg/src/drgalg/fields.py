"""Exact scalars: the rationals and simple real number fields Q(a).

An element of Q(a) is stored as its coordinate tuple on the power basis
1, a, ..., a^(m-1).  The field carries one real embedding (a fixed real root
of the defining polynomial) for sign decisions and float conversion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

_PREC_DPS = 60


class NumberField:
    """Q[t]/(f) with f monic irreducible, embedded at a chosen real root."""

    def __init__(self, modulus: Sequence, root=None, name: str = "a"):
        coeffs = tuple(Fraction(c) for c in modulus)
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("modulus must be a monic polynomial of degree >= 1 (low to high)")
        self.modulus = coeffs
        self.degree = len(coeffs) - 1
        self.name = name
        if self.degree == 1:
            root = -coeffs[0]
        if root is None:
            raise ValueError("a real root is required for degree > 1")
        with mpmath.workdps(_PREC_DPS):
            self._root = mpmath.mpf(root) if not isinstance(root, Fraction) else (
                mpmath.mpf(root.numerator) / root.denominator)
        self.root_float = float(self._root)
        self._powers = self._reduction_table()
        red_den = reduce(lcm, (c.denominator for row in self._powers for c in row), 1)
        self.red_den = red_den
        self.red_int = [[int(c * red_den) for c in row] for row in self._powers]

    def _reduction_table(self):
        # coordinates of a^p for p = 0 .. 2m-2
        m = self.degree
        table = []
        cur = [Fraction(0)] * m
        cur[0] = Fraction(1)
        for _ in range(2 * m - 1):
            table.append(tuple(cur))
            lead = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            if lead:
                nxt = [nxt[i] - lead * self.modulus[i] for i in range(m)]
            cur = nxt
        return table

    def power(self, p: int) -> tuple:
        return self._powers[p]

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus and (
            self.degree == 1 or abs(self.root_float - other.root_float) < 1e-9)

    def __hash__(self):
        return hash((self.modulus, round(self.root_float, 9)))

    def __repr__(self):
        if self.is_rational:
            return "QQ"
        return f"NumberField({self.describe()})"

    def describe(self) -> str:
        if self.is_rational:
            return "rationals"
        terms = []
        for k, c in enumerate(self.modulus):
            if c:
                terms.append(f"{c}*{self.name}^{k}" if k else str(c))
        return " + ".join(reversed(terms)) + f" = 0, {self.name} ~ {self.root_float:.15g}"

    # element construction
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def gen(self) -> "FieldElement":
        if self.is_rational:
            return self(-self.modulus[0])
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def from_coeffs(self, coeffs: Iterable) -> "FieldElement":
        c = [Fraction(x) for x in coeffs]
        if len(c) > 2 * self.degree - 1:
            raise ValueError("too many coefficients")
        out = [Fraction(0)] * self.degree
        for p, cp in enumerate(c):
            if cp:
                for j, r in enumerate(self._powers[p]):
                    out[j] += cp * r
        return FieldElement(self, tuple(out))

    def evaluate(self, coeffs: Sequence[Fraction]):
        with mpmath.workdps(_PREC_DPS):
            acc = mpmath.mpf(0)
            for c in reversed(coeffs):
                acc = acc * self._root + mpmath.mpf(c.numerator) / c.denominator
            return acc


QQ = NumberField((0, 1))


class FieldElement:
    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("mixed number fields")
            return other
        if isinstance(other, (int, Rational)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        m = self.field.degree
        if m == 1:
            return FieldElement(self.field, (self.c[0] * o.c[0],))
        prod = [Fraction(0)] * (2 * m - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return self.field.from_coeffs(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        m = self.field.degree
        if m == 1:
            return FieldElement(self.field, (1 / self.c[0],))
        # columns: coordinates of self * a^j; solve for the preimage of 1
        cols = []
        basis = [Fraction(0)] * m
        for j in range(m):
            e = list(basis)
            e[j] = Fraction(1)
            cols.append((self * FieldElement(self.field, tuple(e))).c)
        rows = [[cols[j][i] for j in range(m)] + [Fraction(int(i == 0))] for i in range(m)]
        sol = _solve_fraction_system(rows, m)
        return FieldElement(self.field, tuple(sol))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.c[0]

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.c[0] > 0 else -1
        v = self.field.evaluate(self.c)
        if v == 0:
            raise ArithmeticError("embedding precision exhausted")
        return 1 if v > 0 else -1

    def __float__(self):
        if self.is_rational():
            return float(self.c[0])
        return float(self.field.evaluate(self.c))

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, float) else NotImplemented
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __str__(self):
        if self.is_rational():
            return str(self.c[0])
        name = self.field.name
        parts = []
        for k, c in enumerate(self.c):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = name if k == 1 else f"{name}^{k}"
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FieldElement({self})"


def _solve_fraction_system(rows, n):
    """Gauss-Jordan on an augmented n x (n+1) Fraction system."""
    rows = [list(r) for r in rows]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def rational_reconstruct(a: int, p: int, bound: int | None = None) -> Fraction | None:
    """Recover n/d with |n|, d <= bound from a = n/d mod p (Wang's algorithm)."""
    a %= p
    if bound is None:
        bound = int((p // 2) ** 0.5)
    r0, r1 = p, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)
