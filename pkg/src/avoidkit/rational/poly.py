"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Polynomial:
    """Polynomial with exact rational coefficients, stored in ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs = _trim([Fraction(c) for c in coeffs])

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [c])

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(str(c))
            elif d == 1:
                terms.append(f"{c}*x")
            else:
                terms.append(f"{c}*x^{d}")
        return " + ".join(terms).replace("+ -", "- ")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Scalar) -> Polynomial:
        c = Fraction(c)
        return Polynomial([c * a for a in self.coeffs])

    def __call__(self, x: Scalar) -> Fraction:
        return self.eval(x)

    def eval(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self.scale(1 / self.leading)

    def primitive(self) -> Polynomial:
        """Positive rescaling to coprime integer coefficients (signs are kept)."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Polynomial([Fraction(v, g) for v in ints])

    def divmod(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading
        if len(rem) - 1 < dd:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for shift in range(len(rem) - 1 - dd, -1, -1):
            c = rem[shift + dd] / lead
            quot[shift] = c
            if c:
                for i, dc in enumerate(divisor.coeffs):
                    rem[shift + i] -= c * dc
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def gcd(self, other: Polynomial) -> Polynomial:
        """Monic greatest common divisor (zero if both are zero)."""
        a, b = self, other
        while b:
            a, b = b, (a % b).primitive()
        return a.monic()

    def squarefree(self) -> Polynomial:
        """Product of the distinct irreducible factors, made monic."""
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def strip_endpoint_roots(self) -> Polynomial:
        """Remove all factors x and (1 - x); the result has no root at 0 or 1."""
        p = self
        while p and p.coeffs[0] == 0:
            p = Polynomial(p.coeffs[1:])
        one_minus_x = Polynomial([1, -1])
        while p.degree >= 1 and p.eval(1) == 0:
            p = p // one_minus_x
        return p


X = Polynomial.x()
ONE = Polynomial.constant(1)
ZERO = Polynomial()


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_sub(p: Polynomial, q: Polynomial) -> Polynomial:
    return p - q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_scale(p: Polynomial, c: Scalar) -> Polynomial:
    return p.scale(c)


def poly_eval(p: Polynomial, x: Scalar) -> Fraction:
    return p.eval(x)


def poly_equal(p: Polynomial, q: Polynomial) -> bool:
    return p.coeffs == q.coeffs


def bernstein_term(a: int, b: int) -> Polynomial:
    """x^a/a! * (1-x)^b/b!, or the zero polynomial when a < 0 or b < 0."""
    if a < 0 or b < 0:
        return ZERO
    return (X ** a * Polynomial([1, -1]) ** b).scale(Fraction(1, factorial(a) * factorial(b)))


def bernstein_value(a: int, b: int, x: Fraction) -> Fraction:
    """Evaluate :func:`bernstein_term` at ``x`` without building the polynomial."""
    if a < 0 or b < 0:
        return Fraction(0)
    return x ** a * (1 - x) ** b / (factorial(a) * factorial(b))


def matrix_eval(rows: Sequence[Sequence[Polynomial]], x: Scalar) -> list[list[Fraction]]:
    return [[p.eval(x) for p in row] for row in rows]
