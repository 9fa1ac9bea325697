"""Sturm-sequence real-root isolation and exact real algebraic points."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from .poly import Polynomial


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """Sturm chain of the square-free part of ``p``."""
    f = p.squarefree()
    seq = [f, f.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        # positive rescaling keeps sign variations intact
        seq.append(-(r.primitive()) if r else r)
    return [s for s in seq if s]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: list[Polynomial], x: Fraction) -> int:
    count = 0
    prev = 0
    for s in seq:
        v = _sign(s.eval(x))
        if v == 0:
            continue
        if prev and v != prev:
            count += 1
        prev = v
    return count


def count_roots(p: Polynomial, a: Fraction, b: Fraction, seq: list[Polynomial] | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (a, b]."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if seq is None:
        seq = sturm_sequence(p)
    return sign_variations(seq, a) - sign_variations(seq, b)


def isolate_roots(p: Polynomial, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the distinct real roots of ``p`` in the open interval (lo, hi).

    Each returned pair ``(a, b)`` either has ``a == b`` (the root is exactly
    the rational ``a``) or satisfies ``a < b`` with exactly one root in the
    open interval (a, b) and no root at either end. Intervals are sorted and
    pairwise disjoint.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    f = p.squarefree()
    if f.degree < 1:
        return []
    seq = sturm_sequence(f)
    out: list[tuple[Fraction, Fraction]] = []

    def roots_open(a: Fraction, b: Fraction) -> int:
        n = sign_variations(seq, a) - sign_variations(seq, b)
        return n - (1 if f.eval(b) == 0 else 0)

    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = roots_open(a, b)
        if n == 0:
            continue
        if n == 1 and f.eval(a) != 0 and f.eval(b) != 0:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if f.eval(mid) == 0:
            out.append((mid, mid))
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


@total_ordering
class RealRoot:
    """A real algebraic number: the unique root of a square-free ``poly`` in (lo, hi).

    Rational values are stored with ``lo == hi`` and ``poly`` equal to
    ``x - value``.
    """

    __slots__ = ("poly", "lo", "hi", "isolating")

    def __init__(self, poly: Polynomial, lo: Fraction, hi: Fraction):
        self.poly = poly.squarefree()
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self.isolating = (self.lo, self.hi)
        if self.lo == self.hi:
            self.poly = Polynomial([-self.lo, 1])

    @classmethod
    def rational(cls, value: Fraction) -> RealRoot:
        value = Fraction(value)
        return cls(Polynomial([-value, 1]), value, value)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational algebraic number has no exact rational value")
        return self.lo

    def refine(self) -> None:
        """Halve the isolating interval (may discover that the root is rational)."""
        if self.is_rational:
            return
        mid = (self.lo + self.hi) / 2
        fm = self.poly.eval(mid)
        if fm == 0:
            self.lo = self.hi = mid
            self.poly = Polynomial([-mid, 1])
            return
        if _sign(self.poly.eval(self.lo)) != _sign(fm):
            self.hi = mid
        else:
            self.lo = mid

    def try_rational(self, max_den: int = 10 ** 6) -> bool:
        """Detect a rational root with denominator <= max_den.

        Distinct such fractions are at least 1/max_den^2 apart, so once the
        interval is narrower than half that the nearest one to the midpoint
        is the only candidate.
        """
        if self.is_rational:
            return True
        width = Fraction(1, 2 * max_den * max_den)
        while not self.is_rational and self.hi - self.lo >= width:
            self.refine()
        if self.is_rational:
            return True
        cand = ((self.lo + self.hi) / 2).limit_denominator(max_den)
        if self.lo < cand < self.hi and self.poly.eval(cand) == 0:
            self.lo = self.hi = cand
            self.poly = Polynomial([-cand, 1])
            return True
        return False

    def sign_of(self, q: Polynomial) -> int:
        """Exact sign of ``q`` evaluated at this number."""
        if q.is_zero():
            return 0
        if self.is_rational:
            return _sign(q.eval(self.lo))
        g = self.poly.gcd(q)
        # g divides the square-free poly, so it vanishes here iff it changes sign on the interval
        if g.degree >= 1 and _sign(g.eval(self.lo)) != _sign(g.eval(self.hi)):
            return 0
        seq = sturm_sequence(q)
        while True:
            if count_roots(q, self.lo, self.hi, seq) == 0:
                return _sign(q.eval(self.hi))
            self.refine()
            if self.is_rational:
                return _sign(q.eval(self.lo))

    def _equal(self, other: RealRoot) -> bool:
        if self.is_rational:
            return other.sign_of(Polynomial([-self.lo, 1])) == 0
        if other.is_rational:
            return self.sign_of(Polynomial([-other.lo, 1])) == 0
        a, b = max(self.lo, other.lo), min(self.hi, other.hi)
        if a >= b:
            return False
        # any common root inside both isolating intervals is the number itself
        g = self.poly.gcd(other.poly)
        if g.degree < 1:
            return False
        return count_roots(g, a, b) - (1 if g.eval(b) == 0 else 0) >= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, RealRoot):
            return NotImplemented
        return self._equal(other)

    __hash__ = None  # mutable interval; equality is value-based

    def __lt__(self, other: RealRoot) -> bool:
        if self._equal(other):
            return False
        while True:
            if self.hi <= other.lo:
                return True
            if other.hi <= self.lo:
                return False
            if self.hi - self.lo >= other.hi - other.lo:
                self.refine()
            else:
                other.refine()

    def approx(self, tol: Fraction = Fraction(1, 2 ** 60)) -> float:
        while not self.is_rational and self.hi - self.lo > tol:
            self.refine()
        return float((self.lo + self.hi) / 2)

    def describe(self) -> str:
        if self.is_rational:
            return str(self.lo)
        lo, hi = self.isolating
        return f"root of {self.poly.primitive()} in ({lo}, {hi}) ~ {self.approx():.9f}"

    def __repr__(self) -> str:
        return f"RealRoot({self.describe()})"
