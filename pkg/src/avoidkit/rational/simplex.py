"""Exact tableau simplex over the rationals.

Two entry points share one sparse tableau: :func:`solve_feasibility` decides
``A p = b, p >= 0`` by a phase-one run and returns either a solution or a
Farkas certificate, and :func:`lp_maximize` solves bounded packing-type LPs.
Nothing here touches floating point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2

log = logging.getLogger(__name__)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"

# consecutive degenerate pivots tolerated before lp_maximize falls back to Bland
DEGENERATE_STREAK = 25


@dataclass(frozen=True)
class FeasibilityOutcome:
    status: str
    solution: Optional[tuple[Fraction, ...]] = None
    certificate: Optional[tuple[Fraction, ...]] = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def to_json(self) -> dict:
        from ..serialize import frac_str

        out = {"status": self.status}
        if self.solution is not None:
            out["solution"] = [frac_str(v) for v in self.solution]
        if self.certificate is not None:
            out["certificate"] = [frac_str(v) for v in self.certificate]
        return out


@dataclass(frozen=True)
class LPResult:
    optimum: Fraction
    solution: tuple[Fraction, ...]
    pivots: int


class _Tableau:
    """Sparse dictionary-form tableau for ``max c.z  s.t.  M z = rhs, z >= 0``.

    ``obj`` holds the reduced costs ``c_j - c_B B^-1 M_j`` of nonbasic columns.
    """

    def __init__(self, rows, rhs, basis, obj, value, ncols):
        self.rows: list[dict[int, Fraction]] = rows
        self.rhs: list[Fraction] = rhs
        self.basis: list[int] = basis
        self.obj: dict[int, Fraction] = obj
        self.value: Fraction = value
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        if inv != 1:
            for j in row:
                row[j] *= inv
            self.rhs[r] *= inv
        rr = self.rhs[r]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other.get(c)
            if not f:
                continue
            for j, v in row.items():
                nv = other.get(j, 0) - f * v
                if nv:
                    other[j] = nv
                else:
                    other.pop(j, None)
            self.rhs[i] -= f * rr
        f = self.obj.get(c)
        if f:
            for j, v in row.items():
                nv = self.obj.get(j, 0) - f * v
                if nv:
                    self.obj[j] = nv
                else:
                    self.obj.pop(j, None)
            self.value += f * rr
        self.basis[r] = c
        self.pivots += 1

    def _entering(self, bland: bool, allowed) -> Optional[int]:
        best = None
        best_val = Fraction(0)
        for j, d in self.obj.items():
            if d <= 0 or (allowed is not None and j not in allowed):
                continue
            if bland:
                if best is None or j < best:
                    best = j
            elif d > best_val or (d == best_val and best is not None and j < best):
                best, best_val = j, d
        return best

    def _leaving(self, c: int) -> Optional[int]:
        best_r = None
        best_ratio = None
        for i, row in enumerate(self.rows):
            a = row.get(c)
            if a is None or a <= 0:
                continue
            ratio = self.rhs[i] / a
            if (best_ratio is None or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best_r])):
                best_r, best_ratio = i, ratio
        return best_r

    def run(self, bland: bool = True, allowed=None) -> str:
        streak = 0
        while True:
            c = self._entering(bland, allowed)
            if c is None:
                return "optimal"
            r = self._leaving(c)
            if r is None:
                return "unbounded"
            if self.rhs[r] == 0:
                streak += 1
                if streak > DEGENERATE_STREAK and not bland:
                    log.debug("switching to Bland's rule after %d degenerate pivots", streak)
                    bland = True
            else:
                streak = 0
            self.pivot(r, c)


def _as_fraction_matrix(A) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in A]


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def solve_feasibility(A: Sequence[Sequence], b: Sequence) -> FeasibilityOutcome:
    """Decide whether ``A p = b`` has a solution with ``p >= 0``.

    Phase-one simplex with Bland's rule. On infeasibility the phase-one dual
    ``y`` is returned as certificate: ``y^T A >= 0`` and ``y^T b < 0``.
    """
    A = _as_fraction_matrix(A)
    b = [Fraction(v) for v in b]
    nrows = len(A)
    if nrows != len(b):
        raise ValueError("row count of A and length of b differ")
    ncols = len(A[0]) if nrows else 0
    if ncols < 1:
        raise ValueError("need at least one column")
    signs = [(-1 if bi < 0 else 1) for bi in b]

    rows = []
    rhs = []
    for i in range(nrows):
        s = signs[i]
        row = {j: s * v for j, v in enumerate(A[i]) if v}
        row[ncols + i] = Fraction(1)
        rows.append(row)
        rhs.append(s * b[i])
    basis = [ncols + i for i in range(nrows)]
    obj: dict[int, Fraction] = {}
    for row in rows:
        for j, v in row.items():
            if j < ncols:
                obj[j] = obj.get(j, 0) + v
    obj = {j: v for j, v in obj.items() if v}
    value = -sum(rhs, Fraction(0))
    tab = _Tableau(rows, rhs, basis, obj, value, ncols + nrows)
    tab.run(bland=True)

    if tab.value == 0:
        sol = [Fraction(0)] * ncols
        for i, j in enumerate(tab.basis):
            if j < ncols:
                sol[j] = tab.rhs[i]
        return FeasibilityOutcome(FEASIBLE, solution=tuple(sol))

    # reduced cost of artificial i is -1 - y_i
    y = [-1 - tab.obj.get(ncols + i, Fraction(0)) for i in range(nrows)]
    cert = tuple(signs[i] * y[i] for i in range(nrows))
    return FeasibilityOutcome(INFEASIBLE, certificate=cert)


def verify_outcome(A: Sequence[Sequence], b: Sequence, outcome: FeasibilityOutcome) -> bool:
    """Independent exact check of a solution or Farkas certificate."""
    A = _as_fraction_matrix(A)
    b = [Fraction(v) for v in b]
    ncols = len(A[0]) if A else 0
    if outcome.status == FEASIBLE:
        p = outcome.solution
        if p is None or len(p) != ncols or any(v < 0 for v in p):
            return False
        return all(sum((a * v for a, v in zip(row, p)), Fraction(0)) == bi for row, bi in zip(A, b))
    if outcome.status == INFEASIBLE:
        y = outcome.certificate
        if y is None or len(y) != len(A):
            return False
        for j in range(ncols):
            if sum((y[i] * A[i][j] for i in range(len(A))), Fraction(0)) < 0:
                return False
        return sum((yi * bi for yi, bi in zip(y, b)), Fraction(0)) < 0
    return False


def lp_maximize(c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence, upper: Optional[Sequence] = None) -> LPResult:
    """Exact optimum of ``max c.phi`` subject to ``A_ub phi <= b_ub`` and ``0 <= phi <= upper``.

    ``upper`` defaults to all ones. ``b_ub`` must be nonnegative so that
    ``phi = 0`` is a starting vertex. Upper bounds already implied by a
    nonnegative row are not added as explicit constraints.
    """
    c = [Fraction(v) for v in c]
    nvars = len(c)
    A = [list(row) for row in A_ub]
    b = [Fraction(v) for v in b_ub]
    if any(bi < 0 for bi in b):
        raise ValueError("lp_maximize needs b_ub >= 0 (phi = 0 must be feasible)")
    if upper is None:
        upper = [Fraction(1)] * nvars
    upper = [None if u is None else Fraction(u) for u in upper]

    # the tableau runs on gmpy2 rationals (exact, much faster than Fraction)
    rows: list[dict] = []
    rhs: list = []
    implied = [False] * nvars
    for row, bi in zip(A, b):
        d = {j: gmpy2.mpq(Fraction(v)) for j, v in enumerate(row) if v}
        rows.append(d)
        rhs.append(gmpy2.mpq(bi))
        if all(v > 0 for v in d.values()):
            for j, v in d.items():
                if upper[j] is not None and bi / _to_fraction(v) <= upper[j]:
                    implied[j] = True
    for j, u in enumerate(upper):
        if u is not None and not implied[j]:
            rows.append({j: gmpy2.mpq(1)})
            rhs.append(gmpy2.mpq(u))
    nrows = len(rows)
    for i, row in enumerate(rows):
        row[nvars + i] = gmpy2.mpq(1)
    basis = [nvars + i for i in range(nrows)]
    obj = {j: gmpy2.mpq(v) for j, v in enumerate(c) if v}
    tab = _Tableau(rows, rhs, basis, obj, gmpy2.mpq(0), nvars + nrows)
    status = tab.run(bland=False)
    if status == "unbounded":
        raise ValueError("LP is unbounded")
    sol = [Fraction(0)] * nvars
    for i, j in enumerate(tab.basis):
        if j < nvars:
            sol[j] = _to_fraction(tab.rhs[i])
    return LPResult(optimum=_to_fraction(tab.value), solution=tuple(sol), pivots=tab.pivots)
