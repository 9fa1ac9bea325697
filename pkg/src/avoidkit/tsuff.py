"""The three-equation parametric system behind avoidability of F(S, k).

For a degree set S the unknowns are ``p_i`` for ``i`` in ``{0..k-1} \\ S`` and
column ``i`` of the coefficient matrix is

    row 1:  x^(i-2)/(i-2)! * (1-x)^(k-1-i)/(k-1-i)!
    row 2:  x^i/i!         * (1-x)^(k-3-i)/(k-3-i)!
    row 3:  x^(i-1)/(i-1)! * (1-x)^(k-2-i)/(k-2-i)!

with ``1/m! = 0`` for negative ``m``; every right-hand side is 1. F(S, k) is
avoidable when this system has a nonnegative solution for all ``x`` in (0, 1).
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Optional

from .rational.linalg import cramer_numerators, det
from .rational.poly import ZERO, Polynomial, bernstein_term, bernstein_value
from .rational.simplex import FEASIBLE, INFEASIBLE, FeasibilityOutcome, solve_feasibility
from .rational.sturm import RealRoot, isolate_roots
from .serialize import frac_str, set_str

log = logging.getLogger(__name__)

MIN_K, MAX_K = 3, 25
MAX_TABLE_K = 12
DEFAULT_DENOMINATOR = 1000
RHS = (Fraction(1), Fraction(1), Fraction(1))

GRID = "grid"
EXACT = "exact"


def column_exponents(k: int, i: int) -> tuple[tuple[int, int], ...]:
    """(power of x, power of 1-x) for the three rows of column i."""
    return ((i - 2, k - 1 - i), (i, k - 3 - i), (i - 1, k - 2 - i))


@lru_cache(maxsize=1 << 16)
def column_at(k: int, i: int, x: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(bernstein_value(a, b, x) for a, b in column_exponents(k, i))


@dataclass(frozen=True)
class ParametricSystem:
    k: int
    S: frozenset[int]
    indices: tuple[int, ...]
    rows: tuple[tuple[Polynomial, ...], ...]

    @property
    def m(self) -> int:
        return len(self.indices)

    def matrix_at(self, x: Fraction) -> list[list[Fraction]]:
        cols = [column_at(self.k, i, x) for i in self.indices]
        return [[c[r] for c in cols] for r in range(3)]

    def describe(self) -> list[str]:
        lines = []
        for row in self.rows:
            terms = [f"({p})*p{i}" for p, i in zip(row, self.indices) if p]
            lines.append(" + ".join(terms) + " = 1")
        return lines


def build_system(k: int, S: Iterable[int]) -> ParametricSystem:
    S = frozenset(S)
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must lie in [{MIN_K}, {MAX_K}]")
    if any(not 0 <= d < k for d in S):
        raise ValueError(f"S must be a subset of 0..{k - 1}")
    indices = tuple(i for i in range(k) if i not in S)
    if not indices:
        raise ValueError("S = {0,...,k-1} leaves no variables")
    rows = tuple(
        tuple(bernstein_term(*column_exponents(k, i)[r]) for i in indices) for r in range(3)
    )
    return ParametricSystem(k, S, indices, rows)


# -- per-point feasibility ----------------------------------------------------

class _PointSolver:
    """Exact per-point solver that first retries recently successful bases.

    A basis hit yields a genuine nonnegative solution, so outcomes are
    identical in kind to a cold simplex run; misses fall through to it.
    """

    def __init__(self, system: ParametricSystem, memory: int = 6):
        self.system = system
        self.bases: list[tuple[int, int, int]] = []
        self.memory = memory

    def solve(self, x: Fraction) -> FeasibilityOutcome:
        A = self.system.matrix_at(x)
        for basis in self.bases:
            sol = _basis_solution(A, basis)
            if sol is not None:
                if basis is not self.bases[0]:
                    self.bases.remove(basis)
                    self.bases.insert(0, basis)
                return FeasibilityOutcome(FEASIBLE, solution=sol)
        out = solve_feasibility(A, RHS)
        if out.feasible:
            support = tuple(j for j, v in enumerate(out.solution) if v)
            if len(support) == 3 and support not in self.bases:
                self.bases.insert(0, support)
                del self.bases[self.memory:]
        return out


def _basis_solution(A, basis) -> Optional[tuple[Fraction, ...]]:
    """Nonnegative solution of the 3x3 system on ``basis`` with all-ones rhs, if any."""
    (a, b, c), (d, e, f), (g, h, i) = ([A[r][j] for j in basis] for r in range(3))
    # cofactors of the matrix; the solution is adj(M) (1,1,1) / det
    c00, c01, c02 = e * i - f * h, f * g - d * i, d * h - e * g
    det = a * c00 + b * c01 + c * c02
    if det == 0:
        return None
    c10, c11, c12 = c * h - b * i, a * i - c * g, b * g - a * h
    c20, c21, c22 = b * f - c * e, c * d - a * f, a * e - b * d
    vals = [(c00 + c10 + c20) / det, (c01 + c11 + c21) / det, (c02 + c12 + c22) / det]
    if any(v < 0 for v in vals):
        return None
    sol = [Fraction(0)] * len(A[0])
    for j, v in zip(basis, vals):
        sol[j] = v
    return tuple(sol)


def check_at(system: ParametricSystem, x) -> FeasibilityOutcome:
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("x must lie strictly between 0 and 1")
    return solve_feasibility(system.matrix_at(x), RHS)


# -- reports ------------------------------------------------------------------

@dataclass
class Segment:
    """A maximal piece of (0, 1) with constant feasibility in exact mode."""

    lo: RealRoot
    hi: RealRoot
    lo_closed: bool
    hi_closed: bool
    feasible: bool
    evidence: list = field(default_factory=list)

    def describe(self) -> str:
        lo = "0" if self.lo.is_rational and self.lo.value == 0 else self.lo.describe()
        hi = "1" if self.hi.is_rational and self.hi.value == 1 else self.hi.describe()
        if self.lo == self.hi:
            return "{" + lo + "}"
        return ("[" if self.lo_closed else "(") + lo + ", " + hi + ("]" if self.hi_closed else ")")


@dataclass
class RegionReport:
    mode: str
    k: int
    S: frozenset[int]
    verdict: str
    points: list[tuple[Fraction, FeasibilityOutcome]] = field(default_factory=list)
    segments: list[Segment] = field(default_factory=list)
    witness: Optional[Fraction] = None
    denominator: Optional[int] = None
    skipped_supports: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict in ("holds-for-all", "holds-for-all-sampled")

    def feasible_region(self) -> str:
        """Union of feasible segments, e.g. ``(0, 1/2]``; ``{}`` when empty."""
        pieces = [s.describe() for s in self.segments if s.feasible]
        return " U ".join(pieces) if pieces else "{}"

    def to_json(self, include_points: bool = True) -> dict:
        out = {
            "k": self.k,
            "S": sorted(self.S),
            "mode": self.mode,
            "verdict": self.verdict,
        }
        if self.denominator is not None:
            out["grid_denominator"] = self.denominator
        if self.witness is not None:
            out["witness_x"] = frac_str(self.witness)
        if self.mode == EXACT:
            out["region"] = self.feasible_region()
            out["segments"] = [
                {"interval": s.describe(), "feasible": s.feasible, "evidence": s.evidence} for s in self.segments
            ]
        witnesses = []
        for x, o in self.points:
            if include_points or not o.feasible:
                entry = {"x": frac_str(x)}
                entry.update(o.to_json())
                witnesses.append(entry)
        out["witnesses"] = witnesses
        return out


def _grid_order(D: int) -> list[int]:
    """Coarse-to-fine visiting order of 1..D-1 so failures surface early."""
    seen = set()
    order = []
    step = D
    while step > 1:
        step = max(1, step // 2)
        for j in range(step, D, step):
            if j not in seen:
                seen.add(j)
                order.append(j)
    return order


def grid_sweep(system: ParametricSystem, D: int = DEFAULT_DENOMINATOR, stop_at_failure: bool = False) -> RegionReport:
    """Check feasibility at every x = j/D, j = 1..D-1 (points reported in increasing x)."""
    if D < 2:
        raise ValueError("grid denominator must be at least 2")
    solver = _PointSolver(system)
    results: dict[int, FeasibilityOutcome] = {}
    witness = None
    order = _grid_order(D) if stop_at_failure else range(1, D)
    for j in order:
        out = solver.solve(Fraction(j, D))
        results[j] = out
        if not out.feasible:
            if witness is None or Fraction(j, D) < witness:
                witness = Fraction(j, D)
            if stop_at_failure:
                break
    points = [(Fraction(j, D), results[j]) for j in sorted(results)]
    verdict = "holds-for-all-sampled" if witness is None else "fails"
    return RegionReport(GRID, system.k, system.S, verdict, points=points, witness=witness, denominator=D)


# -- exact region -------------------------------------------------------------

@dataclass
class _Condition:
    """Feasibility with a fixed support: sign requirements on polynomials."""

    support: tuple[int, ...]
    nonzero: Polynomial
    nonneg: list[Polynomial]  # each multiplied by sign(nonzero) must be >= 0
    zero: list[Polynomial]
    rows: tuple[int, ...] = ()

    def holds_at(self, alpha: RealRoot) -> bool:
        s = alpha.sign_of(self.nonzero)
        if s == 0:
            return False
        if any(alpha.sign_of(z) != 0 for z in self.zero):
            return False
        return all(s * alpha.sign_of(q) >= 0 for q in self.nonneg)


def _support_conditions(system: ParametricSystem) -> tuple[list[_Condition], int]:
    rows = system.rows
    m = system.m
    b = [Polynomial.constant(v) for v in RHS]
    conds: list[_Condition] = []
    skipped = 0
    for T in combinations(range(m), 3):
        M = [[rows[r][j] for j in T] for r in range(3)]
        d, nums = cramer_numerators(M, b, ZERO)
        if d.is_zero():
            skipped += 1
            log.debug("support %s identically singular; skipped", T)
            continue
        conds.append(_Condition(T, d, nums, []))
    for T in combinations(range(m), 2):
        full = [[rows[r][T[0]], rows[r][T[1]], b[r]] for r in range(3)]
        consistency = det(full, ZERO)
        for rr in combinations(range(3), 2):
            M = [[rows[r][j] for j in T] for r in rr]
            d, nums = cramer_numerators(M, [b[r] for r in rr], ZERO)
            if d.is_zero():
                continue
            conds.append(_Condition(T, d, nums, [consistency] if consistency else [], rr))
    for j in range(m):
        col = [rows[r][j] for r in range(3)]
        for r in range(3):
            if col[r].is_zero():
                continue
            zero = [col[r] * b[s] - col[s] * b[r] for s in range(3) if s != r]
            conds.append(_Condition((j,), col[r], [b[r]], [z for z in zero if z], (r,)))
    return conds, skipped


def _critical_points(conds: list[_Condition]) -> list[RealRoot]:
    polys: dict[tuple, Polynomial] = {}
    for c in conds:
        for p in [c.nonzero, *c.nonneg, *c.zero]:
            if p.degree < 1:
                continue
            q = p.strip_endpoint_roots().squarefree()
            if q.degree >= 1:
                polys.setdefault(q.coeffs, q)
    roots: list[RealRoot] = []
    for q in polys.values():
        for lo, hi in isolate_roots(q, Fraction(0), Fraction(1)):
            r = RealRoot(q, lo, hi)
            r.try_rational()
            roots.append(r)

    def cmp(a: RealRoot, b: RealRoot) -> int:
        if a == b:
            return 0
        return -1 if a < b else 1

    roots.sort(key=cmp_to_key(cmp))
    merged: list[RealRoot] = []
    for r in roots:
        if not merged or not (merged[-1] == r):
            merged.append(r)
    return merged


def _between(a: RealRoot, b: RealRoot) -> Fraction:
    """A rational strictly between a < b."""
    while not a.hi < b.lo:
        if a.is_rational and b.is_rational:
            break
        if a.hi - a.lo >= b.hi - b.lo:
            a.refine()
        else:
            b.refine()
    return (a.hi + b.lo) / 2


def exact_region(system: ParametricSystem) -> RegionReport:
    """Exact feasibility region over (0, 1) via support enumeration.

    By Caratheodory a nonnegative solution exists iff one exists on a support
    of linearly independent columns, each of which is a Cramer solve with
    polynomial sign conditions. Feasibility is therefore constant between
    consecutive real roots of those polynomials; each open cell is decided at
    a rational sample and each root either by an exact solve (rational root)
    or by exact sign evaluation of the support conditions.
    """
    conds, skipped = _support_conditions(system)
    crit = _critical_points(conds)
    zero, one = RealRoot.rational(Fraction(0)), RealRoot.rational(Fraction(1))
    bounds = [zero, *crit, one]
    pieces: list[Segment] = []
    points: list[tuple[Fraction, FeasibilityOutcome]] = []
    for idx in range(len(bounds) - 1):
        a, b = bounds[idx], bounds[idx + 1]
        x = _between(a, b)
        out = check_at(system, x)
        points.append((x, out))
        pieces.append(Segment(a, b, False, False, out.feasible, [{"x": frac_str(x), **out.to_json()}]))
        if idx + 1 < len(bounds) - 1:
            if b.is_rational:
                out = check_at(system, b.value)
                points.append((b.value, out))
                ev = [{"x": frac_str(b.value), **out.to_json()}]
                feas = out.feasible
            else:
                hit = next((c for c in conds if c.holds_at(b)), None)
                feas = hit is not None
                ev = [{"x": b.describe(), "status": FEASIBLE if feas else INFEASIBLE,
                       "support": [system.indices[j] for j in hit.support] if hit else None,
                       "rows": list(hit.rows) if hit else None,
                       "basis": "exact sign conditions at algebraic point"}]
            pieces.append(Segment(b, b, True, True, feas, ev))

    segments: list[Segment] = []
    for p in pieces:
        if segments and segments[-1].feasible == p.feasible:
            last = segments[-1]
            last.hi, last.hi_closed = p.hi, p.hi_closed
            last.evidence.extend(p.evidence)
        else:
            segments.append(Segment(p.lo, p.hi, p.lo_closed, p.hi_closed, p.feasible, list(p.evidence)))
    failing = [s for s in segments if not s.feasible]
    witness = None
    if failing:
        ev = failing[0].evidence
        for e in ev:
            if "/" in e["x"] and not e["x"].startswith("root"):
                witness = Fraction(e["x"])
                break
    verdict = "holds-for-all" if not failing else "fails"
    return RegionReport(EXACT, system.k, system.S, verdict, points=points, segments=segments,
                        witness=witness, skipped_supports=skipped)


# -- maximal sets ---------------------------------------------------------------

def _passes(args) -> bool:
    k, S, mode, D = args
    system = build_system(k, S)
    if mode == GRID:
        return grid_sweep(system, D, stop_at_failure=True).holds
    return exact_region(system).holds


def maximal_sets(k: int, mode: str = GRID, D: int = DEFAULT_DENOMINATOR, workers: int = 1) -> list[frozenset[int]]:
    """Inclusion-maximal S whose system is feasible for all x (per mode).

    Candidates are generated level by level: a set is tested only if every
    subset one smaller passed, since a failing set makes all its supersets
    fail (they have fewer columns).
    """
    if not MIN_K <= k <= MAX_TABLE_K:
        raise ValueError(f"maximal_sets supports {MIN_K} <= k <= {MAX_TABLE_K}")
    if mode not in (GRID, EXACT):
        raise ValueError(f"unknown mode {mode!r}")
    memo: dict[frozenset[int], bool] = {}
    level = [frozenset()]
    passing_all: list[frozenset[int]] = []
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while level:
            tests = [(k, S, mode, D) for S in level]
            verdicts = list(pool.map(_passes, tests)) if pool else [_passes(t) for t in tests]
            passing = []
            for S, ok in zip(level, verdicts):
                memo[S] = ok
                if ok:
                    passing.append(S)
            passing_all.extend(passing)
            pset = set(passing)
            nxt = set()
            for S in passing:
                for e in range(k):
                    if e in S:
                        continue
                    T = S | {e}
                    if len(T) == k or T in nxt:
                        continue
                    if all((T - {u}) in pset for u in T):
                        nxt.add(T)
            level = sorted(nxt, key=lambda s: sorted(s))
    finally:
        if pool:
            pool.shutdown()
    maximal = [S for S in passing_all if not any(S < T for T in passing_all)]
    return sorted(maximal, key=lambda s: (len(s), sorted(s)))


def format_sets(sets: Iterable[frozenset[int]]) -> str:
    return " ".join(set_str(s) for s in sets)


# -- symbolic identities ----------------------------------------------------------

@dataclass(frozen=True)
class EulerianIdentities:
    k: int
    f1: Polynomial
    f2: Polynomial
    f3: Polynomial
    target: Polynomial
    f1_equals_f3: bool
    difference_matches: bool

    @property
    def holds(self) -> bool:
        return self.f1_equals_f3 and self.difference_matches


def eulerian_identities(k: int) -> EulerianIdentities:
    """Sum the odd-index columns into f1, f2, f3 and check f1 = f3, f2 - f1 = (1-2x)^(k-3)/(k-3)!."""
    if k < 5 or k % 2 == 0:
        raise ValueError("k must be odd and at least 5")
    f1 = sum((bernstein_term(i, k - 3 - i) for i in range(1, k - 3, 2)), ZERO)
    f2 = sum((bernstein_term(i - 1, k - 2 - i) for i in range(1, k - 1, 2)), ZERO)
    f3 = sum((bernstein_term(i - 2, k - 1 - i) for i in range(3, k - 1, 2)), ZERO)
    target = (Polynomial([1, -2]) ** (k - 3)).scale(Fraction(1, factorial(k - 3)))
    return EulerianIdentities(k, f1, f2, f3, target, f1 == f3, f2 - f1 == target)


EQUATION_EXPONENTS = {
    # (x power offset, 1-x power offset relative to k) per equation, plus its rhs
    "e1": (lambda i, k: (i, k - 1 - i), lambda k: Fraction(1, k * (k - 1))),
    "e2": (lambda i, k: (i - 1, k - 1 - i), lambda k: Fraction(1, k)),
    "e3": (lambda i, k: (i, k - 2 - i), lambda k: Fraction(1, k)),
    "e4": (lambda i, k: (i - 2, k - 1 - i), lambda k: Fraction(k - 2, k)),
    "e5": (lambda i, k: (i, k - 3 - i), lambda k: Fraction(k - 2, k)),
    "e6": (lambda i, k: (i - 1, k - 2 - i), lambda k: Fraction(k - 2, k)),
}


def equation_rows(k: int, x: Fraction) -> dict[str, list[Fraction]]:
    """Augmented rows (coefficients for i = 0..k-1, then the rhs) of the six degree-count equations."""
    out = {}
    for name, (exps, rhs) in EQUATION_EXPONENTS.items():
        out[name] = [bernstein_value(*exps(i, k), x) for i in range(k)] + [rhs(k)]
    return out


@dataclass(frozen=True)
class DependenceReport:
    k: int
    x: Fraction
    relations: dict[str, bool]

    @property
    def holds(self) -> bool:
        return all(self.relations.values())


def dependence_identities(k: int, x) -> DependenceReport:
    """Verify e3, e5, e6 as the stated combinations of e1, e2, e4 (coefficients and rhs)."""
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError("x must lie strictly between 0 and 1")
    if k < MIN_K:
        raise ValueError(f"k must be at least {MIN_K}")
    e = equation_rows(k, x)
    y = 1 - x

    def comb(*terms):
        return [sum((c * row[j] for c, row in terms), Fraction(0)) for j in range(k + 1)]

    f1 = comb(((k - 1) / y, e["e1"]), (-x / y, e["e2"]))
    f2 = comb(((k - 1) * (k - 2) / y ** 2, e["e1"]), (-2 * x * (k - 2) / y ** 2, e["e2"]), (x ** 2 / y ** 2, e["e4"]))
    f3 = comb(((k - 2) / y, e["e2"]), (-x / y, e["e4"]))
    return DependenceReport(k, x, {"e3": f1 == e["e3"], "e5": f2 == e["e5"], "e6": f3 == e["e6"]})

