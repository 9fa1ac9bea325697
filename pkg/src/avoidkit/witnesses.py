"""Witness colorings for unavoidability arguments and their finite counting checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor
from typing import Optional, Sequence

from .families import GraphFamily, all_graphs
from .graphs import Graph, canonical_form, complement
from .packing import Coloring, nu_star, perfect_size
from .serialize import frac_str

STAR = "star"
BIPARTITION = "bipartition"
FOUR_PART = "four-part"
C4 = "c4"
KINDS = (STAR, BIPARTITION, FOUR_PART, C4)


@dataclass(frozen=True)
class WitnessSpec:
    """``sizes`` lists the part sizes in vertex order (A first); derived from n when omitted."""

    kind: str
    n: int
    sizes: Optional[tuple[int, ...]] = None
    alpha: Optional[Fraction] = None

    def resolved_sizes(self) -> tuple[int, ...]:
        n = self.n
        if self.kind not in KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if n < 1:
            raise ValueError("n must be positive")
        sizes = self.sizes
        if sizes is None:
            if self.kind == STAR:
                if self.alpha is None:
                    raise ValueError("star witness needs sizes or alpha")
                a = floor(Fraction(self.alpha) * n)
                sizes = (a, n - a)
            elif self.kind in (BIPARTITION, C4):
                sizes = (ceil(n / 2), n // 2)
            else:
                sizes = tuple(n // 4 + (1 if i < n % 4 else 0) for i in range(4))
        sizes = tuple(int(s) for s in sizes)
        want = 4 if self.kind == FOUR_PART else 2
        if len(sizes) != want:
            raise ValueError(f"{self.kind} witness needs {want} parts")
        if any(s < 0 for s in sizes) or sum(sizes) != n:
            raise ValueError(f"part sizes {list(sizes)} do not partition {n} vertices")
        return sizes


def _parts(sizes: Sequence[int]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _clique(P):
    return [(u, v) for i, u in enumerate(P) for v in P[i + 1:]]


def _between(P, Q):
    return [(u, v) for u in P for v in Q]


def build_witness(spec: WitnessSpec) -> Coloring:
    """Blue graph of the witness coloring (every other edge is red).

    star: blue E(B). bipartition: blue E(A) and E(B). four-part: blue E(A_i)
    for all i plus E(A_1, A_2). c4: blue E(A, B).
    """
    sizes = spec.resolved_sizes()
    parts = _parts(sizes)
    if spec.kind == STAR:
        edges = _clique(list(parts[1]))
    elif spec.kind == BIPARTITION:
        edges = _clique(list(parts[0])) + _clique(list(parts[1]))
    elif spec.kind == FOUR_PART:
        edges = [e for P in parts for e in _clique(list(P))] + _between(parts[0], parts[1])
    else:
        edges = _between(parts[0], parts[1])
    return Coloring(Graph.from_edges(spec.n, edges))


def red_class(H: Graph) -> GraphFamily:
    """Family holding the blue graph whose red edges form H."""
    return GraphFamily.from_graphs(H.n, [complement(H)], f"red {H}")


# -- closed-form checks ------------------------------------------------------------

@dataclass(frozen=True)
class C4Budget:
    n: int
    blue_edges: int
    blocks: int
    budget: int

    @property
    def infeasible(self) -> bool:
        return self.budget < self.blue_edges

    def to_json(self) -> dict:
        return {"n": self.n, "blue_edges": self.blue_edges, "blocks": self.blocks,
                "budget": self.budget, "infeasible": self.infeasible}


def c4_budget_check(n: int) -> C4Budget:
    """A K_4-decomposition without blue C_4 carries at most 3 blue edges per block."""
    if n % 12 not in (1, 4):
        raise ValueError("n must be 1 or 4 mod 12 for a K_4-decomposition to exist")
    blocks = n * (n - 1) // 12
    return C4Budget(n, n * n // 4, blocks, 3 * blocks)


@dataclass(frozen=True)
class StarBudget:
    k: int
    alpha: Fraction
    n: int
    a: int
    left: Fraction
    middle: Fraction
    right: Fraction
    cross_edges: int
    n0: int

    @property
    def holds(self) -> bool:
        return self.left < self.middle < self.right

    @property
    def margin(self) -> Fraction:
        return self.right - self.left

    @property
    def exact_holds(self) -> bool:
        return self.left < self.cross_edges

    def to_json(self) -> dict:
        return {
            "k": self.k, "alpha": frac_str(self.alpha), "n": self.n, "A": self.a,
            "left": frac_str(self.left), "middle": frac_str(self.middle), "right": frac_str(self.right),
            "margin": frac_str(self.margin), "holds": self.holds,
            "cross_edges": self.cross_edges, "exact_holds": self.exact_holds, "n0": self.n0,
        }


def star_alpha_bound(k: int) -> Fraction:
    return 1 / (Fraction(k * k, 8) + 1)


def star_budget_check(k: int, alpha, n: int) -> StarBudget:
    """Evaluate C(|A|,2)k^2/4 < alpha^2 n^2 k^2/8 < alpha(1-alpha)n^2 at finite n with |A| = floor(alpha n).

    Also compares the left side with the true cross count |A|(n-|A|). For
    |A| >= 1 this holds because (|A|-1)k^2/8 + |A| <= alpha n (k^2/8+1) - k^2/8 < n,
    so ``n0`` is the first n with |A| >= 1, namely ceil(1/alpha).
    """
    alpha = Fraction(alpha)
    if k < 3:
        raise ValueError("k must be at least 3")
    if not 0 < alpha < star_alpha_bound(k):
        raise ValueError(f"alpha must lie in (0, {star_alpha_bound(k)})")
    if n < 1:
        raise ValueError("n must be positive")
    a = floor(alpha * n)
    left = Fraction(comb(a, 2) * k * k, 4)
    middle = alpha * alpha * n * n * k * k / 8
    right = alpha * (1 - alpha) * n * n
    return StarBudget(k, alpha, n, a, left, middle, right, a * (n - a), ceil(1 / alpha))


# -- LP deficit ---------------------------------------------------------------------

@dataclass(frozen=True)
class DeficitReport:
    nu_star_allowed: Fraction
    perfect_bound: Fraction
    variables: int

    @property
    def deficit(self) -> Fraction:
        return self.perfect_bound - self.nu_star_allowed

    def to_json(self) -> dict:
        return {
            "nu_star_allowed": frac_str(self.nu_star_allowed),
            "perfect_bound": frac_str(self.perfect_bound),
            "deficit": frac_str(self.deficit),
            "variables": self.variables,
        }


def lp_deficit_report(coloring: Coloring, forbidden: GraphFamily, k: int) -> DeficitReport:
    if forbidden.k != k:
        raise ValueError("forbidden family order differs from k")
    allowed = GraphFamily(k, all_graphs(k).forms - forbidden.forms, f"C({k})\\{forbidden.label}")
    res = nu_star(coloring, allowed)
    return DeficitReport(res.value, perfect_size(coloring.n, k), res.variables)


def blue_class(H: Graph) -> GraphFamily:
    return GraphFamily(H.n, frozenset([canonical_form(H)]), f"blue {H}")
