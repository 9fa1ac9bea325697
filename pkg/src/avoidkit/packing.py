"""Fractional and exact packings of colored complete graphs by k-vertex blocks."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Optional, Sequence

from .families import GraphFamily, all_graphs
from .graphs import MAX_ORDER, Graph, canonical_form, enumerate_classes, induced_subgraph
from .rational.simplex import lp_maximize
from .serialize import frac_str, parse_frac

log = logging.getLogger(__name__)

FOUND = "found"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

MAX_LP_ORDER = 13
MAX_LP_BLOCK = 5


@dataclass(frozen=True)
class Coloring:
    """Red-blue coloring of K_n given by its blue graph."""

    blue: Graph

    @property
    def n(self) -> int:
        return self.blue.n

    @classmethod
    def from_text(cls, text: str) -> Coloring:
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].replace(" ", "").startswith("n="):
            raise ValueError("coloring file must start with 'n=<int>'")
        try:
            n = int(lines[0].replace(" ", "")[2:])
        except ValueError:
            raise ValueError(f"bad order line {lines[0]!r}") from None
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {ln!r}")
            u, v = int(parts[0]), int(parts[1])
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError(f"edge {u} {v} out of range for n={n}")
            edges.append((u, v))
        return cls(Graph.from_edges(n, edges))

    def to_text(self) -> str:
        lines = [f"n={self.n}"] + [f"{u} {v}" for u, v in self.blue.edges()]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Block:
    verts: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(sorted(self.verts))
        if len(set(vs)) != len(vs):
            raise ValueError("block has repeated vertices")
        object.__setattr__(self, "verts", vs)

    @property
    def k(self) -> int:
        return len(self.verts)

    def pairs(self):
        return combinations(self.verts, 2)


@dataclass
class Packing:
    k: int
    blocks: list[tuple[Block, Fraction]] = field(default_factory=list)
    family: Optional[GraphFamily] = None

    @property
    def size(self) -> Fraction:
        return sum((w for _, w in self.blocks), Fraction(0))

    @property
    def integral(self) -> bool:
        return all(w in (0, 1) for _, w in self.blocks)

    def support(self) -> list[Block]:
        return [b for b, w in self.blocks if w > 0]

    def relabeled(self, perm: Sequence[int]) -> Packing:
        return Packing(self.k, [(Block(tuple(perm[v] for v in b.verts)), w) for b, w in self.blocks], self.family)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "size": frac_str(self.size),
            "blocks": [{"vertices": list(b.verts), "weight": frac_str(w)} for b, w in self.blocks],
        }

    @classmethod
    def from_json(cls, data, family: Optional[GraphFamily] = None) -> Packing:
        if isinstance(data, str):
            data = json.loads(data)
        blocks = [(Block(tuple(e["vertices"])), parse_frac(e["weight"])) for e in data["blocks"]]
        return cls(int(data["k"]), blocks, family)


def admissible_blocks(coloring: Coloring, k: int, family: GraphFamily) -> list[Block]:
    """k-subsets whose induced blue graph is isomorphic to a member of ``family`` (sorted)."""
    if family.k != k:
        raise ValueError("family order differs from block size")
    if not family.forms:
        return []
    out = []
    for sub in combinations(range(coloring.n), k):
        if canonical_form(induced_subgraph(coloring.blue, sub)) in family.forms:
            out.append(Block(sub))
    return out


def perfect_size(n: int, k: int) -> Fraction:
    return Fraction(comb(n, 2), comb(k, 2))


# -- fractional packing --------------------------------------------------------

@dataclass(frozen=True)
class NuStar:
    value: Fraction
    packing: Packing
    variables: int


def nu_star(coloring: Coloring, family: GraphFamily) -> NuStar:
    """Exact fractional packing number: max total weight, weights in [0,1], each pair covered at most once."""
    n, k = coloring.n, family.k
    if n > MAX_LP_ORDER or k > MAX_LP_BLOCK:
        raise ValueError(f"nu_star supports n <= {MAX_LP_ORDER} and k <= {MAX_LP_BLOCK}")
    if k > n:
        return NuStar(Fraction(0), Packing(k, [], family), 0)
    blocks = admissible_blocks(coloring, k, family)
    if not blocks:
        return NuStar(Fraction(0), Packing(k, [], family), 0)
    pair_index = {p: i for i, p in enumerate(combinations(range(n), 2))}
    rows: list[list[int]] = [[0] * len(blocks) for _ in pair_index]
    for j, b in enumerate(blocks):
        for p in b.pairs():
            rows[pair_index[p]][j] = 1
    used = [r for r in rows if any(r)]
    res = lp_maximize([1] * len(blocks), used, [1] * len(used))
    packing = Packing(k, [(b, w) for b, w in zip(blocks, res.solution) if w], family)
    return NuStar(res.optimum, packing, len(blocks))


# -- exact decomposition -----------------------------------------------------------

@dataclass
class DecompositionResult:
    status: str
    packing: Optional[Packing] = None
    nodes: int = 0
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status, "nodes": self.nodes}
        if self.reason:
            out["reason"] = self.reason
        if self.packing is not None:
            out["packing"] = self.packing.to_json()
        return out


def exact_decomposition(
    coloring: Coloring,
    k: int,
    allowed: GraphFamily,
    node_limit: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> DecompositionResult:
    """Exact cover of all pairs of K_n by admissible k-blocks.

    Backtracking always branches on the lexicographically first uncovered pair
    and tries the admissible blocks through it in sorted order. ``infeasible``
    is only reported after the tree is exhausted; hitting a limit gives
    ``unknown``.
    """
    n = coloring.n
    if n > MAX_ORDER:
        raise ValueError(f"exact decomposition supports n <= {MAX_ORDER}")
    if k < 2 or k > n:
        raise ValueError("need 2 <= k <= n")
    if comb(n, 2) % comb(k, 2):
        return DecompositionResult(INFEASIBLE, reason=f"C({n},2) is not divisible by C({k},2)")
    if (n - 1) % (k - 1):
        # each vertex lies in (n-1)/(k-1) blocks
        return DecompositionResult(INFEASIBLE, reason=f"{n - 1} is not divisible by {k - 1}")
    blocks = admissible_blocks(coloring, k, allowed)
    pairs = list(combinations(range(n), 2))
    pair_bit = {p: 1 << i for i, p in enumerate(pairs)}
    through: list[list[tuple[int, Block]]] = [[] for _ in pairs]
    for b in blocks:
        mask = 0
        for p in b.pairs():
            mask |= pair_bit[p]
        first = (mask & -mask).bit_length() - 1
        # a block is only ever chosen for its lowest pair, since lower pairs are covered first
        through[first].append((mask, b))
    full = (1 << len(pairs)) - 1
    deadline = None if time_limit is None else time.monotonic() + time_limit
    nodes = 0
    chosen: list[Block] = []

    class _Stop(Exception):
        pass

    def search(covered: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Stop
        if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _Stop
        if covered == full:
            return True
        free = ~covered & full
        i = (free & -free).bit_length() - 1
        for mask, b in through[i]:
            if mask & covered:
                continue
            chosen.append(b)
            if search(covered | mask):
                return True
            chosen.pop()
        return False

    try:
        ok = search(0)
    except _Stop:
        return DecompositionResult(UNKNOWN, nodes=nodes, reason="search limit reached")
    if ok:
        return DecompositionResult(FOUND, Packing(k, [(b, Fraction(1)) for b in chosen], allowed), nodes)
    return DecompositionResult(INFEASIBLE, nodes=nodes, reason="search tree exhausted")


# -- projective planes -----------------------------------------------------------

def projective_plane_decomposition(p: int) -> Packing:
    """Lines of PG(2, p) as a decomposition of K_{p^2+p+1} into copies of K_{p+1}."""
    if p not in (2, 3):
        raise ValueError("supported orders are p = 2 and p = 3")

    def normalized(v):
        lead = next(c for c in v if c)
        inv = pow(lead, -1, p)
        return tuple(c * inv % p for c in v)

    points = sorted({normalized(v) for v in product(range(p), repeat=3) if any(v)})
    index = {pt: i for i, pt in enumerate(points)}
    blocks = []
    for line in points:
        on = tuple(index[pt] for pt in points if sum(a * b for a, b in zip(line, pt)) % p == 0)
        blocks.append((Block(on), Fraction(1)))
    blocks.sort(key=lambda bw: bw[0].verts)
    return Packing(p + 1, blocks, all_graphs(p + 1))


# -- verification ------------------------------------------------------------------

@dataclass
class PackingCheck:
    ok: bool
    diagnostics: list[str]


def verify_packing(coloring: Coloring, packing: Packing, full_coverage: bool = False) -> PackingCheck:
    """Exact check of the pair constraint, block shape, family membership and (optionally) full coverage."""
    n = coloring.n
    diag: list[str] = []
    load: dict[tuple[int, int], Fraction] = {}
    for b, w in packing.blocks:
        if w < 0 or w > 1:
            diag.append(f"block {list(b.verts)} has weight {w} outside [0, 1]")
        if b.k != packing.k:
            diag.append(f"block {list(b.verts)} has {b.k} vertices, expected {packing.k}")
            continue
        if any(not 0 <= v < n for v in b.verts):
            diag.append(f"block {list(b.verts)} leaves the vertex range 0..{n - 1}")
            continue
        if w > 0 and packing.family is not None:
            if canonical_form(induced_subgraph(coloring.blue, b.verts)) not in packing.family.forms:
                diag.append(f"block {list(b.verts)} induces a coloring outside the family")
        for pr in b.pairs():
            load[pr] = load.get(pr, Fraction(0)) + w
    for pr, total in sorted(load.items()):
        if total > 1:
            diag.append(f"pair {pr} carries weight {total} > 1")
    if full_coverage:
        for pr in combinations(range(n), 2):
            if load.get(pr, 0) != 1:
                diag.append(f"pair {pr} covered with weight {load.get(pr, Fraction(0))}, not 1")
    return PackingCheck(not diag, diag)


# -- decomposition property ------------------------------------------------------------

@dataclass
class PropertyReport:
    q: int
    k: int
    results: list[tuple[str, str]]

    @property
    def verdict(self) -> str:
        statuses = {s for _, s in self.results}
        if UNKNOWN in statuses:
            return UNKNOWN
        return "holds" if statuses <= {FOUND} else "fails"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "verdict": self.verdict,
            "colorings": [{"graph6": g6, "status": s} for g6, s in self.results],
        }


MAX_EXHAUSTIVE_Q = 8


def decomposition_property_check(
    q: int,
    k: int,
    allowed: GraphFamily,
    colorings: Optional[Iterable[Coloring]] = None,
    node_limit: Optional[int] = None,
) -> PropertyReport:
    """Run exact_decomposition on each coloring (default: every class of colorings of K_q)."""
    from .graphs import to_graph6

    if colorings is None:
        if q > MAX_EXHAUSTIVE_Q:
            raise ValueError(f"exhaustive mode supports q <= {MAX_EXHAUSTIVE_Q}")
        colorings = (Coloring(cf.graph()) for cf in enumerate_classes(q))
    results = []
    for c in colorings:
        if c.n != q:
            raise ValueError(f"coloring of K_{c.n} given for q={q}")
        res = exact_decomposition(c, k, allowed, node_limit=node_limit)
        if res.status == FOUND:
            check = verify_packing(c, res.packing, full_coverage=True)
            if not check.ok:
                raise AssertionError("decomposition failed verification: " + "; ".join(check.diagnostics))
        results.append((to_graph6(c.blue), res.status))
    return PropertyReport(q, k, results)
