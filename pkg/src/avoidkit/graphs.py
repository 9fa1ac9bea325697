"""Small labeled graphs as neighbor bitmasks.

A graph on ``n`` vertices doubles as a red-blue coloring of ``K_n``: its
edges are the blue pairs and its complement is the red graph.

Isomorphism goes through :func:`canonical_form`, the lexicographically
smallest upper-triangle bit-string over all vertex orders reachable by
individualization-refinement from the ordered degree partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

MAX_ORDER = 16
MAX_ENUMERATION_ORDER = 8


class CapacityError(ValueError):
    """Raised when a graph exceeds the supported vertex count."""


class Graph6Error(ValueError):
    """Raised on a malformed graph6 string."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbor bitmask of vertex ``v``.

    Equality is label-sensitive. Orders above :data:`MAX_ORDER` are accepted
    only for the asymmetry experiments; graph6 I/O and exhaustive operations
    enforce the cap.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from n")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise ValueError(f"vertex {v} has neighbors outside range")
            if mask >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            m = mask
            while m:
                low = m & -m
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                m ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in range(v) if self.adj[u] >> v & 1]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph in which vertex ``perm[v]`` plays the role of ``v``."""
        adj = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return Graph(self.n, tuple(adj))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full ^ m ^ (1 << v) for v, m in enumerate(g.adj)))


def induced_subgraph(g: Graph, verts: Iterable[int]) -> Graph:
    """Subgraph induced on ``verts``, relabeled 0..|verts|-1 in increasing order."""
    vs = sorted(set(verts))
    if not vs:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    if vs[0] < 0 or vs[-1] >= g.n:
        raise ValueError("vertex outside the graph")
    adj = []
    for v in vs:
        m = g.adj[v]
        adj.append(sum(1 << i for i, u in enumerate(vs) if m >> u & 1))
    return Graph(len(vs), tuple(adj))


def degree_set(g: Graph) -> frozenset[int]:
    return frozenset(g.degrees())


# -- graph6 -----------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise CapacityError("graph6 short form only covers n <= 62")
    bits = [1 if g.adj[i] >> j & 1 else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return "".join(chars)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise Graph6Error(f"invalid graph6 character in {text!r}")
    if s[0] == "~":
        raise CapacityError("graphs with more than 62 vertices are not supported")
    n = ord(s[0]) - 63
    if n > MAX_ORDER:
        raise CapacityError(f"n={n} exceeds the {MAX_ORDER}-vertex capacity")
    if n < 1:
        raise Graph6Error("graph6 string encodes no vertices")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> (5 - i)) & 1 for i in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# -- partition refinement ---------------------------------------------------

def _mask(cell: Sequence[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    Every cell is split by the vector of neighbor counts into all current
    cells; sub-cells are ordered by that vector, so the result depends only
    on the isomorphism type of (g, cells).
    """
    adj = g.adj
    while True:
        masks = [_mask(c) for c in cells]
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                a = adj[v]
                sig = tuple((a & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                split = True
                for sig in sorted(groups):
                    out.append(groups[sig])
            else:
                out.append(cell)
        cells = out
        if not split:
            return cells


def degree_partition(g: Graph) -> list[list[int]]:
    by_deg: dict[int, list[int]] = {}
    for v, d in enumerate(g.degrees()):
        by_deg.setdefault(d, []).append(v)
    return [by_deg[d] for d in sorted(by_deg)]


def _are_twins(g: Graph, u: int, v: int) -> bool:
    both = ~((1 << u) | (1 << v))
    return (g.adj[u] & both) == (g.adj[v] & both)


def _bits_of_order(g: Graph, order: Sequence[int]) -> int:
    """Upper-triangle bit-string (graph6 column order) of g relabeled by ``order``."""
    adj = g.adj
    val = 0
    for j in range(1, len(order)):
        aj = adj[order[j]]
        for i in range(j):
            val = val << 1 | (aj >> order[i] & 1)
    return val


def _target(cells: list[list[int]]) -> int:
    best = -1
    for i, c in enumerate(cells):
        if len(c) > 1 and (best < 0 or len(c) < len(cells[best])):
            best = i
    return best


def _individualize(g: Graph, cells: list[list[int]], t: int, v: int) -> list[list[int]]:
    rest = [u for u in cells[t] if u != v]
    return refine(g, cells[:t] + [[v], rest] + cells[t + 1:])


def _trace(cells: list[list[int]]) -> tuple[int, ...]:
    return tuple(len(c) for c in cells)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    bits: int

    def graph(self) -> Graph:
        adj = [0] * self.n
        nbits = self.n * (self.n - 1) // 2
        k = nbits - 1
        for j in range(1, self.n):
            for i in range(j):
                if self.bits >> k & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                k -= 1
        return Graph(self.n, tuple(adj))


def canonical_labeling(g: Graph) -> tuple[CanonicalForm, tuple[int, ...]]:
    """Canonical form and a vertex order realizing it (position -> vertex)."""
    best_bits = None
    best_order: tuple[int, ...] = ()

    def search(cells: list[list[int]]) -> None:
        nonlocal best_bits, best_order
        t = _target(cells)
        if t < 0:
            order = tuple(c[0] for c in cells)
            bits = _bits_of_order(g, order)
            if best_bits is None or bits < best_bits:
                best_bits, best_order = bits, order
            return
        tried: list[int] = []
        for v in cells[t]:
            # a twin transposition fixes the current partition, so its subtree is redundant
            if any(_are_twins(g, u, v) for u in tried):
                continue
            tried.append(v)
            search(_individualize(g, cells, t, v))

    search(refine(g, degree_partition(g)))
    return CanonicalForm(g.n, best_bits), best_order


def canonical_form(g: Graph) -> CanonicalForm:
    return canonical_labeling(g)[0]


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).graph()


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges == h.num_edges and canonical_form(g) == canonical_form(h)


def _leaves(g: Graph, trace_filter=None) -> Iterator[tuple[int, ...]]:
    """All leaf orders of the individualization-refinement tree (no pruning)."""
    def walk(cells, depth):
        if trace_filter is not None and not trace_filter(depth, cells):
            return
        t = _target(cells)
        if t < 0:
            yield tuple(c[0] for c in cells)
            return
        for v in list(cells[t]):
            yield from walk(_individualize(g, cells, t, v), depth + 1)

    yield from walk(refine(g, degree_partition(g)), 0)


def _first_path(g: Graph) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    cells = refine(g, degree_partition(g))
    traces = [_trace(cells)]
    while True:
        t = _target(cells)
        if t < 0:
            return tuple(c[0] for c in cells), traces
        cells = _individualize(g, cells, t, cells[t][0])
        traces.append(_trace(cells))


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """Every automorphism as a tuple ``p`` with ``p[v]`` the image of ``v``; identity first."""
    first, traces = _first_path(g)
    ref_bits = _bits_of_order(g, first)

    def keep(depth, cells):
        return depth < len(traces) and _trace(cells) == traces[depth]

    out = []
    for order in _leaves(g, keep):
        if _bits_of_order(g, order) == ref_bits:
            perm = [0] * g.n
            for a, b in zip(first, order):
                perm[a] = b
            out.append(tuple(perm))
    ident = tuple(range(g.n))
    out.sort(key=lambda p: (p != ident, p))
    return out


def nontrivial_automorphism(g: Graph) -> Optional[tuple[int, ...]]:
    """Some non-identity automorphism (``p[v]`` is the image of ``v``), or None if g is asymmetric."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if _are_twins(g, u, v):
                perm = list(range(g.n))
                perm[u], perm[v] = v, u
                return tuple(perm)
    first, traces = _first_path(g)
    if len(traces) == 1:
        return None
    ref_bits = _bits_of_order(g, first)

    def keep(depth, cells):
        return depth < len(traces) and _trace(cells) == traces[depth]

    for order in _leaves(g, keep):
        if order != first and _bits_of_order(g, order) == ref_bits:
            perm = [0] * g.n
            for a, b in zip(first, order):
                perm[a] = b
            return tuple(perm)
    return None


def is_asymmetric(g: Graph) -> bool:
    """True iff the identity is the only automorphism; stops at the first witness."""
    return g.n == 1 or nontrivial_automorphism(g) is None


# -- enumeration ------------------------------------------------------------

@lru_cache(maxsize=None)
def _classes(k: int) -> tuple[CanonicalForm, ...]:
    if k == 1:
        return (canonical_form(Graph.empty(1)),)
    seen: set[CanonicalForm] = set()
    for cf in _classes(k - 1):
        base = cf.graph()
        for mask in range(1 << (k - 1)):
            adj = list(base.adj) + [mask]
            for u in range(k - 1):
                if mask >> u & 1:
                    adj[u] |= 1 << (k - 1)
            seen.add(canonical_form(Graph(k, tuple(adj))))
    return tuple(sorted(seen))


def enumerate_classes(k: int) -> tuple[CanonicalForm, ...]:
    if not 1 <= k <= MAX_ENUMERATION_ORDER:
        raise ValueError(f"enumeration supports 1 <= k <= {MAX_ENUMERATION_ORDER}")
    return _classes(k)


def enumerate_graphs(k: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on ``k`` vertices, sorted by form."""
    for cf in enumerate_classes(k):
        yield cf.graph()


def k_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(n), k)
