"""Graph families on k vertices, stored as sets of canonical forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graphs import (
    MAX_ENUMERATION_ORDER,
    CanonicalForm,
    Graph,
    canonical_form,
    complement,
    degree_set,
    enumerate_classes,
    from_graph6,
    induced_subgraph,
    to_graph6,
)


@dataclass(frozen=True)
class DegreeSet:
    members: frozenset[int]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if any(not 0 <= d < self.k for d in self.members):
            raise ValueError(f"degree set {sorted(self.members)} not within 0..{self.k - 1}")

    def complement_degrees(self) -> DegreeSet:
        """Degrees seen in the red graph: ``{k-1-d}``."""
        return DegreeSet(frozenset(self.k - 1 - d for d in self.members), self.k)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, sorted(self.members))) + "}"


@dataclass(frozen=True)
class GraphFamily:
    """Isomorphism classes of k-vertex graphs; ``forms`` is the membership index."""

    k: int
    forms: frozenset[CanonicalForm]
    label: str = "custom"
    reps: tuple[Graph, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if any(f.n != self.k for f in self.forms):
            raise ValueError("family member of the wrong order")
        if not self.reps:
            object.__setattr__(self, "reps", tuple(f.graph() for f in sorted(self.forms)))

    @classmethod
    def from_graphs(cls, k: int, graphs: Iterable[Graph], label: str = "custom") -> GraphFamily:
        forms = set()
        for g in graphs:
            if g.n != k:
                raise ValueError(f"graph on {g.n} vertices in a family of order {k}")
            forms.add(canonical_form(g))
        return cls(k, frozenset(forms), label)

    def __len__(self) -> int:
        return len(self.forms)

    def __contains__(self, g: Graph) -> bool:
        return g.n == self.k and canonical_form(g) in self.forms

    def contains_form(self, cf: CanonicalForm) -> bool:
        return cf in self.forms

    def graph6_list(self) -> list[str]:
        return sorted(to_graph6(f.graph()) for f in self.forms)

    def to_json(self) -> str:
        return json.dumps(self.graph6_list())

    @classmethod
    def from_json(cls, text: str, label: str = "custom") -> GraphFamily:
        items = json.loads(text)
        graphs = [from_graph6(s) for s in items]
        if not graphs:
            raise ValueError("cannot infer k from an empty family; use GraphFamily(k, frozenset())")
        return cls.from_graphs(graphs[0].n, graphs, label)

    def complemented(self) -> GraphFamily:
        """Family of the color-swapped members (red and blue exchanged)."""
        return GraphFamily.from_graphs(self.k, (complement(g) for g in self.reps), f"swap({self.label})")


def all_graphs(k: int) -> GraphFamily:
    """C(k): every red-blue coloring of K_k."""
    return GraphFamily(k, frozenset(enumerate_classes(k)), f"C({k})")


def degree_family(S: DegreeSet) -> GraphFamily:
    """F(S, k): classes whose degree set is contained in S."""
    k = S.k
    if k > MAX_ENUMERATION_ORDER:
        raise ValueError(f"families need k <= {MAX_ENUMERATION_ORDER}")
    forms = frozenset(cf for cf in enumerate_classes(k) if degree_set(cf.graph()) <= S.members)
    return GraphFamily(k, forms, f"F({S},{k})")


def complement_family(fam: GraphFamily) -> GraphFamily:
    """C(k) minus the family (R(S, k) when ``fam`` is F(S, k))."""
    forms = frozenset(cf for cf in enumerate_classes(fam.k) if cf not in fam.forms)
    return GraphFamily(fam.k, forms, f"C({fam.k})\\{fam.label}")


def induced_family(H: Graph, k: int) -> GraphFamily:
    """C(H, k): classes of the k-vertex induced subgraphs of H."""
    if not 1 <= k <= H.n or k > MAX_ENUMERATION_ORDER:
        raise ValueError(f"need 1 <= k <= min(|V(H)|, {MAX_ENUMERATION_ORDER})")
    forms = frozenset(canonical_form(induced_subgraph(H, sub)) for sub in combinations(range(H.n), k))
    return GraphFamily(k, forms, f"C(H,{k})")


def _connected_on(g: Graph, verts: int) -> bool:
    if not verts:
        return True
    start = verts & -verts
    seen = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        v = low.bit_length() - 1
        new = g.adj[v] & verts & ~seen
        seen |= new
        frontier |= new
    return seen == verts


SPANNING = "spanning"
NON_ISOLATED = "non-isolated"
EVEN_ONLY = "even"
CONVENTIONS = (SPANNING, NON_ISOLATED, EVEN_ONLY)


def is_eulerian_graph(g: Graph, convention: str = SPANNING) -> bool:
    """All degrees even, plus connectivity per ``convention``.

    ``spanning``: connected on all vertices (a closed trail visits every vertex).
    ``non-isolated``: connected once isolated vertices are ignored.
    ``even``: degree parity only.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown Eulerian convention {convention!r}")
    if any(d % 2 for d in g.degrees()):
        return False
    if convention == EVEN_ONLY:
        return True
    if convention == SPANNING:
        return g.n == 1 or _connected_on(g, (1 << g.n) - 1)
    active = 0
    for v, m in enumerate(g.adj):
        if m:
            active |= 1 << v
    return _connected_on(g, active)


def is_eulerian_coloring(g: Graph, convention: str = SPANNING) -> bool:
    """Both color classes Eulerian; defined for odd order only."""
    if g.n % 2 == 0:
        raise ValueError("Eulerian colorings are defined for odd n")
    return is_eulerian_graph(g, convention) and is_eulerian_graph(complement(g), convention)


def eulerian_family(k: int, convention: str = SPANNING) -> GraphFamily:
    forms = frozenset(cf for cf in enumerate_classes(k) if is_eulerian_coloring(cf.graph(), convention))
    return GraphFamily(k, forms, f"Eulerian({k})")


def even_degree_set(k: int) -> DegreeSet:
    """{2, 4, ..., k-3} for odd k."""
    return DegreeSet(frozenset(range(2, k - 2, 2)), k)
