"""Asymmetry parameter k(H), induced copy counts and random-graph experiments."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil
from typing import Optional, Sequence

from .graphs import (
    MAX_ORDER,
    Graph,
    canonical_form,
    induced_subgraph,
    nontrivial_automorphism,
)
from .serialize import frac_str

MAX_EXACT_ORDER = 9
MAX_EXPERIMENT_ORDER = 30


@dataclass(frozen=True)
class KOfH:
    """``value`` is None when k(H) is infinite (H itself is symmetric)."""

    value: Optional[int]
    witness: Optional[dict] = None
    levels: dict = field(default_factory=dict, compare=False)

    @property
    def infinite(self) -> bool:
        return self.value is None

    def at_most(self, k) -> bool:
        return self.value is not None and self.value <= k

    def to_json(self) -> dict:
        return {"k": "infinity" if self.value is None else self.value, "witness": self.witness}


def level_obstruction(H: Graph, s: int) -> Optional[dict]:
    """Why the s-vertex induced subgraphs of H fail the k(H) condition, or None if they pass."""
    seen: dict = {}
    for sub in combinations(range(H.n), s):
        g = induced_subgraph(H, sub)
        perm = nontrivial_automorphism(g) if g.n > 1 else None
        if perm is not None:
            return {"level": s, "kind": "symmetric", "subset": list(sub),
                    "automorphism": [sub[j] for j in perm]}
        cf = canonical_form(g)
        if cf in seen:
            return {"level": s, "kind": "isomorphic-pair", "subsets": [list(seen[cf]), list(sub)]}
        seen[cf] = sub
    return None


def k_of_h(H: Graph) -> KOfH:
    """Smallest k such that all induced subgraphs on >= k vertices are asymmetric and same-size ones pairwise non-isomorphic."""
    if H.n > MAX_EXACT_ORDER:
        raise ValueError(f"exact k(H) is limited to h <= {MAX_EXACT_ORDER}")
    levels = {}
    for s in range(H.n, 0, -1):
        obstruction = level_obstruction(H, s)
        levels[s] = obstruction is None
        if obstruction is not None:
            if s == H.n:
                return KOfH(None, obstruction, levels)
            return KOfH(s + 1, obstruction, levels)
    return KOfH(1, None, levels)


def goodman_floor(h: int) -> int:
    """ceil((h+1)/2)."""
    if h < 2:
        raise ValueError("h must be at least 2")
    return (h + 2) // 2


def count_induced_copies(H: Graph, G: Graph) -> int:
    if H.n > G.n:
        raise ValueError("H has more vertices than G")
    if G.n > MAX_ORDER:
        raise ValueError(f"G is limited to {MAX_ORDER} vertices")
    target = canonical_form(H)
    m = H.num_edges
    degs = sorted(H.degrees())
    count = 0
    for sub in combinations(range(G.n), H.n):
        g = induced_subgraph(G, sub)
        if g.num_edges != m or sorted(g.degrees()) != degs:
            continue
        if canonical_form(g) == target:
            count += 1
    return count


def duplicate_vertices(H: Graph, n: int, selected: Optional[Sequence[int]] = None) -> Graph:
    """Append n - h duplicates; each copy gets the current neighborhood of its source (and is not adjacent to it).

    By default vertex ``i % h`` is duplicated at step i.
    """
    h = H.n
    if not h <= n <= MAX_ORDER:
        raise ValueError(f"need {h} <= n <= {MAX_ORDER}")
    if selected is None:
        selected = [i % h for i in range(n - h)]
    if len(selected) != n - h:
        raise ValueError("need exactly n - h selected vertices")
    adj = list(H.adj)
    for v in selected:
        if not 0 <= v < len(adj):
            raise ValueError(f"vertex {v} does not exist yet")
        new = len(adj)
        nbrs = adj[v]
        adj.append(nbrs)
        u = nbrs
        while u:
            low = u & -u
            adj[low.bit_length() - 1] |= 1 << new
            u ^= low
    return Graph(n, tuple(adj))


def monotonicity_check(H: Graph) -> bool:
    """k(K) <= k(H) for every induced K on at least k(H) vertices (vacuous when k(H) is infinite)."""
    if H.n > 8:
        raise ValueError("monotonicity_check is limited to h <= 8")
    kh = k_of_h(H)
    if kh.infinite:
        return True
    for s in range(kh.value, H.n + 1):
        for sub in combinations(range(H.n), s):
            kk = k_of_h(induced_subgraph(H, sub))
            if not kk.at_most(kh.value):
                return False
    return True


# -- random graphs -----------------------------------------------------------

def random_graph(h: int, p, rng: random.Random) -> Graph:
    """G(h, p); pairs visited in graph6 order, edge iff the uniform draw is below p (compared exactly)."""
    p = Fraction(p)
    adj = [0] * h
    for j in range(1, h):
        for i in range(j):
            if Fraction(rng.random()) < p:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return Graph(h, tuple(adj))


def satisfies_threshold(H: Graph, s0: int) -> bool:
    """All levels s >= s0 pass, i.e. k(H) <= s0."""
    return all(level_obstruction(H, s) is None for s in range(H.n, s0 - 1, -1))


def _trial(args) -> bool:
    h, p, s0, seed = args
    return satisfies_threshold(random_graph(h, p, random.Random(seed)), s0)


@dataclass(frozen=True)
class ExperimentReport:
    h: int
    p: Fraction
    beta: Fraction
    trials: int
    seed: int
    successes: int

    @property
    def frequency(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "p": frac_str(self.p),
            "beta": frac_str(self.beta),
            "trials": self.trials,
            "seed": self.seed,
            "successes": self.successes,
            "frequency": frac_str(self.frequency),
        }


def random_asymmetry_experiment(h: int, p, beta, trials: int, seed: int, workers: int = 1) -> ExperimentReport:
    """Fraction of G(h, p) samples with k(H) <= ceil(beta*h); trial t uses random.Random(seed + t)."""
    p, beta = Fraction(p), Fraction(beta)
    if not 1 <= h <= MAX_EXPERIMENT_ORDER:
        raise ValueError(f"h must lie in [1, {MAX_EXPERIMENT_ORDER}]")
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if trials < 1:
        raise ValueError("need at least one trial")
    s0 = ceil(beta * h)
    if s0 > h:
        raise ValueError("ceil(beta*h) exceeds h")
    s0 = max(s0, 1)
    jobs = [(h, p, s0, seed + t) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_trial, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_trial(j) for j in jobs]
    return ExperimentReport(h, p, beta, trials, seed, sum(results))
