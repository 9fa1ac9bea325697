"""Independent reference implementations used only by the tests.

Nothing here imports the package's canonical forms, simplex or polynomial
code: graphs are plain edge sets checked by raw permutation search, LPs go
through scipy (floating point, HiGHS) and symbolic checks through sympy.
"""

from itertools import combinations, permutations
from math import factorial

import numpy as np
import sympy
from scipy.optimize import linprog


# -- graphs as frozensets of edges -------------------------------------------

def edge_set(g):
    return frozenset(frozenset(e) for e in g.edges())


def relabel_edges(edges, perm):
    return frozenset(frozenset(perm[v] for v in e) for e in edges)


def brute_canonical(n, edges):
    """Lexicographically smallest sorted edge list over all n! relabelings."""
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted(perm[v] for v in e)) for e in edges))
        if best is None or key < best:
            best = key
    return best


def brute_isomorphic(n, e1, e2):
    if len(e1) != len(e2):
        return False
    return any(relabel_edges(e1, p) == e2 for p in permutations(range(n)))


def brute_automorphism_count(n, edges):
    return sum(1 for p in permutations(range(n)) if relabel_edges(edges, p) == edges)


def all_labeled_edge_sets(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield frozenset(frozenset(pairs[i]) for i in range(len(pairs)) if mask >> i & 1)


def brute_class_count(n):
    return len({brute_canonical(n, e) for e in all_labeled_edge_sets(n)})


def induced_edges(edges, sub):
    """Induced edge set on ``sub`` relabeled to 0..len(sub)-1."""
    pos = {v: i for i, v in enumerate(sub)}
    return frozenset(frozenset(pos[v] for v in e) for e in edges if all(v in pos for v in e))


def brute_k_of_h(n, edges):
    """k(H) straight from the definition with raw permutation search; None means infinite."""
    def level_ok(s):
        subs = [induced_edges(edges, sub) for sub in combinations(range(n), s)]
        for e in subs:
            if brute_automorphism_count(s, e) > 1:
                return False
        for a, b in combinations(subs, 2):
            if brute_isomorphic(s, a, b):
                return False
        return True

    if not level_ok(n):
        return None
    k = n
    while k > 1 and level_ok(k - 1):
        k -= 1
    return k


def brute_induced_count(h, h_edges, n, g_edges):
    return sum(1 for sub in combinations(range(n), h) if brute_isomorphic(h, induced_edges(g_edges, sub), h_edges))


# -- LP via scipy ----------------------------------------------------------------

def float_feasible(A, b):
    A = np.array([[float(v) for v in row] for row in A])
    b = np.array([float(v) for v in b])
    res = linprog(np.zeros(A.shape[1]), A_eq=A, b_eq=b, bounds=[(0, None)] * A.shape[1], method="highs")
    return res.status == 0


def float_lp_max(c, A_ub, b_ub):
    res = linprog(-np.array([float(v) for v in c]),
                  A_ub=np.array([[float(v) for v in row] for row in A_ub]) if A_ub else None,
                  b_ub=np.array([float(v) for v in b_ub]) if b_ub else None,
                  bounds=[(0, 1)] * len(c), method="highs")
    return -res.fun


def tsuff_matrix_float(k, S, x):
    """The three rows written out directly from the formulas, in floats."""
    def term(a, b):
        if a < 0 or b < 0:
            return 0.0
        return x ** a / factorial(a) * (1 - x) ** b / factorial(b)

    idx = [i for i in range(k) if i not in S]
    return [
        [term(i - 2, k - 1 - i) for i in idx],
        [term(i, k - 3 - i) for i in idx],
        [term(i - 1, k - 2 - i) for i in idx],
    ]


# -- symbolic ---------------------------------------------------------------------

X = sympy.Symbol("x")


def sym_term(a, b):
    if a < 0 or b < 0:
        return sympy.Integer(0)
    return X ** a / sympy.factorial(a) * (1 - X) ** b / sympy.factorial(b)


def sym_eulerian(k):
    f1 = sum((sym_term(i, k - 3 - i) for i in range(1, k - 3, 2)), sympy.Integer(0))
    f2 = sum((sym_term(i - 1, k - 2 - i) for i in range(1, k - 1, 2)), sympy.Integer(0))
    f3 = sum((sym_term(i - 2, k - 1 - i) for i in range(3, k - 1, 2)), sympy.Integer(0))
    return sympy.expand(f1), sympy.expand(f2), sympy.expand(f3)


def sym_coeffs(expr):
    """Ascending coefficients as Python Fractions-compatible sympy Rationals."""
    poly = sympy.Poly(sympy.expand(expr), X)
    return list(reversed(poly.all_coeffs()))
