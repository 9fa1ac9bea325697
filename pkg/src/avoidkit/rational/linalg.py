"""Small dense determinants and Cramer solves, generic over exact rings.

Entries may be :class:`~fractions.Fraction` or
:class:`~avoidkit.rational.poly.Polynomial`; only ``+``, ``-`` and ``*`` are used.
"""

from __future__ import annotations

from itertools import permutations


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def det(M, zero=0):
    """Leibniz determinant; fine for the 1x1..3x3 blocks used here."""
    n = len(M)
    total = zero
    for p in permutations(range(n)):
        term = None
        for i in range(n):
            term = M[i][p[i]] if term is None else term * M[i][p[i]]
        total = total + term if _perm_sign(p) > 0 else total - term
    return total


def cramer_numerators(M, rhs, zero=0):
    """``(det M, [det M_j])`` with column j of M replaced by ``rhs``."""
    n = len(M)
    d = det(M, zero)
    nums = []
    for j in range(n):
        Mj = [[rhs[i] if c == j else M[i][c] for c in range(n)] for i in range(n)]
        nums.append(det(Mj, zero))
    return d, nums
