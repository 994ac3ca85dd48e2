"""Brute-force reference computations, deliberately independent of the package internals."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations


def iso_bruteforce(faces1, faces2) -> bool:
    """Try every vertex bijection."""
    f1 = {frozenset(f) for f in faces1}
    f2 = {frozenset(f) for f in faces2}
    v1 = sorted({v for f in f1 for v in f})
    v2 = sorted({v for f in f2 for v in f})
    if len(v1) != len(v2) or len(f1) != len(f2):
        return False
    for perm in permutations(v2):
        m = dict(zip(v1, perm))
        if {frozenset(m[v] for v in f) for f in f1} == f2:
            return True
    return False


def nerve_bruteforce(family, max_dim):
    """Every subfamily of non-empty sets with a common element, by exhaustive enumeration."""
    idx = [i for i, s in enumerate(family) if s]
    out = set()
    for k in range(1, min(len(idx), max_dim + 1) + 1):
        for sub in combinations(idx, k):
            common = set(family[sub[0]])
            for i in sub[1:]:
                common &= set(family[i])
            if common:
                out.add(tuple(sub))
    return out


def _solve_unique(cols, rhs):
    """Unique solution of sum x_j cols[j] = rhs, or None if singular or inconsistent."""
    m = len(rhs)
    k = len(cols)
    M = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(rhs[i])] for i in range(m)]
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            return None
        M[r], M[piv] = M[piv], M[r]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    if any(M[i][k] != 0 for i in range(r, m)):
        return None
    return [M[i][k] / M[i][i] for i in range(k)]


def hulls_meet_bruteforce(A, B) -> bool:
    """Exact test via basic solutions: some |A'|+|B'| <= dim+2 sub-pair must meet."""
    dim = len(A[0])
    for ka in range(1, dim + 2):
        for kb in range(1, dim + 3 - ka):
            for sa in combinations(A, ka):
                for sb in combinations(B, kb):
                    cols = [list(a) + [1, 0] for a in sa] + [[-x for x in b] + [0, 1] for b in sb]
                    x = _solve_unique(cols, [0] * dim + [1, 1])
                    if x is not None and all(v >= 0 for v in x):
                        return True
    return False


def in_hull_bruteforce(p, P) -> bool:
    dim = len(p)
    for k in range(1, dim + 2):
        for sub in combinations(P, k):
            x = _solve_unique([list(q) + [1] for q in sub], list(p) + [1])
            if x is not None and all(v >= 0 for v in x):
                return True
    return False


def lipschitz_bruteforce(points, values) -> float:
    best = 0.0
    ids = list(points)
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            num = sum((float(x) - float(y)) ** 2 for x, y in zip(values[a], values[b])) ** 0.5
            den = sum((float(x) - float(y)) ** 2 for x, y in zip(points[a], points[b])) ** 0.5
            best = max(best, num / den)
    return best
