"""Exact feasibility LPs over the rationals.

Phase-one simplex on a dense Fraction tableau with Bland's rule, so it
terminates and every answer is exact. Problems here are tiny (tens of
variables), which is what makes pure-Python Fractions affordable.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

_ZERO = Fraction(0)


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Return x >= 0 with A x = b, or None if no such x exists.

    Infeasibility is decided by an exact phase-one optimum that is strictly
    positive, so None is a proof, not a numerical judgement.
    """
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    rows: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(a) for a in A[i]]
        rhs = Fraction(b[i])
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        art = [_ZERO] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    width = n + m
    # reduced costs of the phase-one objective (sum of artificials)
    cost = [_ZERO] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    basis = list(range(n, n + m))

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen for a phase-one problem (objective bounded below by 0)
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(rows, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:
        return None
    x = [_ZERO] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][width]
    return x


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        prow[:] = [a / p for a in prow]
    nz = [j for j, a in enumerate(prow) if a != 0]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f != 0:
                for j in nz:
                    row[j] -= f * prow[j]
    f = cost[c]
    if f != 0:
        for j in nz:
            cost[j] -= f * prow[j]


def check_solution(A, b, x) -> bool:
    """Exact residual check used by callers that want belt and braces."""
    if any(v < 0 for v in x):
        return False
    for row, rhs in zip(A, b):
        if sum((Fraction(a) * v for a, v in zip(row, x)), _ZERO) != Fraction(rhs):
            return False
    return True
