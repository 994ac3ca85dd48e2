"""Rational-number helpers shared by the exact code paths."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

SQRT_BITS = 40


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions, decimal strings, "p/q" strings and floats (exactly)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def fmt_vec(v: Sequence[Fraction]) -> list[str]:
    return [fmt(x) for x in v]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c: Fraction, a: Sequence[Fraction]) -> Vector:
    return tuple(c * x for x in a)


def sq_norm(a: Sequence[Fraction]) -> Fraction:
    return dot(a, a)


def sq_dist(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sq_norm(sub(a, b))


def sqrt_lower(q: Fraction, bits: int = SQRT_BITS) -> Fraction:
    """Largest k / 2**bits not exceeding sqrt(q)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative argument")
    k = math.isqrt(q.numerator * 4**bits // q.denominator)
    return Fraction(k, 2**bits)


def sqrt_upper(q: Fraction, bits: int = SQRT_BITS) -> Fraction:
    """Smallest k / 2**bits not below sqrt(q)."""
    lo = sqrt_lower(q, bits)
    return lo if lo * lo == q else lo + Fraction(1, 2**bits)


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            factor = m[r][col] / p
            if factor:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= factor * row_c[c]
    return sign * result


def affinely_independent(points: Sequence[Sequence[Fraction]]) -> bool:
    """True iff the points are affinely independent (exact rank test)."""
    if len(points) <= 1:
        return True
    base = points[0]
    rows = [list(sub(p, base)) for p in points[1:]]
    return rank(rows) == len(rows)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r
