"""Positive gradings: find integer weights w > 0 with A·w = 0."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def nullspace(rows: Sequence[Sequence], n: int) -> list:
    """Exact rational nullspace basis of the matrix with the given rows."""
    A = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], n: int) -> int:
    return n - len(nullspace(rows, n))


def _integral(v: Sequence[Fraction]) -> tuple:
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def find_weights(rows: Sequence[Sequence[int]], n: int) -> tuple | None:
    rows = [list(r) for r in rows if any(r)]
    ones = (1,) * n
    if all(sum(r) == 0 for r in rows):
        return ones
    basis = nullspace(rows, n)
    if not basis:
        return None
    if len(basis) == 1:
        v = _integral(basis[0])
        if all(x > 0 for x in v):
            return v
        if all(x < 0 for x in v):
            return tuple(-x for x in v)
        return None
    # several directions: ask an LP for a strictly positive point, then certify exactly
    from scipy.optimize import linprog

    res = linprog(c=[1.0] * n, A_eq=rows, b_eq=[0.0] * len(rows),
                  bounds=[(1.0, None)] * n, method="highs")
    if not res.success:
        return None
    approx = [Fraction(x).limit_denominator(1000) for x in res.x]
    v = _integral(approx)
    if all(x > 0 for x in v) and all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows):
        return v
    return None
