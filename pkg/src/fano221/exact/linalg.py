"""Determinants and resultants with polynomial entries."""
from __future__ import annotations

from typing import Sequence

from .mpoly import ONE_POLY, ZERO_POLY, MPoly, poly


def _square(m) -> list:
    rows = [[poly(x) for x in row] for row in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    return rows


def det(m: Sequence[Sequence]) -> MPoly:
    """Bareiss fraction-free elimination; every division is exact."""
    a = _square(m)
    n = len(a)
    if n == 0:
        return ONE_POLY
    sign = 1
    prev = ONE_POLY
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ZERO_POLY
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * pivot - a[i][k] * a[k][j]
                a[i][j] = num if prev == ONE_POLY else num.exquo(prev)
            a[i][k] = ZERO_POLY
        prev = pivot
    out = a[n - 1][n - 1]
    return -out if sign < 0 else out


def sylvester(p: MPoly, q: MPoly, var: str) -> list:
    """Sylvester matrix of p and q with respect to ``var``."""
    m, n = p.degree(var), q.degree(var)
    pc = p.coefficients_in(var)
    qc = q.coefficients_in(var)
    size = m + n
    rows = []
    for i in range(n):
        row = [ZERO_POLY] * size
        for k in range(m + 1):
            row[i + m - k] = pc.get(k, ZERO_POLY)
        rows.append(row)
    for i in range(m):
        row = [ZERO_POLY] * size
        for k in range(n + 1):
            row[i + n - k] = qc.get(k, ZERO_POLY)
        rows.append(row)
    return rows


def resultant(p, q, var: str) -> MPoly:
    """Res_var(p, q) as the determinant of the Sylvester matrix."""
    p, q = poly(p), poly(q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial is undefined")
    if p.degree(var) < 1 or q.degree(var) < 1:
        raise ValueError(f"both polynomials need positive degree in {var}")
    return det(sylvester(p, q, var))


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), 0 * a[0][0]) for j in range(m)] for i in range(n)]


def solve_rational(a, rhs):
    """Least-squares-free exact solve of an overdetermined consistent system.

    ``a`` is a list of rows of rationals (more rows than columns allowed).
    Returns (solution, residual) where residual lists each row's mismatch;
    free columns are set to zero.
    """
    from .rational import ZERO, Q

    rows = [[Q(x) for x in r] + [Q(y)] for r, y in zip(a, rhs)]
    ncol = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    sol = [ZERO] * ncol
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    residual = [
        sum((Q(x) * s for x, s in zip(row, sol)), ZERO) - Q(y) for row, y in zip(a, rhs)
    ]
    return sol, residual
