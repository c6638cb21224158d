"""Exact nullspace computation via fraction-free (Bareiss) elimination.

Input matrices hold arbitrary-precision integers; intermediate values stay
integral throughout (each elimination step divides exactly by the previous
pivot), so there is no rational blowup and no rounding anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def row_echelon_bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns (echelon matrix, pivot column indices). The input is not
    mutated. Pivot columns are a row-order invariant of the matrix (they
    are exactly the columns not linearly dependent on earlier columns).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    piv_cols: list[int] = []
    prev_pivot = 1
    r0 = 0
    for c in range(n_cols):
        pr = next((i for i in range(r0, n_rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r0:
            m[r0], m[pr] = m[pr], m[r0]
        pivot = m[r0][c]
        for i in range(r0 + 1, n_rows):
            mic = m[i][c]
            row_i, row_p = m[i], m[r0]
            for j in range(c, n_cols):
                row_i[j] = (row_i[j] * pivot - mic * row_p[j]) // prev_pivot
        piv_cols.append(c)
        prev_pivot = pivot
        r0 += 1
        if r0 == n_rows:
            break
    return m[:r0], piv_cols


def nullspace_vector(rows: list[list[int]]) -> list[int] | None:
    """Canonical primitive nullspace vector, or None if the nullspace is 0.

    The vector solves A v = 0 with the first free column set to 1 and all
    other free columns set to 0, then is scaled to coprime integers. Because
    pivot columns do not depend on row order, permuting the input rows
    yields the same vector.
    """
    if not rows:
        return None
    echelon, piv_cols = row_echelon_bareiss(rows)
    n_cols = len(rows[0])
    piv_set = set(piv_cols)
    free = [c for c in range(n_cols) if c not in piv_set]
    if not free:
        return None
    fc = free[0]
    sol = [Fraction(0)] * n_cols
    sol[fc] = Fraction(1)
    for r in range(len(piv_cols) - 1, -1, -1):
        pc = piv_cols[r]
        acc = Fraction(0)
        row = echelon[r]
        for c in range(pc + 1, n_cols):
            if row[c] and sol[c]:
                acc += row[c] * sol[c]
        sol[pc] = -acc / row[pc]
    scale = 1
    for v in sol:
        scale = lcm(scale, v.denominator)
    ints = [int(v * scale) for v in sol]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints]
