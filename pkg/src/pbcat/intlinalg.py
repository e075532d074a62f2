"""Exact integer matrix routines: Smith normal form, solving, kernels.

Matrices are lists of lists of Python ints (arbitrary precision), row major.
Pivoting is by minimal absolute value, which keeps entries small at the desk
scale this package targets (a few hundred rows at most).
"""

from __future__ import annotations

from typing import Optional

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in range(rows)]
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k, "shape mismatch"
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            ait = ai[t]
            if ait:
                bt = b[t]
                for j in range(m):
                    oi[j] += ait * bt[j]
    return out


def mat_vec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def copy_matrix(a: Matrix) -> Matrix:
    return [row[:] for row in a]


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U·A·V = D, U and V unimodular, D diagonal
    with d_1 | d_2 | ... | d_r and the rest zero."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    d = copy_matrix(a)
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        drow, srow = d[dst], d[src]
        for j in range(cols):
            drow[j] += c * srow[j]
        urow, usrc = u[dst], u[src]
        for j in range(rows):
            urow[j] += c * usrc[j]

    def add_col(src, dst, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    limit = min(rows, cols)

    def diagonalize(start: int) -> None:
        t = start
        while t < limit:
            piv = None
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best):
                        best = abs(x)
                        piv = (i, j)
                if best == 1:
                    break
            if piv is None:
                return
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            if d[t][t] < 0:
                negate_row(t)
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, rows):
                    if d[i][t]:
                        q = d[i][t] // d[t][t]
                        add_row(t, i, -q)
                        if d[i][t]:
                            # remainder became the smaller pivot
                            swap_rows(t, i)
                            if d[t][t] < 0:
                                negate_row(t)
                            dirty = True
                for j in range(t + 1, cols):
                    if d[t][j]:
                        q = d[t][j] // d[t][t]
                        add_col(t, j, -q)
                        if d[t][j]:
                            swap_cols(t, j)
                            dirty = True
            t += 1

    diagonalize(0)
    # enforce the divisibility chain d_i | d_{i+1}
    while True:
        bad = None
        for i in range(limit - 1):
            x, y = d[i][i], d[i + 1][i + 1]
            if x and y and y % x != 0:
                bad = i
                break
        if bad is None:
            break
        add_col(bad + 1, bad, 1)
        diagonalize(bad)
    return u, d, v


def diagonal_of(d: Matrix) -> list[int]:
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        out.append(d[i][i])
    return out


def rank_of(a: Matrix) -> int:
    _, d, _ = smith_normal_form(a)
    return sum(1 for x in diagonal_of(d) if x != 0)


def solve_integer(a: Matrix, b: list[int]) -> Optional[list[int]]:
    """One integer solution x of A·x = b, or None."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    if len(b) != rows:
        raise ValueError("shape mismatch in solve_integer")
    u, d, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * cols
    diag = diagonal_of(d)
    for i in range(rows):
        di = diag[i] if i < len(diag) else 0
        if di:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
        else:
            if c[i] != 0:
                return None
    return mat_vec(v, y)


def solve_integer_matrix(a: Matrix, b: Matrix, cols_b: Optional[int] = None) -> Optional[Matrix]:
    """X with A·X = B, column by column, or None.  cols_b disambiguates the
    width of B when both matrices have zero rows."""
    rows = len(a)
    if b and len(b) != rows:
        raise ValueError("shape mismatch in solve_integer_matrix")
    if cols_b is None:
        cols_b = len(b[0]) if b else 0
    n = len(a[0]) if a else 0
    if rows == 0:
        return [[0] * cols_b for _ in range(n)]
    xs = []
    for j in range(cols_b):
        col = [b[i][j] for i in range(rows)]
        x = solve_integer(a, col)
        if x is None:
            return None
        xs.append(x)
    return [[xs[j][i] for j in range(cols_b)] for i in range(n)]


def kernel_basis(a: Matrix) -> Matrix:
    """Columns form a basis of the integer kernel of A."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    if cols == 0:
        return []
    if rows == 0:
        return identity_matrix(cols)
    _, d, v = smith_normal_form(a)
    diag = diagonal_of(d)
    r = sum(1 for x in diag if x != 0)
    # kernel columns of D are e_r..e_{cols-1}; push through V
    basis_cols = []
    for j in range(r, cols):
        basis_cols.append([v[i][j] for i in range(cols)])
    return [[col[i] for col in basis_cols] for i in range(cols)] if basis_cols else [[] for _ in range(cols)]


def cokernel_invariants(a: Matrix, ambient: int) -> tuple[int, list[int]]:
    """Invariants of Z^ambient / col-span(A): (free rank, torsion > 1)."""
    if ambient == 0:
        return 0, []
    if not a or not a[0]:
        return ambient, []
    _, d, _ = smith_normal_form(a)
    diag = [abs(x) for x in diagonal_of(d) if x != 0]
    free = ambient - len(diag)
    torsion = sorted(x for x in diag if x > 1)
    return free, torsion
