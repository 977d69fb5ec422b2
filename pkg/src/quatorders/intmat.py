"""Exact integer matrix utilities: Hermite normal form, kernels,
determinants and adjugates for the small (mostly 4x4) matrices the
lattice layer works with.
"""

from __future__ import annotations

from math import gcd


def xgcd(a: int, b: int):
    """(x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0 for (a,b) != (0,0)."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _reduce_rows(rows, pivot_width):
    """Incremental integer row reduction with full-width row operations.

    Pivots are searched in columns [0, pivot_width). Returns
    (basis_by_column, leftovers) where leftovers are rows that became
    zero on the pivot columns but not beyond (used for kernels).
    """
    basis: dict[int, list[int]] = {}
    leftovers = []
    for vec in rows:
        vec = list(vec)
        while True:
            c = next((i for i in range(pivot_width) if vec[i]), None)
            if c is None:
                if any(vec):
                    leftovers.append(vec)
                break
            if c not in basis:
                if vec[c] < 0:
                    vec = [-x for x in vec]
                basis[c] = vec
                break
            row = basis[c]
            a, b = row[c], vec[c]
            if b % a == 0:
                q = b // a
                vec = [vj - q * rj for vj, rj in zip(vec, row)]
            else:
                x, y, g = xgcd(a, b)
                ag, bg = a // g, b // g
                basis[c] = [x * rj + y * vj for rj, vj in zip(row, vec)]
                vec = [-bg * rj + ag * vj for rj, vj in zip(row, vec)]
    return basis, leftovers


def hnf(rows):
    """Row-style Hermite normal form of the lattice spanned by rows.

    Returns the list of nonzero pivot rows: pivots positive, strictly
    increasing pivot columns, entries above each pivot reduced into
    [0, pivot). Unique for a given row span.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    basis_by_col, leftovers = _reduce_rows(work, ncols)
    assert not leftovers
    basis = [basis_by_col[c] for c in sorted(basis_by_col)]
    for k in range(1, len(basis)):
        row = basis[k]
        c = next(i for i, x in enumerate(row) if x)
        for other in basis[:k]:
            q = other[c] // row[c]
            if q:
                for j in range(c, ncols):
                    other[j] -= q * row[j]
    return basis


def left_kernel(mat):
    """Z-basis of {v : v @ mat = 0} via reduction of [mat | I]."""
    n = len(mat)
    ncols = len(mat[0]) if n else 0
    aug = [list(mat[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    _, leftovers = _reduce_rows(aug, ncols)
    return hnf([vec[ncols:] for vec in leftovers])


def matmul(a, b):
    """Integer (or Fraction) matrix product."""
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def matvec(m, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in m]


def vecmat(v, m):
    ncols = len(m[0])
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(ncols)]


def det(m):
    """Determinant by cofactor expansion (tiny matrices only)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    sign = 1
    for j in range(n):
        if m[0][j]:
            minor = [[row[k] for k in range(n) if k != j] for row in m[1:]]
            total += sign * m[0][j] * det(minor)
        sign = -sign
    return total


def adjugate(m):
    """Adjugate matrix: m @ adjugate(m) == det(m) * I."""
    n = len(m)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[m[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def scale_rows(m, s):
    return [[x * s for x in row] for row in m]


def content_matrix(m) -> int:
    g = 0
    for row in m:
        for x in row:
            g = gcd(g, x)
    return g
