"""Dense linear algebra over the prime field Z/p.

Matrices are lists of row lists with entries already reduced mod p.
Sizes here never exceed a handful of rows, so plain Gaussian elimination
with lexicographic pivot choice is both fast enough and deterministic.
"""

from __future__ import annotations


def rref(mat, p):
    """Reduced row echelon form mod p; returns (rows, pivot_columns)."""
    rows = [[x % p for x in row] for row in mat]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel(mat, p):
    """Basis of {v : v @ mat = 0 (mod p)} for mat with len(v) rows."""
    nrows = len(mat)
    if nrows == 0:
        return []
    # transpose and solve mat^T x = 0
    mt = [[mat[i][j] % p for i in range(nrows)] for j in range(len(mat[0]))]
    red, pivots = rref(mt, p)
    free = [c for c in range(nrows) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * nrows
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][f]) % p
        basis.append(v)
    return basis


def row_space_fingerprint(mat, p):
    """Canonical tuple identifying the row space of mat mod p."""
    red, _ = rref(mat, p)
    return tuple(tuple(row) for row in red)


def in_row_space(v, mat, p):
    """Whether v lies in the row space of mat mod p."""
    red, pivots = rref(mat, p)
    w = [x % p for x in v]
    for r, c in enumerate(pivots):
        if w[c]:
            f = w[c]
            w = [(x - f * y) % p for x, y in zip(w, red[r])]
    return not any(w)


def complete_basis(rows, p, dim):
    """Extend independent rows mod p to a full basis of (Z/p)^dim.

    Returns indices-free list: the input rows (reduced) first, then unit
    vectors chosen lexicographically.
    """
    red, pivots = rref(rows, p)
    out = [list(r) for r in red]
    for c in range(dim):
        if c not in pivots:
            e = [0] * dim
            e[c] = 1
            out.append(e)
    return out
