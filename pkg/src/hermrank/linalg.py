"""Small exact linear algebra over Q and Q(i).

Matrices are lists of rows.  Every routine works for any exact field type
implementing ``+ - * /`` and truthiness (``mpq``, ``Fraction``,
``GaussianRational``); rational work defaults to ``gmpy2.mpq`` for speed.
"""

from __future__ import annotations

from gmpy2 import mpq

Q = mpq


def rref(matrix, ncols: int | None = None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pivot = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols: int | None = None, one=Q(1)) -> list[list]:
    """Basis of ``{x : M x = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows, pivots = rref(matrix, ncols) if matrix else ([], [])
    zero = one - one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for row, p in zip(rows, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def left_nullspace(matrix, one=Q(1)) -> list[list]:
    if not matrix:
        return []
    return nullspace(transpose(matrix), ncols=len(matrix), one=one)


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), start=row[0] * 0) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), start=v[0] * 0 if v else 0) for row in a]


def det(matrix, one=Q(1)):
    """Determinant by Gaussian elimination."""
    rows = [list(r) for r in matrix]
    n = len(rows)
    result = one
    for c in range(n):
        pivot = next((k for k in range(c, n) if rows[k][c]), None)
        if pivot is None:
            return one - one
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        p = rows[c][c]
        result = result * p
        for k in range(c + 1, n):
            if rows[k][c]:
                f = rows[k][c] / p
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
    return result


def solve(matrix, rhs):
    """One solution of ``M x = rhs`` or ``None`` when inconsistent."""
    ncols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    zero = rhs[0] - rhs[0] if rhs else Q(0)
    x = [zero] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return x


def column_space_basis(vectors) -> list[list]:
    """Independent subset spanning the same space as ``vectors``."""
    if not vectors:
        return []
    _, pivots = rref(transpose(vectors), len(vectors))
    return [vectors[p] for p in pivots]


def intersect_with_kernel(basis, functionals) -> list[list]:
    """Basis of ``{x in span(basis) : f(x) = 0 for each f}``.

    ``basis`` vectors and ``functionals`` live in the same coordinates.
    """
    if not basis:
        return []
    if not functionals:
        return [list(b) for b in basis]
    system = [[sum((fi * bi for fi, bi in zip(f, b)), start=Q(0)) for b in basis] for f in functionals]
    coeffs = nullspace(system, ncols=len(basis))
    dim = len(basis[0])
    out = []
    for c in coeffs:
        out.append([sum((c[k] * basis[k][j] for k in range(len(basis))), start=Q(0)) for j in range(dim)])
    return out
