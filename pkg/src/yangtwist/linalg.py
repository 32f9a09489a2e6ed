"""Exact sparse linear algebra over Scalar: rank, solving, nullspaces."""

from __future__ import annotations

from .scalar import ONE, ZERO, as_scalar


def _axpy(row, c, other):
    """row -= c * other, in place, dropping zeros."""
    for k, v in other.items():
        s = row.get(k)
        if s is None:
            row[k] = -c * v
        else:
            s = s - c * v
            if s:
                row[k] = s
            else:
                del row[k]


def row_reduce(rows, column_order=None):
    """Reduced row echelon form of sparse rows (dict column -> Scalar).

    Returns (pivot rows keyed by pivot column, list of pivot columns in
    the order they were created). Pivots are taken at the smallest column
    under `column_order` (a key function), so results are deterministic.
    """
    key = column_order or (lambda c: c)
    pivots = {}
    order = []
    for row in rows:
        row = {k: as_scalar(v) for k, v in row.items() if v}
        for col in order:
            c = row.get(col)
            if c is not None:
                _axpy(row, c, pivots[col])
        if not row:
            continue
        col = min(row, key=key)
        inv = ONE / row[col]
        row = {k: v * inv for k, v in row.items()}
        for other in pivots.values():
            c = other.get(col)
            if c is not None:
                _axpy(other, c, row)
        pivots[col] = row
        order.append(col)
    return pivots, order


def rank(rows):
    return len(row_reduce(rows)[0])


def solve(equations, rhs, unknown_order=None):
    """Solve sum_j A[i][j] x_j = b_i exactly.

    equations: list of dict unknown -> coefficient; rhs: list of Scalars.
    Returns (solution dict with free unknowns set to 0, list of free
    unknowns) or None when inconsistent.
    """
    marker = ("__rhs__",)
    rows = []
    for eq, b in zip(equations, rhs):
        row = dict(eq)
        b = as_scalar(b)
        if b:
            row[marker] = b
        rows.append(row)
    if unknown_order is None:
        unknown_order = lambda u: (u == marker, repr(u))
    else:
        base = unknown_order
        unknown_order = lambda u: (u == marker, base(u) if u != marker else 0)
    pivots, order = row_reduce(rows, unknown_order)
    if marker in pivots:
        return None
    unknowns = set()
    for eq in equations:
        unknowns.update(eq)
    sol = {}
    for col, row in pivots.items():
        sol[col] = row.get(marker, ZERO)
    free = sorted((u for u in unknowns if u not in pivots), key=repr)
    for u in free:
        sol[u] = ZERO
    return sol, free


def nullspace(rows, columns):
    """Basis of {x : rows . x = 0} over the given column list."""
    pivots, order = row_reduce(rows, lambda c: columns.index(c))
    free = [c for c in columns if c not in pivots]
    basis = []
    for fcol in free:
        vec = {fcol: ONE}
        for pcol, row in pivots.items():
            c = row.get(fcol)
            if c is not None:
                vec[pcol] = -c
        basis.append(vec)
    return basis


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        for k in range(m):
            x = a[i][k]
            if not x:
                continue
            rowb = b[k]
            for j in range(p):
                y = rowb[j]
                if y:
                    out[i][j] = out[i][j] + x * y
    return out


def matadd(a, b, sign=1):
    return [[x + y if sign == 1 else x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a, c):
    c = as_scalar(c)
    return [[x * c for x in row] for row in a]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def kron(a, b):
    n, m = len(a), len(a[0])
    p, q = len(b), len(b[0])
    out = [[ZERO] * (m * q) for _ in range(n * p)]
    for i in range(n):
        for j in range(m):
            x = a[i][j]
            if not x:
                continue
            for k in range(p):
                for l in range(q):
                    y = b[k][l]
                    if y:
                        out[i * p + k][j * q + l] = x * y
    return out


def matrix_rank(m):
    rows = [{j: x for j, x in enumerate(row) if x} for row in m]
    return rank(rows)


def column_space_basis(m):
    """Basis of the column space, as column vectors (lists)."""
    cols = [[m[i][j] for i in range(len(m))] for j in range(len(m[0]))]
    rows = [{i: x for i, x in enumerate(c) if x} for c in cols]
    pivots, order = row_reduce(rows)
    out = []
    for col in order:
        row = pivots[col]
        out.append([row.get(i, ZERO) for i in range(len(m))])
    return out
