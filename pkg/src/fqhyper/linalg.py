"""Dense matrix helpers over a Field: elimination, rank, inverse, nullspace.

Matrices are tuples of row tuples of element codes.  All routines are exact.
"""

from __future__ import annotations

from .gf import Field


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_vec(f: Field, m, v) -> tuple:
    out = []
    for row in m:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = f.add(acc, f.mul(a, x))
        out.append(acc)
    return tuple(out)


def mat_mul(f: Field, a, b) -> tuple:
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append(tuple(_dot(f, row, col) for col in bt))
    return tuple(out)


def _dot(f: Field, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = f.add(acc, f.mul(a, b))
    return acc


def rref(f: Field, rows) -> tuple[tuple, tuple[int, ...]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = f.inv(m[r][c])
        m[r] = [f.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(f: Field, rows) -> int:
    return len(rref(f, rows)[0])


def det(f: Field, m) -> int:
    a = [list(r) for r in m]
    n = len(a)
    d = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return 0
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            d = f.neg(d)
        d = f.mul(d, a[c][c])
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                factor = f.mul(inv, a[i][c])
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[c])]
    return d


def inverse(f: Field, m):
    """Inverse matrix, or None when singular."""
    n = len(m)
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    reduced, pivots = rref(f, aug)
    if len(reduced) < n or pivots[:n] != tuple(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in reduced)


def nullspace(f: Field, rows) -> tuple:
    """Basis of the right nullspace {v : rows . v = 0}."""
    ncols = len(rows[0]) if rows else 0
    reduced, pivots = rref(f, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(reduced[r][fc])
        basis.append(tuple(v))
    return tuple(basis)


def complete_rows(f: Field, rows, n: int) -> tuple:
    """An invertible n x n matrix whose leading rows are the given ones."""
    chosen = [tuple(r) for r in rows]
    have = len(chosen)
    for i in range(n):
        if have == n:
            break
        e = tuple(1 if j == i else 0 for j in range(n))
        if rank(f, chosen + [e]) > have:
            chosen.append(e)
            have += 1
    assert have == n, "input rows were dependent"
    return tuple(chosen)


def transpose(m) -> tuple:
    return tuple(zip(*m))


def random_invertible(f: Field, n: int, rng) -> tuple:
    while True:
        m = tuple(tuple(rng.randrange(f.q) for _ in range(n)) for _ in range(n))
        if det(f, m) != 0:
            return m
