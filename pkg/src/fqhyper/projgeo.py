"""Projective point enumeration and the exact point-counting kernel.

Canonical point representatives have their leftmost nonzero coordinate equal
to 1, which splits P^N into affine blocks by leading-one position.  The
counting kernel evaluates a polynomial on whole blocks at once with table
lookups on numpy arrays; partitioning by block also defines the data-parallel
contract (disjoint blocks, pure evaluation, associative integer reduction),
so worker count can never change a reported number.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .gf import Field, embed, make_field
from .poly import Hypersurface, MultiPoly


def proj_point_count(q: int, n: int) -> int:
    """|P^N(F_q)| = q^N + ... + q + 1."""
    return sum(q**i for i in range(n + 1))


def enum_points(field: Field, n: int) -> Iterator[tuple]:
    """Canonical points of P^N in block order: leading-one position, then
    lexicographic order of the free coordinates."""
    if n < 1:
        raise ValueError("projective dimension must be >= 1")
    q = field.q
    for lead in range(n + 1):
        free = n - lead
        for idx in range(q**free):
            coords = [0] * lead + [1]
            rest = []
            v = idx
            for _ in range(free):
                rest.append(v % q)
                v //= q
            coords.extend(reversed(rest))
            yield tuple(coords)


def canonicalize(field: Field, vec) -> tuple:
    """Scale a nonzero vector so its leftmost nonzero coordinate is 1."""
    lead = next((i for i, c in enumerate(vec) if c), None)
    if lead is None:
        raise ValueError("zero vector has no canonical representative")
    inv = field.inv(vec[lead])
    return tuple(field.mul(inv, c) for c in vec)


# -- numpy kernel caches, keyed by the (interned) Field instance

_NP_FIELD: dict = {}
_NP_BLOCKS: dict = {}
_NP_POWERS: dict = {}


def _np_field(f: Field):
    data = _NP_FIELD.get(f)
    if data is None:
        q = f.q
        exp2 = np.array(f.exp_table * 2, dtype=np.int32)
        log = np.zeros(q, dtype=np.int32)
        for c in range(1, q):
            log[c] = f.log_table[c]
        digits = np.zeros((q, f.s), dtype=np.int16)
        for c in range(q):
            digits[c] = f._digits[c]
        data = (exp2, log, digits)
        _NP_FIELD[f] = data
    return data


def _mul_vec(f: Field, a, b):
    exp2, log, _ = _np_field(f)
    out = exp2[log[a] + log[b]]
    np.place(out, (a == 0) | (b == 0), 0)
    return out


def point_blocks(field: Field, n: int) -> list:
    """Canonical points of P^N as one integer matrix per leading-one block."""
    key = (field, n)
    blocks = _NP_BLOCKS.get(key)
    if blocks is None:
        q = field.q
        blocks = []
        for lead in range(n + 1):
            free = n - lead
            npts = q**free
            arr = np.zeros((npts, n + 1), dtype=np.int32)
            arr[:, lead] = 1
            base = np.arange(npts, dtype=np.int64)
            for j in range(free):
                arr[:, lead + 1 + j] = (base // (q ** (free - 1 - j))) % q
            blocks.append(arr)
        _NP_BLOCKS[key] = blocks
    return blocks


def _power_table(field: Field, max_exp: int):
    key = (field, max_exp)
    pw = _NP_POWERS.get(key)
    if pw is None:
        pw = np.zeros((field.q, max_exp + 1), dtype=np.int32)
        for a in range(field.q):
            for e in range(max_exp + 1):
                pw[a, e] = field.pow(a, e)
        _NP_POWERS[key] = pw
    return pw


def eval_on_block(poly: MultiPoly, pts) -> np.ndarray:
    """Values of the polynomial at every row of a point matrix."""
    f = poly.field
    npts = pts.shape[0]
    if not poly.terms:
        return np.zeros(npts, dtype=np.int32)
    pw = _power_table(f, poly.total_degree())
    _, _, digits = _np_field(f)
    if f.p == 2:
        acc = np.zeros(npts, dtype=np.int32)
    else:
        acc = np.zeros((npts, f.s), dtype=np.int32)
    for exps, c in poly.terms:
        col = None
        for i, e in enumerate(exps):
            if e:
                v = pw[pts[:, i], e]
                col = v if col is None else _mul_vec(f, col, v)
        if col is None:
            col = np.full(npts, c, dtype=np.int32)
        elif c != 1:
            col = _mul_vec(f, col, np.int32(c))
        if f.p == 2:
            acc ^= col
        else:
            acc += digits[col]
    if f.p == 2:
        return acc
    acc %= f.p
    codes = np.zeros(npts, dtype=np.int32)
    for j in range(f.s - 1, -1, -1):
        codes = codes * f.p + acc[:, j]
    return codes


def zero_mask(poly: MultiPoly) -> np.ndarray:
    """Boolean mask over the canonical points of P^(nvars-1), block order."""
    blocks = point_blocks(poly.field, poly.nvars - 1)
    return np.concatenate([eval_on_block(poly, b) == 0 for b in blocks])


def count_zeros(poly: MultiPoly, jobs: int = 1) -> int:
    """Number of canonical projective points where the polynomial vanishes."""
    blocks = point_blocks(poly.field, poly.nvars - 1)

    def one(b):
        return int((eval_on_block(poly, b) == 0).sum())

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return sum(pool.map(one, blocks))
    return sum(one(b) for b in blocks)


def count_points(x: Hypersurface, jobs: int = 1) -> int:
    """N_q(X): exact number of rational points."""
    return count_zeros(x.poly, jobs)


def extend_poly(poly: MultiPoly, t: int) -> MultiPoly:
    """The same form with coefficients embedded into GF(q^t)."""
    f = poly.field
    big = make_field(f.p, f.s * t)
    return poly.map_coeffs(embed(f, big), field=big)


def count_points_ext(x: Hypersurface, t: int, jobs: int = 1) -> int:
    """N_{q^t}(X), counting over the degree-t extension."""
    if t == 1:
        return count_points(x, jobs)
    return count_zeros(extend_poly(x.poly, t), jobs)


def common_zeros(polys: Sequence[MultiPoly]) -> list[tuple]:
    """Canonical points where every given polynomial vanishes."""
    assert polys, "need at least one polynomial"
    field, nvars = polys[0].field, polys[0].nvars
    mask = zero_mask(polys[0])
    for p in polys[1:]:
        mask &= zero_mask(p)
    blocks = point_blocks(field, nvars - 1)
    all_pts = np.concatenate(blocks)
    return [tuple(int(c) for c in row) for row in all_pts[mask]]


def points_of(x: Hypersurface) -> list[tuple]:
    return common_zeros([x.poly])


# -- linear subspaces, hyperplanes, lines


@dataclass(frozen=True)
class LinearSubspace:
    """A linear subspace of P^N stored as an RREF basis (unique per subspace)."""

    field: Field
    ambient: int
    basis: tuple

    @classmethod
    def span(cls, field: Field, ambient: int, rows) -> "LinearSubspace":
        reduced, _ = linalg.rref(field, [tuple(r) for r in rows])
        return cls(field, ambient, reduced)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def points(self) -> list[tuple]:
        if not self.basis:
            return []
        if len(self.basis) == 1:
            return [canonicalize(self.field, self.basis[0])]
        out = []
        for coeffs in enum_points(self.field, len(self.basis) - 1):
            vec = [0] * (self.ambient + 1)
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, r in enumerate(row):
                        if r:
                            vec[j] = self.field.add(vec[j], self.field.mul(c, r))
            out.append(canonicalize(self.field, vec))
        return out

    def contains(self, point) -> bool:
        return linalg.rank(self.field, list(self.basis) + [tuple(point)]) == len(self.basis)


def hyperplanes_through(subspace: LinearSubspace | None, field: Field, n: int) -> list[tuple]:
    """All hyperplanes of P^N containing the subspace, as canonical linear
    forms.  The empty span gives every hyperplane; a codimension-2 subspace
    gives its pencil of q+1 members."""
    if subspace is None or not subspace.basis:
        return [tuple(pt) for pt in enum_points(field, n)]
    if subspace.dim > n - 1:
        raise ValueError("subspace must be a proper subspace")
    null = linalg.nullspace(field, subspace.basis)
    out = []
    for coeffs in [(1,)] if len(null) == 1 else enum_points(field, len(null) - 1):
        vec = [0] * (n + 1)
        for c, row in zip(coeffs, null):
            if c:
                for j, r in enumerate(row):
                    if r:
                        vec[j] = field.add(vec[j], field.mul(c, r))
        out.append(canonicalize(field, vec))
    return out


def pencil_through(subspace: LinearSubspace, field: Field, n: int) -> list[tuple]:
    if subspace.dim != n - 2:
        raise ValueError("a pencil needs a codimension-2 subspace")
    return hyperplanes_through(subspace, field, n)


def lines_through(point, field: Field, n: int) -> list[tuple]:
    """All (q^N - 1)/(q - 1) lines through the point, each reported once as
    the canonical second point first reached in enumeration order."""
    if n < 2:
        raise ValueError("need N >= 2")
    seen = set()
    out = []
    p = tuple(point)
    for quple in enum_points(field, n):
        if quple == p:
            continue
        key = LinearSubspace.span(field, n, [p, quple]).basis
        if key in seen:
            continue
        seen.add(key)
        out.append(quple)
    return out


# -- hyperplane sections


class _FullyContained:
    """Sentinel: the hyperplane divides the defining form."""

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "FULLY_CONTAINED"


FULLY_CONTAINED = _FullyContained()


def section(x: Hypersurface, form) -> MultiPoly | _FullyContained:
    """The hyperplane section X ∩ {form = 0} as a form on P^(N-1).

    Coordinates are changed so the hyperplane becomes {x_N = 0}; the section
    is the restriction re-indexed to N variables.  Returns FULLY_CONTAINED
    when the form divides F (the hyperplane is a component of X).
    """
    f = x.field
    n = x.ambient
    a = tuple(form)
    if len(a) != n + 1 or not any(a):
        raise ValueError("hyperplane must be a nonzero linear form on P^N")
    al = linalg.complete_rows(f, [a], n + 1)
    al = tuple(al[1:]) + (al[0],)  # prescribed form goes to the last row
    b = linalg.inverse(f, al)
    changed = x.poly.linear_change(b)
    restricted = {e[:-1]: c for e, c in changed.terms if e[-1] == 0}
    if not restricted:
        return FULLY_CONTAINED
    return MultiPoly(f, n, restricted)


def section_count(x: Hypersurface, form) -> int:
    """N_q(X ∩ H) for a hyperplane given as a linear form."""
    sec = section(x, form)
    if sec is FULLY_CONTAINED:
        return proj_point_count(x.field.q, x.ambient - 1)
    return count_zeros(sec)


def hyperplane_incidence(field: Field, n: int) -> np.ndarray:
    """Boolean matrix: rows = canonical forms, columns = canonical points,
    true where the point lies on the hyperplane.  Cached."""
    key = ("incidence", field, n)
    inc = _NP_BLOCKS.get(key)
    if inc is None:
        forms = [tuple(pt) for pt in enum_points(field, n)]
        rows = [zero_mask(MultiPoly.linear_form(field, a)) for a in forms]
        inc = np.vstack(rows)
        _NP_BLOCKS[key] = inc
    return inc
