"""Constructors for the extremal families: space-filling hypersurfaces,
Hermitian varieties and their cones, extremal quadrics, hyperplane pencil
unions, and the exceptional plane quartic over GF(4)."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .analysis import linear_components
from .bounds import UnsupportedDimension
from .gf import Field, NotASquare
from .poly import Hypersurface, MultiPoly
from .projgeo import count_points, proj_point_count


class ZeroForm(ValueError):
    pass


class NonHermitianMatrix(ValueError):
    """Entries must satisfy a_ji = a_ij^sqrt(q)."""


class NotAPencil(ValueError):
    """The linear forms do not span a 2-dimensional space."""


class RepeatedForm(ValueError):
    pass


class WrongField(ValueError):
    pass


@dataclass(frozen=True)
class AntisymmetricSpec:
    """Strict upper triangle of the (n+2)x(n+2) matrix A with A^t = -A.

    Only entries above the diagonal are representable, which keeps the
    characteristic-2 pitfall (a nonzero diagonal would add x_i^{q+1} terms
    and break the vanishing identity) out of the type entirely.
    """

    n: int
    upper: tuple  # ((i, j, coeff), ...) with i < j

    @classmethod
    def from_dict(cls, n: int, entries: dict) -> "AntisymmetricSpec":
        items = []
        for (i, j), c in sorted(entries.items()):
            if not 0 <= i < j <= n + 1:
                raise ValueError(f"entry ({i},{j}) outside the strict upper triangle")
            if c:
                items.append((i, j, c))
        return cls(n=n, upper=tuple(items))

    @classmethod
    def standard(cls, n: int) -> "AntisymmetricSpec":
        """Consecutive-pair pattern a_{2i,2i+1} = 1, the displayed surface form."""
        return cls.from_dict(n, {(i, i + 1): 1 for i in range(0, n + 1, 2)})

    @classmethod
    def random(cls, n: int, field: Field, rng) -> "AntisymmetricSpec":
        while True:
            entries = {
                (i, j): rng.randrange(field.q)
                for i in range(n + 2)
                for j in range(i + 1, n + 2)
            }
            if any(entries.values()):
                return cls.from_dict(n, entries)


def space_filling(spec: AntisymmetricSpec, field: Field) -> Hypersurface:
    """sum a_ij (x_i x_j^q - x_i^q x_j): degree q+1, vanishing at every
    rational point because x^q = x on GF(q)."""
    if not spec.upper:
        raise ZeroForm("all antisymmetric coefficients are zero")
    q = field.q
    nv = spec.n + 2
    coeffs: dict = {}
    for i, j, c in spec.upper:
        lo = tuple(1 if k == i else (q if k == j else 0) for k in range(nv))
        hi = tuple(q if k == i else (1 if k == j else 0) for k in range(nv))
        coeffs[lo] = field.add(coeffs.get(lo, 0), c)
        coeffs[hi] = field.add(coeffs.get(hi, 0), field.neg(c))
    x = Hypersurface(MultiPoly(field, nv, coeffs))
    assert x.degree == q + 1
    return x


def hermitian(field: Field, n_ambient: int, matrix=None) -> Hypersurface:
    """sum a_ij x_i x_j^sqrt(q) for a Hermitian matrix A (A^t = A^(sqrt q)).

    The default matrix is the identity, giving the Fermat-type form
    x_0^{r+1} + ... + x_N^{r+1} with r = sqrt(q); for N = 3 that is the
    nonsingular Hermitian surface.
    """
    r = field.sqrt_order()
    nv = n_ambient + 1
    if matrix is None:
        matrix = linalg.identity(nv)
    if len(matrix) != nv or any(len(row) != nv for row in matrix):
        raise ValueError(f"matrix must be {nv}x{nv}")
    for i in range(nv):
        for j in range(nv):
            if matrix[j][i] != field.pow(matrix[i][j], r):
                raise NonHermitianMatrix(f"a[{j}][{i}] != a[{i}][{j}]^{r}")
    coeffs: dict = {}
    for i in range(nv):
        for j in range(nv):
            c = matrix[i][j]
            if not c:
                continue
            e = tuple((1 if k == i else 0) + (r if k == j else 0) for k in range(nv))
            v = field.add(coeffs.get(e, 0), c)
            if v:
                coeffs[e] = v
            else:
                coeffs.pop(e, None)
    if not coeffs:
        raise ZeroForm("zero Hermitian matrix")
    return Hypersurface(MultiPoly(field, nv, coeffs))


def hermitian_cone(field: Field, n: int) -> Hypersurface:
    """The identity Hermitian surface form regarded in P^(n+1): a cone over
    that surface whose vertex is the span of the trailing coordinate points
    (projective dimension n-3)."""
    if n < 3:
        raise UnsupportedDimension("cones live in dimension n >= 3; use hermitian() for n = 2")
    r = field.sqrt_order()
    nv = n + 2
    coeffs = {tuple(r + 1 if k == i else 0 for k in range(nv)): 1 for i in range(4)}
    return Hypersurface(MultiPoly(field, nv, coeffs))


@dataclass(frozen=True)
class QuadricPencil:
    """x0 (a.x) + x1 (b.x) together with its singularity decision.

    The form is singular iff det A = 0 for the symmetrized coefficient
    matrix A below, which for ambient n+2 >= 6 variables is forced: for
    n = 2 the decision reduces to the 2x2 minor det [[a2,a3],[b2,b3]].
    """

    surface: Hypersurface
    a: tuple
    b: tuple
    det: int
    det_minor: int | None  # the 2x2 criterion, defined when n = 2
    reducible: bool

    @property
    def singular_by_determinant(self) -> bool:
        return self.det == 0


def quadric_pencil(a, b, field: Field) -> QuadricPencil:
    """The quadric x0 (a0 x0 + ... + a_{n+1} x_{n+1}) + x1 (b0 x0 + ...)."""
    nv = len(a)
    if len(b) != nv or nv < 4:
        raise ValueError("coefficient vectors must share a length >= 4")
    coeffs: dict = {}

    def put(e, c):
        if c:
            v = field.add(coeffs.get(e, 0), c)
            if v:
                coeffs[e] = v
            else:
                coeffs.pop(e, None)

    for j, c in enumerate(a):
        put(tuple((1 if k == 0 else 0) + (1 if k == j else 0) for k in range(nv)), c)
    for j, c in enumerate(b):
        put(tuple((1 if k == 1 else 0) + (1 if k == j else 0) for k in range(nv)), c)
    if not coeffs:
        raise ZeroForm("both coefficient vectors vanish")
    surface = Hypersurface(MultiPoly(field, nv, coeffs))
    # symmetrized matrix: diagonal 2*c_ii, off-diagonal c_ij + c_ji
    two = field.add(1, 1)
    m = [[0] * nv for _ in range(nv)]
    m[0][0] = field.mul(two, a[0])
    m[1][1] = field.mul(two, b[1])
    m[0][1] = m[1][0] = field.add(a[1], b[0])
    for j in range(2, nv):
        m[0][j] = m[j][0] = a[j]
        m[1][j] = m[j][1] = b[j]
    d = linalg.det(field, tuple(tuple(row) for row in m))
    minor = None
    if nv == 4:
        minor = field.sub(field.mul(a[2], b[3]), field.mul(a[3], b[2]))
    reducible = bool(linear_components(surface))
    return QuadricPencil(surface=surface, a=tuple(a), b=tuple(b), det=d, det_minor=minor, reducible=reducible)


def hyperbolic_quadric(field: Field) -> Hypersurface:
    """x0 x1 - x2 x3, the nonsingular extremal quadric surface."""
    coeffs = {(1, 1, 0, 0): 1, (0, 0, 1, 1): field.neg(1)}
    return Hypersurface(MultiPoly(field, 4, coeffs))


def hyperplane_pencil_union(forms, field: Field, nvars: int) -> Hypersurface:
    """Product of d pairwise non-proportional linear forms lying in one
    pencil: d hyperplanes through a common codimension-2 subspace."""
    rows = [tuple(c for c in f) for f in forms]
    d = len(rows)
    if not 2 <= d <= field.q + 1:
        raise ValueError(f"need 2 <= d <= q+1 forms, got {d}")
    if any(len(r) != nvars or not any(r) for r in rows):
        raise ValueError("forms must be nonzero with one coefficient per variable")
    for i in range(d):
        for j in range(i + 1, d):
            if linalg.rank(field, [rows[i], rows[j]]) < 2:
                raise RepeatedForm(f"forms {i} and {j} are proportional")
    if linalg.rank(field, rows) != 2:
        raise NotAPencil("forms must span a 2-dimensional space of linear forms")
    prod = MultiPoly.constant(field, nvars, 1)
    for r in rows:
        prod = prod * MultiPoly.linear_form(field, r)
    return Hypersurface(prod)


GAMMA_TERMS = (
    (4, 0, 0), (0, 4, 0), (0, 0, 4),
    (2, 2, 0), (0, 2, 2), (2, 0, 2),
    (2, 1, 1), (1, 2, 1), (1, 1, 2),
)


def gamma_curve(field: Field) -> Hypersurface:
    """The exceptional plane quartic over GF(4): the unique curve (up to
    projective equivalence) meeting the Sziklai bound, with 14 points."""
    if (field.p, field.s) != (2, 2):
        raise WrongField("the exceptional quartic lives over GF(4)")
    return Hypersurface(MultiPoly(field, 3, {e: 1 for e in GAMMA_TERMS}))


def corollary_surfaces(field: Field) -> dict:
    """The three nonsingular extremal surfaces in P^3: the space-filling
    surface, the Hermitian surface (square q only), and the hyperbolic
    quadric."""
    out = {
        "space_filling": space_filling(AntisymmetricSpec.standard(2), field),
        "hyperbolic_quadric": hyperbolic_quadric(field),
    }
    try:
        out["hermitian"] = hermitian(field, 3)
    except NotASquare:
        out["hermitian"] = None
    return out


def verify_space_filling(x: Hypersurface) -> bool:
    return count_points(x) == proj_point_count(x.field.q, x.ambient)
