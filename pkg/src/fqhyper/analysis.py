"""Structural analyzers: singular locus, linear components, space filling,
cone vertices, line coverage, hyperplane-section spectra.

Smoothness "over the closure" is approximated by bounded extension sweeps
(t <= t_max, default 2).  Finding no singular rational point on any tested
extension is a necessary-condition battery, not a certificate of smoothness
over the algebraic closure; all checks at working scale are decided by t <= 2.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field

from . import linalg, projgeo
from .poly import Hypersurface, MultiPoly
from .projgeo import (
    FULLY_CONTAINED,
    LinearSubspace,
    count_points,
    count_zeros,
    enum_points,
    hyperplane_incidence,
    hyperplanes_through,
    lines_through,
    proj_point_count,
    section,
    zero_mask,
)


class AmbientNotSupported(ValueError):
    """Line-coverage search is implemented for surfaces in P^3 only."""


@dataclass(frozen=True)
class SingularityReport:
    """Rational singular points found on each tested extension.

    When every formal partial vanishes identically the gradient gives no
    information: the flag is set, the p-th root of the form is attached, and
    no points are enumerated (every point of X is singular then).
    """

    tested_extensions: tuple[int, ...]
    points_by_extension: dict[int, list[tuple]]
    gradient_identically_zero: bool
    pth_root: MultiPoly | None = None

    @property
    def singular(self) -> bool:
        return self.gradient_identically_zero or any(self.points_by_extension.values())

    def points(self, t: int = 1) -> list[tuple]:
        return self.points_by_extension.get(t, [])

    def to_json(self) -> dict:
        return {
            "tested_extensions": list(self.tested_extensions),
            "points_by_extension": {str(t): [list(p) for p in pts] for t, pts in self.points_by_extension.items()},
            "gradient_identically_zero": self.gradient_identically_zero,
            "singular": self.singular,
        }


def singular_points(x: Hypersurface, t_max: int = 2) -> SingularityReport:
    """Points over GF(q^t), t <= t_max, where F and every dF/dx_i vanish.

    Every reported point is re-verified by scalar evaluation, independently
    of the vectorized search that produced it.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    grad = x.poly.gradient()
    if all(g.is_zero() for g in grad):
        return SingularityReport(
            tested_extensions=(),
            points_by_extension={},
            gradient_identically_zero=True,
            pth_root=x.poly.pth_power_root(),
        )
    found: dict[int, list[tuple]] = {}
    for t in range(1, t_max + 1):
        if t == 1:
            polys = [x.poly] + [g for g in grad if not g.is_zero()]
        else:
            polys = [projgeo.extend_poly(p, t) for p in [x.poly] + [g for g in grad if not g.is_zero()]]
        pts = projgeo.common_zeros(polys)
        for p in pts:  # independent scalar re-verification
            assert all(poly.evaluate(p) == 0 for poly in polys), "vectorized search disagrees with evaluate"
        found[t] = pts
    return SingularityReport(
        tested_extensions=tuple(range(1, t_max + 1)),
        points_by_extension=found,
        gradient_identically_zero=False,
    )


def linear_components(x: Hypersurface) -> list[tuple]:
    """Linear forms over GF(q) dividing the defining form, as canonical
    coefficient tuples; the empty list certifies there is none.

    Candidates are pre-filtered by rational-point containment (a hyperplane
    dividing F lies inside X) and then confirmed by exact division, which
    stays valid when d > q.
    """
    f = x.field
    n = x.ambient
    mask = zero_mask(x.poly)
    inc = hyperplane_incidence(f, n)
    candidates = (inc & ~mask[None, :]).sum(axis=1) == 0  # no H-point off X
    if not candidates.any():
        return []
    forms = [tuple(pt) for pt in enum_points(f, n)]
    out = []
    for i in candidates.nonzero()[0]:
        a = forms[i]
        if x.poly.divides_linear(MultiPoly.linear_form(f, a)) is not None:
            out.append(a)
    return out


def is_space_filling(x: Hypersurface) -> bool:
    """True when X(F_q) is all of P^N(F_q)."""
    return count_points(x) == proj_point_count(x.field.q, x.ambient)


@dataclass(frozen=True)
class ConeReport:
    """Maximal rational vertex subspace and, when present, an extracted base.

    The base is the defining form re-indexed to a complementary set of
    coordinates; its ambient dimension is N - k - 1 for a vertex P^k.
    """

    vertex: LinearSubspace
    base_poly: MultiPoly | None
    base_ambient: int | None

    @property
    def is_cone(self) -> bool:
        return self.vertex.dim >= 0

    def base_hypersurface(self) -> Hypersurface | None:
        if self.base_poly is None or self.base_ambient is None or self.base_ambient < 2:
            return None
        return Hypersurface(self.base_poly)

    def to_json(self) -> dict:
        return {
            "vertex_dim": self.vertex.dim,
            "vertex_basis": [list(r) for r in self.vertex.basis],
            "base_ambient": self.base_ambient,
            "base_poly": self.base_poly.render() if self.base_poly is not None else None,
        }


def _is_vertex_point(x: Hypersurface, v) -> bool:
    """Exact test: after moving v to the last coordinate point, F has no
    occurrence of the last variable."""
    f = x.field
    n1 = x.ambient + 1
    rows = linalg.complete_rows(f, [tuple(v)], n1)
    m = linalg.transpose(tuple(rows[1:]) + (rows[0],))  # v becomes the last column
    changed = x.poly.linear_change(m)
    return all(e[-1] == 0 for e, _ in changed.terms)


def cone_analysis(x: Hypersurface, rng_seed: int = 0) -> ConeReport:
    """Find all rational vertex points, close them under span, and extract
    the base when the vertex is nonempty.

    A quick numeric pre-filter (F(u + t v) = F(u) on sampled u, t) rejects
    most candidates; survivors get the exact coordinate-change test, and the
    span closure is re-verified point by point.
    """
    f = x.field
    n = x.ambient
    rng = random.Random(rng_seed)
    samples = [tuple(rng.randrange(f.q) for _ in range(n + 1)) for _ in range(8)]
    ts = [rng.randrange(1, f.q) for _ in samples]

    def quick_reject(v) -> bool:
        for u, t in zip(samples, ts):
            shifted = tuple(f.add(ui, f.mul(t, vi)) for ui, vi in zip(u, v))
            if x.poly.evaluate(shifted) != x.poly.evaluate(u):
                return True
        return False

    vertex_pts = []
    for v in projgeo.points_of(x):
        if quick_reject(v):
            continue
        if _is_vertex_point(x, v):
            vertex_pts.append(v)
    vertex = LinearSubspace.span(f, n, vertex_pts)
    for p in vertex.points():  # guard against rational-point artifacts
        assert _is_vertex_point(x, p), "span closure left the vertex set"
    if vertex.dim < 0:
        return ConeReport(vertex=vertex, base_poly=None, base_ambient=None)
    k = vertex.dim
    rows = linalg.complete_rows(f, vertex.basis, n + 1)
    complement = tuple(rows[k + 1 :]) + tuple(rows[: k + 1])  # vertex directions last
    m = linalg.transpose(complement)
    changed = x.poly.linear_change(m)
    keep = n - k  # number of base variables
    assert all(all(e == 0 for e in exps[keep:]) for exps, _ in changed.terms)
    base = MultiPoly(f, keep, {exps[:keep]: c for exps, c in changed.terms})
    return ConeReport(vertex=vertex, base_poly=base, base_ambient=n - k - 1)


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    witnesses: dict = dc_field(default_factory=dict)
    uncovered: tuple = ()

    def to_json(self) -> dict:
        return {
            "covered": self.covered,
            "witnesses": {str(list(p)): list(w) for p, w in self.witnesses.items()},
            "uncovered": [list(p) for p in self.uncovered],
        }


def covered_by_lines(x: Hypersurface) -> CoverageReport:
    """For a surface in P^3: does every rational point lie on a line inside X?

    The witness map records one line (as its canonical second point) per
    covered point; higher-dimensional inputs should be reduced through
    cone_analysis first.
    """
    if x.ambient != 3:
        raise AmbientNotSupported("line coverage search expects a surface in P^3")
    f = x.field
    witnesses: dict = {}
    uncovered = []
    for p in projgeo.points_of(x):
        hit = None
        for second in lines_through(p, f, 3):
            if x.poly.restrict_to_line(p, second).is_zero():
                hit = second
                break
        if hit is None:
            uncovered.append(p)
        else:
            witnesses[p] = hit
    return CoverageReport(covered=not uncovered, witnesses=witnesses, uncovered=tuple(uncovered))


def section_spectrum(x: Hypersurface) -> Counter:
    """Multiset {N_q(X ∩ H)} over every hyperplane H of P^N, computed via
    section; a projective invariant."""
    spec: Counter = Counter()
    f, n = x.field, x.ambient
    for h in hyperplanes_through(None, f, n):
        sec = section(x, h)
        if sec is FULLY_CONTAINED:
            spec[proj_point_count(f.q, n - 1)] += 1
        else:
            spec[count_zeros(sec)] += 1
    return spec


def section_spectrum_fast(x: Hypersurface) -> Counter:
    """Same multiset through the point-incidence matrix (no substitutions);
    cross-checked against section_spectrum in the test suite."""
    mask = zero_mask(x.poly)
    inc = hyperplane_incidence(x.field, x.ambient)
    counts = (mask[None, :] & inc).sum(axis=1)
    return Counter(int(c) for c in counts)


def spectrum_json(spec: Counter) -> list:
    return [[k, spec[k]] for k in sorted(spec)]
