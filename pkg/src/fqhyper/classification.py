"""Bound comparison plus structural classification of extremal hypersurfaces.

`classify` measures N_q(X), fills a BoundReport, and when X attains the
degree-d bound checks which extremal family the surface is consistent with:
space-filling (d = q+1), a cone over the Hermitian surface (d = sqrt(q)+1),
or an extremal quadric (d = 2).  Consistency is established from invariant
fingerprints and cone reduction, never asserted as a proven equivalence; a
bound-attaining hypersurface matching no family comes back `unclassified`,
which is the counterexample alarm.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import bounds
from .analysis import cone_analysis, is_space_filling, linear_components, singular_points
from .constructions import hermitian, hyperbolic_quadric
from .equivalence import Fingerprint, fingerprint
from .gf import Field, NotASquare
from .poly import Hypersurface
from .projgeo import count_points


EXCLUDED = "excluded"
BELOW_BOUND = "below_bound"
EXCEEDS_BOUND = "exceeds_bound"
CASE_SPACE_FILLING = "space_filling"
CASE_HERMITIAN = "hermitian_cone"
CASE_QUADRIC = "quadric"
CASE_SZIKLAI_CURVE = "sziklai_curve"
UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class Classification:
    status: str
    report: bounds.BoundReport
    evidence: dict

    @property
    def alarm(self) -> bool:
        """True for the outcomes the theory says cannot happen."""
        return self.status in (UNCLASSIFIED, EXCEEDS_BOUND)

    def to_json(self) -> dict:
        return {"status": self.status, "report": self.report.to_json(), "evidence": self.evidence}


@functools.lru_cache(maxsize=None)
def _reference_fingerprint(field: Field, kind: str) -> Fingerprint:
    if kind == "hermitian":
        return fingerprint(hermitian(field, 3))
    if kind == "quadric":
        return fingerprint(hyperbolic_quadric(field))
    raise ValueError(kind)


def _antisymmetric_support(x: Hypersurface) -> bool:
    """Is F literally sum a_ij (x_i x_j^q - x_i^q x_j)?  Degree-(q+1) forms
    vanishing on all of P^N are exactly these combinations."""
    f = x.field
    q = f.q
    seen: dict = {}
    for exps, c in x.poly.terms:
        nz = [(k, e) for k, e in enumerate(exps) if e]
        if len(nz) != 2:
            return False
        (i, ei), (j, ej) = nz
        if (ei, ej) == (1, q):
            seen.setdefault((i, j), {})["lo"] = c
        elif (ei, ej) == (q, 1):
            seen.setdefault((i, j), {})["hi"] = c
        else:
            return False
    for parts in seen.values():
        if set(parts) != {"lo", "hi"} or parts["hi"] != f.neg(parts["lo"]):
            return False
    return bool(seen)


def _hermitian_consistency(x: Hypersurface, evidence: dict) -> bool:
    """Vertex of dimension n-3 (empty for n = 2) over a base whose
    fingerprint matches the reference Hermitian surface."""
    n = x.ambient - 1
    rep = cone_analysis(x)
    evidence["vertex_dim"] = rep.vertex.dim
    if rep.vertex.dim != n - 3:
        return False
    if n == 2:
        base = x
    else:
        if rep.base_ambient != 3:
            return False
        base = rep.base_hypersurface()
        if base is None:
            return False
    ref = _reference_fingerprint(x.field, "hermitian")
    got = fingerprint(base)
    evidence["base_fingerprint_matches_hermitian"] = got == ref
    return got == ref


def _quadric_consistency(x: Hypersurface, evidence: dict) -> bool:
    """Full cone reduction onto a surface matching the hyperbolic quadric."""
    n = x.ambient - 1
    rep = cone_analysis(x)
    evidence["vertex_dim"] = rep.vertex.dim
    if n == 2:
        base = x
        if rep.vertex.dim != -1:
            return False
    else:
        if rep.vertex.dim != n - 3 or rep.base_ambient != 3:
            return False
        base = rep.base_hypersurface()
        if base is None:
            return False
    ref = _reference_fingerprint(x.field, "quadric")
    got = fingerprint(base)
    evidence["base_fingerprint_matches_quadric"] = got == ref
    return got == ref


def classify(x: Hypersurface, t_max: int = 2) -> Classification:
    """BoundReport plus the extremal-family verdict for one hypersurface."""
    f = x.field
    q = f.q
    n = x.ambient - 1
    d = x.degree
    comps = linear_components(x)
    measured = count_points(x)
    report = bounds.make_report(n, d, q, measured, linear_component_free=not comps)
    evidence: dict = {"linear_components": [list(c) for c in comps]}

    if comps:
        return Classification(status=EXCLUDED, report=report, evidence=evidence)
    if report.exceeds_any:
        return Classification(status=EXCEEDS_BOUND, report=report, evidence=evidence)

    if n == 1:
        # plane curves: the Sziklai bound takes over
        if d >= 2 and measured == report.sziklai:
            evidence["sziklai_equality_possible"] = bounds.sziklai_equality_possible(d, q)
            if bounds.sziklai_equality_possible(d, q):
                return Classification(status=CASE_SZIKLAI_CURVE, report=report, evidence=evidence)
            return Classification(status=UNCLASSIFIED, report=report, evidence=evidence)
        return Classification(status=BELOW_BOUND, report=report, evidence=evidence)

    if not report.achieves_theta:
        return Classification(status=BELOW_BOUND, report=report, evidence=evidence)

    evidence["degree_candidates"] = sorted(bounds.extremal_degree_candidates(q))
    if d == q + 1:
        filling = is_space_filling(x)
        antisym = _antisymmetric_support(x)
        evidence["is_space_filling"] = filling
        evidence["antisymmetric_form"] = antisym
        if filling and antisym:
            return Classification(status=CASE_SPACE_FILLING, report=report, evidence=evidence)
        return Classification(status=UNCLASSIFIED, report=report, evidence=evidence)

    sqrt_plus_one = None
    try:
        sqrt_plus_one = f.sqrt_order() + 1
    except NotASquare:
        pass
    if sqrt_plus_one is not None and d == sqrt_plus_one and d >= 3:
        if _hermitian_consistency(x, evidence):
            sing = singular_points(x, t_max=t_max)
            evidence["singular"] = sing.singular
            return Classification(status=CASE_HERMITIAN, report=report, evidence=evidence)
        return Classification(status=UNCLASSIFIED, report=report, evidence=evidence)

    if d == 2:
        if _quadric_consistency(x, evidence):
            return Classification(status=CASE_QUADRIC, report=report, evidence=evidence)
        return Classification(status=UNCLASSIFIED, report=report, evidence=evidence)

    # bound attained at a degree the theory forbids
    evidence["degree_outside_candidates"] = True
    return Classification(status=UNCLASSIFIED, report=report, evidence=evidence)
