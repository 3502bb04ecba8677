import random

import pytest

from fqhyper import linalg
from fqhyper.constructions import gamma_curve, hermitian, hyperbolic_quadric, space_filling, AntisymmetricSpec
from fqhyper.equivalence import (
    EquivalenceVerdict,
    fingerprint,
    pgl_order,
    pgl_search,
    verify_witness,
)
from fqhyper.gf import make_field
from fqhyper.poly import Hypersurface, hypersurface
from tests.test_poly import random_poly

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)


def test_pgl_orders():
    assert pgl_order(3, 4) == 60480
    assert pgl_order(4, 2) == 20160


class TestFingerprint:
    def test_gamma(self):
        fp = fingerprint(gamma_curve(F4))
        assert (fp.degree, fp.ambient, fp.count_q) == (4, 2, 14)
        assert fp.count_q2 is not None and not fp.count_q2_skipped
        assert fp.linear_component_count == 0

    def test_invariance_under_coordinate_change(self):
        rng = random.Random(55)
        for _ in range(12):
            field = rng.choice([F2, F3, F4])
            f = random_poly(field, 4, 0, 5, rng, homogeneous=rng.randrange(2, 4))
            if f.is_zero():
                continue
            x = Hypersurface(f)
            m = linalg.random_invertible(field, 4, rng)
            assert fingerprint(x) == fingerprint(x.apply(m))

    def test_quadric_vs_cone_separated_by_singular_count(self):
        smooth = hyperbolic_quadric(F3)
        cone = hypersurface("x0*x1-x2^2", F3, 4)
        fs, fc = fingerprint(smooth), fingerprint(cone)
        assert fs.singular_count == 0 and fc.singular_count >= 1
        assert fs.separating_field(fc) is not None


class TestPglSearch:
    def test_trivial_relabeling(self):
        x = hypersurface("x0*x1-x2*x3", F2, 4)
        y = hypersurface("x0*x3-x1*x2", F2, 4)
        v = pgl_search(x, y)
        assert v.status == "equivalent"
        ok, c = verify_witness(x, y, v.witness)
        assert ok and c == v.scalar

    def test_degree_mismatch(self):
        v = pgl_search(hermitian(F4, 3), space_filling(AntisymmetricSpec.standard(2), F4))
        assert v.status == "inequivalent" and v.separating == "degree"

    def test_field_mismatch(self):
        v = pgl_search(hyperbolic_quadric(F2), hyperbolic_quadric(F3))
        assert v.status == "inequivalent" and v.separating == "field"

    def test_fingerprint_separation(self):
        v = pgl_search(hyperbolic_quadric(F3), hypersurface("x0*x1-x2^2", F3, 4))
        assert v.status == "inequivalent" and v.separating in ("singular_count", "count_q", "count_q2", "spectrum")

    def test_gamma_orbit_recovery(self):
        g = gamma_curve(F4)
        rng = random.Random(1234)
        for _ in range(3):
            m = linalg.random_invertible(F4, 3, rng)
            moved = g.apply(m)
            v = pgl_search(g, moved)
            assert v.status == "equivalent"
            ok, c = verify_witness(g, moved, v.witness)
            assert ok and c == v.scalar

    def test_symmetry_of_status(self):
        g = gamma_curve(F4)
        rng = random.Random(9)
        moved = g.apply(linalg.random_invertible(F4, 3, rng))
        assert pgl_search(g, moved).status == pgl_search(moved, g).status == "equivalent"

    def test_exhaustive_refutation_at_small_scale(self):
        # same degree/ambient quadrics over GF(2) with equal fingerprints are
        # equivalent by the classification; engineer a fingerprint-equal pair
        # by coordinate change and confirm; a genuinely different pair is
        # separated by invariants without any scan
        x = hypersurface("x0*x1+x2*x3", F2, 4)
        y = hypersurface("x0*x1+x0*x3+x2*x3", F2, 4)
        v = pgl_search(x, y)
        assert v.status in ("equivalent", "inequivalent")
        if v.status == "equivalent":
            assert verify_witness(x, y, v.witness)[0]

    def test_hermitian_impostor_resolved_within_budget(self):
        # a count-45 cubic impostor built by hiding the Hermitian surface
        # behind a random coordinate change; fingerprints agree, so the
        # randomized phase must find a verified witness
        h = hermitian(F4, 3)
        rng = random.Random(42)
        impostor = h.apply(linalg.random_invertible(F4, 3 + 1, rng))
        v = pgl_search(h, impostor, budget=10_000_000)
        assert v.status == "equivalent"
        assert v.examined <= 10_000_000
        ok, c = verify_witness(h, impostor, v.witness)
        assert ok and c == v.scalar

    def test_verdict_json(self):
        v = EquivalenceVerdict(status="inequivalent", separating="degree")
        assert v.to_json()["separating"] == "degree"
