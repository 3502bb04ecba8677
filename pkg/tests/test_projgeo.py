import itertools
import random

import pytest

from fqhyper import linalg, projgeo
from fqhyper.gf import make_field
from fqhyper.poly import Hypersurface, MultiPoly, hypersurface, parse
from fqhyper.projgeo import (
    FULLY_CONTAINED,
    LinearSubspace,
    canonicalize,
    count_points,
    count_points_ext,
    count_zeros,
    enum_points,
    hyperplanes_through,
    lines_through,
    pencil_through,
    proj_point_count,
    section,
    section_count,
    zero_mask,
)
from tests.test_poly import GAMMA_TEXT, random_poly

F2 = make_field(2, 1)
F3 = make_field(3, 1)
F4 = make_field(2, 2)
F5 = make_field(5, 1)


def oracle_points(field, n):
    """Independent enumeration: scan all vectors, keep canonical reps."""
    pts = []
    for vec in itertools.product(range(field.q), repeat=n + 1):
        if not any(vec):
            continue
        lead = next(i for i, c in enumerate(vec) if c)
        if vec[lead] == 1:
            pts.append(vec)
    return pts


def oracle_count(poly):
    """Brute-force zero count via scalar evaluation, independent of the kernel."""
    return sum(1 for p in oracle_points(poly.field, poly.nvars - 1) if poly.evaluate(p) == 0)


class TestEnumeration:
    def test_sizes(self):
        assert len(list(enum_points(F2, 3))) == 15
        assert len(list(enum_points(F4, 2))) == 21
        assert len(list(enum_points(F3, 1))) == 4

    def test_f3_line_order(self):
        assert list(enum_points(F3, 1)) == [(1, 0), (1, 1), (1, 2), (0, 1)]

    @pytest.mark.parametrize("field,n", [(F2, 2), (F2, 3), (F3, 2), (F4, 2), (F5, 2), (F3, 3)])
    def test_matches_oracle_as_sets_and_counts(self, field, n):
        got = list(enum_points(field, n))
        assert len(got) == proj_point_count(field.q, n)
        assert set(got) == set(oracle_points(field, n))
        assert len(set(got)) == len(got)

    def test_blocks_agree_with_generator(self):
        import numpy as np

        for field, n in [(F3, 2), (F4, 3)]:
            stacked = np.concatenate(projgeo.point_blocks(field, n))
            assert [tuple(int(c) for c in row) for row in stacked] == list(enum_points(field, n))

    def test_canonicalize(self):
        assert canonicalize(F5, (0, 2, 3)) == (0, 1, 4)
        with pytest.raises(ValueError):
            canonicalize(F5, (0, 0, 0))


class TestCounting:
    def test_hyperbolic_quadric_f3(self):
        x = hypersurface("x0*x1-x2*x3", F3, 4)
        assert count_points(x) == 16

    def test_hermitian_f4(self):
        x = hypersurface("x0^3+x1^3+x2^3+x3^3", F4, 4)
        assert count_points(x) == 45

    def test_gamma_f4(self):
        x = hypersurface(GAMMA_TEXT, F4, 3)
        assert count_points(x) == 14

    @pytest.mark.parametrize("field", [F2, F3, F4, F5])
    def test_kernel_matches_bruteforce_oracle(self, field):
        rng = random.Random(field.q)
        for _ in range(12):
            nv = rng.choice([3, 4])
            f = random_poly(field, nv, 0, 5, rng, homogeneous=rng.randrange(1, 4))
            assert count_zeros(f) == oracle_count(f)

    def test_f9_kernel_matches_oracle(self):
        f9 = make_field(3, 2)
        rng = random.Random(9)
        for _ in range(5):
            f = random_poly(f9, 3, 0, 5, rng, homogeneous=rng.randrange(1, 4))
            assert count_zeros(f) == oracle_count(f)

    def test_parallel_and_serial_agree(self):
        x = hypersurface("x0^3+x1^3+x2^3+x3^3", F4, 4)
        assert count_points(x, jobs=1) == count_points(x, jobs=4) == 45

    def test_extension_counts(self):
        x = hypersurface("x0*x1-x2*x3", F2, 4)
        assert count_points_ext(x, 1) == count_points(x) == 9
        assert count_points_ext(x, 2) == 25  # (q^2+1)^2 over GF(4)

    def test_space_filling_only_over_base_field(self):
        f = parse("x0*x1^2+x0^2*x1+x2*x3^2+x2^2*x3", F2, 4)
        x = Hypersurface(f)
        assert count_points(x) == 15
        ext = count_points_ext(x, 2)
        assert ext == 45 < proj_point_count(4, 3) == 85
        assert ext == oracle_count(projgeo.extend_poly(f, 2))

    def test_projective_invariance(self):
        rng = random.Random(77)
        for field in [F2, F3, F4]:
            f = random_poly(field, 4, 0, 6, rng, homogeneous=3)
            m = linalg.random_invertible(field, 4, rng)
            assert count_zeros(f) == count_zeros(f.linear_change(m))

    def test_zero_mask_shape_and_sum(self):
        f = parse("x0^3+x1^3+x2^3+x3^3", F4, 4)
        mask = zero_mask(f)
        assert mask.shape == (85,)
        assert int(mask.sum()) == 45


class TestSubspaces:
    def test_rref_uniqueness(self):
        s1 = LinearSubspace.span(F3, 3, [(1, 1, 0, 0), (0, 0, 1, 2)])
        s2 = LinearSubspace.span(F3, 3, [(2, 2, 1, 2), (0, 0, 2, 1)])
        assert s1 == s2 and s1.dim == 1

    def test_points_of_line(self):
        s = LinearSubspace.span(F3, 3, [(1, 0, 0, 0), (0, 1, 0, 0)])
        pts = s.points()
        assert len(pts) == 4 and all(s.contains(p) for p in pts)

    def test_hyperplanes_through_line_in_p3(self):
        s = LinearSubspace.span(F3, 3, [(1, 0, 0, 0), (0, 1, 0, 0)])
        hs = hyperplanes_through(s, F3, 3)
        assert len(hs) == 4  # pencil of q+1
        assert hs == pencil_through(s, F3, 3)

    def test_hyperplanes_through_point_in_p2(self):
        s = LinearSubspace.span(F4, 2, [(1, 0, 0)])
        assert len(hyperplanes_through(s, F4, 2)) == 5

    def test_all_hyperplanes_of_p3_f2(self):
        assert len(hyperplanes_through(None, F2, 3)) == 15

    def test_forms_vanish_on_subspace(self):
        s = LinearSubspace.span(F5, 3, [(1, 2, 3, 4), (0, 1, 1, 1)])
        for h in hyperplanes_through(s, F5, 3):
            for p in s.points():
                acc = 0
                for a, c in zip(h, p):
                    acc = F5.add(acc, F5.mul(a, c))
                assert acc == 0


class TestLines:
    def test_counts(self):
        assert len(lines_through((1, 0, 0, 0), F2, 3)) == 7
        assert len(lines_through((1, 0, 0), F4, 2)) == 5

    def test_every_point_pair_covered_once(self):
        # over all P, lines through P reach every other point exactly once
        p = (1, 1, 2)
        seconds = lines_through(p, F3, 2)
        covered = set()
        for qpt in seconds:
            line = LinearSubspace.span(F3, 2, [p, qpt])
            for r in line.points():
                if r != p:
                    assert r not in covered
                    covered.add(r)
        assert len(covered) == proj_point_count(3, 2) - 1


class TestSections:
    def test_hermitian_section_is_hermitian_curve(self):
        x = hypersurface("x0^3+x1^3+x2^3+x3^3", F4, 4)
        sec = section(x, (0, 0, 0, 1))
        assert sec == parse("x0^3+x1^3+x2^3", F4, 3)
        assert count_zeros(sec) == 9
        assert section_count(x, (0, 0, 0, 1)) == 9

    def test_fully_contained(self):
        x = hypersurface("x0*x1", F3, 3)
        assert section(x, (1, 0, 0)) is FULLY_CONTAINED
        assert section_count(x, (1, 0, 0)) == proj_point_count(3, 1)

    def test_section_count_matches_point_filter(self):
        rng = random.Random(13)
        for field in [F2, F3, F4]:
            f = random_poly(field, 4, 0, 5, rng, homogeneous=2)
            if f.is_zero():
                continue
            x = Hypersurface(f)
            for h in hyperplanes_through(None, field, 3)[:10]:
                hform = MultiPoly.linear_form(field, h)
                direct = sum(
                    1
                    for p in enum_points(field, 3)
                    if f.evaluate(p) == 0 and hform.evaluate(p) == 0
                )
                assert section_count(x, h) == direct


class TestPencilDecomposition:
    def test_identity_on_random_hypersurfaces(self):
        # N_q(X) = sum over pencil of N_q(X ∩ H) - q * N_q(X ∩ S)
        rng = random.Random(99)
        for field in [F2, F3, F4]:
            for _ in range(6):
                f = random_poly(field, 4, 0, 5, rng, homogeneous=rng.randrange(1, 4))
                if f.is_zero():
                    continue
                x = Hypersurface(f)
                rows = []
                while linalg.rank(field, rows) < 2:
                    rows = [tuple(rng.randrange(field.q) for _ in range(4)) for _ in range(2)]
                s = LinearSubspace.span(field, 3, rows)
                pencil = pencil_through(s, field, 3)
                assert len(pencil) == field.q + 1
                on_s = sum(1 for p in s.points() if f.evaluate(p) == 0)
                total = sum(section_count(x, h) for h in pencil) - field.q * on_s
                assert total == count_points(x)


def test_incidence_matrix():
    inc = projgeo.hyperplane_incidence(F2, 3)
    assert inc.shape == (15, 15)
    assert int(inc.sum(axis=1)[0]) == 7  # each plane of P^3(F_2) holds 7 points
