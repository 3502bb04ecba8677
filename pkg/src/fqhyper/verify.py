"""Named identity checks runnable from the command line (`fqhyper verify`).

Each check re-derives a bound value, an exact count, or an algebraic identity
and compares against the implementation.  The battery is the smoke-test
counterpart of the full pytest suite: it runs on a field grid chosen by name
and reports one pass/fail line per check.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from . import bounds, linalg
from .analysis import is_space_filling, linear_components, singular_points
from .constructions import (
    AntisymmetricSpec,
    gamma_curve,
    hermitian,
    hermitian_cone,
    hyperbolic_quadric,
    hyperplane_pencil_union,
    space_filling,
)
from .gf import make_field
from .poly import Hypersurface, MultiPoly, parse
from .projgeo import (
    LinearSubspace,
    count_points,
    enum_points,
    pencil_through,
    proj_point_count,
    section_count,
)

GRIDS = {
    "small": (2, 3, 4),
    "medium": (2, 3, 4, 5, 7, 8, 9),
}

_FIELD_OF = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


def _field(q):
    return make_field(*_FIELD_OF[q])


def _random_homogeneous(field, nvars, degree, nterms, rng):
    d = {}
    for _ in range(nterms):
        cut = sorted(rng.sample(range(degree + nvars - 1), nvars - 1))
        exps, prev = [], -1
        for c in cut:
            exps.append(c - prev - 1)
            prev = c
        exps.append(degree + nvars - 2 - prev)
        d[tuple(exps)] = rng.randrange(1, field.q)
    return MultiPoly(field, nvars, d)


def check_theta_milestones(qs):
    expected = {(2, 4, 4): 65, (2, 3, 4): 45, (2, 4, 9): 280, (3, 3, 4): 181, (3, 2, 3): 49}
    for (n, d, q), want in expected.items():
        got = bounds.theta(n, d, q)
        assert got == want, f"theta({n},{d},{q}) = {got}, expected {want}"


def check_theta_formula(qs):
    for n, q in itertools.product((2, 3, 4), qs):
        for d in range(1, q + 3):
            direct = (d - 1) * q**n + d * q ** (n - 1) + sum(q**i for i in range(n - 1))
            assert bounds.theta(n, d, q) == direct, (n, d, q)


def check_theta_vs_projective_space(qs):
    for n, q in itertools.product((2, 3, 4), qs):
        for d in range(2, q + 4):
            within = bounds.theta(n, d, q) <= bounds.proj_space_count(n + 1, q)
            assert within == (d <= q + 1), (n, d, q)


def check_field_axioms(qs):
    for q in qs:
        f = _field(q)
        add = np.array([[f.add(a, b) for b in range(q)] for a in range(q)])
        mul = np.array([[f.mul(a, b) for b in range(q)] for a in range(q)])
        idx = np.arange(q)
        assert (add == add.T).all() and (mul == mul.T).all(), q
        assert (add[0] == idx).all() and (mul[1] == idx).all(), q
        a, b, c = np.meshgrid(idx, idx, idx, indexing="ij", sparse=True)
        assert (add[add[a, b], c] == add[a, add[b, c]]).all(), q
        assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all(), q
        assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all(), q
        for x in range(1, q):
            assert mul[x, f.inv(x)] == 1, q


def check_projective_space_counts(qs):
    for q in qs:
        f = _field(q)
        for n in (1, 2, 3):
            assert len(list(enum_points(f, n))) == proj_point_count(q, n), (q, n)


def check_gamma_curve(qs):
    if 4 not in qs:
        return
    g = gamma_curve(_field(4))
    assert count_points(g) == 14, "gamma point count"
    assert linear_components(g) == [], "gamma must be linear-component-free"
    assert bounds.sziklai_bound(4, 4) == 14, "sziklai value at d=q=4"


def check_hermitian_equality(qs):
    for q in qs:
        if _field(q).s % 2:
            continue
        f = _field(q)
        x = hermitian(f, 3)
        assert count_points(x) == bounds.theta(2, x.degree, q), q
        assert not singular_points(x, t_max=1).singular, q


def check_space_filling_equality(qs):
    for q in qs:
        f = _field(q)
        x = space_filling(AntisymmetricSpec.standard(2), f)
        assert count_points(x) == proj_point_count(q, 3) == bounds.theta(2, q + 1, q), q
        assert is_space_filling(x), q


def check_quadric_equality(qs):
    for q in qs:
        x = hyperbolic_quadric(_field(q))
        assert count_points(x) == (q + 1) ** 2 == bounds.theta(2, 2, q), q


def check_cone_formula(qs):
    if 4 not in qs:
        return
    f = _field(4)
    assert count_points(hermitian_cone(f, 3)) == 181 == 4 * 45 + 1
    assert count_points(hermitian_cone(f, 4)) == 725 == 16 * 45 + 4 + 1


def check_serre_pencil_equality(qs):
    for q in qs:
        f = _field(q)
        pencil = [(1, c, 0, 0) for c in range(q)] + [(0, 1, 0, 0)]
        rng = random.Random(q)
        for d in range(2, q + 1):
            if q <= 4:
                subsets = itertools.combinations(pencil, d)
            else:
                subsets = [rng.sample(pencil, d) for _ in range(5)]
            for forms in subsets:
                x = hyperplane_pencil_union(list(forms), f, 4)
                assert count_points(x) == bounds.serre_bound(2, d, q), (q, d)


def check_pencil_decomposition(qs):
    for q in qs:
        f = _field(q)
        rng = random.Random(100 + q)
        for _ in range(3):
            poly = _random_homogeneous(f, 4, rng.randrange(1, 4), 5, rng)
            if poly.is_zero():
                continue
            x = Hypersurface(poly)
            rows = []
            while linalg.rank(f, rows) < 2:
                rows = [tuple(rng.randrange(q) for _ in range(4)) for _ in range(2)]
            s = LinearSubspace.span(f, 3, rows)
            on_s = sum(1 for p in s.points() if poly.evaluate(p) == 0)
            total = sum(section_count(x, h) for h in pencil_through(s, f, 3)) - q * on_s
            assert total == count_points(x), q


def check_euler_identity(qs):
    for q in qs:
        f = _field(q)
        rng = random.Random(200 + q)
        for _ in range(5):
            d = rng.randrange(1, 5)
            poly = _random_homogeneous(f, 3, d, 4, rng)
            acc = MultiPoly.zero(f, 3)
            for i in range(3):
                acc = acc + MultiPoly.variable(f, 3, i) * poly.partial_derivative(i)
            assert acc == poly.scale(d % f.p), q


def check_count_invariance(qs):
    for q in qs:
        f = _field(q)
        rng = random.Random(300 + q)
        poly = _random_homogeneous(f, 4, rng.randrange(2, 4), 5, rng)
        if poly.is_zero():
            return
        m = linalg.random_invertible(f, 4, rng)
        assert count_points(Hypersurface(poly)) == count_points(Hypersurface(poly.linear_change(m))), q


def check_parse_render_round_trip(qs):
    for q in qs:
        f = _field(q)
        rng = random.Random(400 + q)
        for _ in range(10):
            poly = _random_homogeneous(f, 3, rng.randrange(1, 5), rng.randrange(1, 6), rng)
            assert parse(poly.render(), f, 3) == poly, q


CHECKS = [
    ("theta-milestones", check_theta_milestones),
    ("theta-formula", check_theta_formula),
    ("theta-vs-projective-space", check_theta_vs_projective_space),
    ("field-axioms", check_field_axioms),
    ("projective-space-counts", check_projective_space_counts),
    ("gamma-curve", check_gamma_curve),
    ("hermitian-equality", check_hermitian_equality),
    ("space-filling-equality", check_space_filling_equality),
    ("quadric-equality", check_quadric_equality),
    ("cone-formula", check_cone_formula),
    ("serre-pencil-equality", check_serre_pencil_equality),
    ("pencil-decomposition", check_pencil_decomposition),
    ("euler-identity", check_euler_identity),
    ("count-invariance", check_count_invariance),
    ("parse-render-round-trip", check_parse_render_round_trip),
]


def run_battery(grid: str, out=print) -> list[tuple[str, str]]:
    """Run every check on the named grid; returns (name, failure message)
    pairs for the checks that failed."""
    qs = GRIDS[grid]
    failures = []
    for name, fn in CHECKS:
        try:
            fn(qs)
        except AssertionError as exc:
            failures.append((name, str(exc)))
            out(f"[FAIL] {name}: {exc}")
        else:
            out(f"[PASS] {name}")
    return failures
