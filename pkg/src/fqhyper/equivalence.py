"""Decide or refute projective equivalence over GF(q).

A cheap invariant fingerprint (counts, singular points, section spectrum,
linear components) separates most pairs; matching fingerprints trigger a
search over PGL(N+1, q) for a witness matrix M with F∘M proportional to G.
The search fixes the first rational point of the second hypersurface and
only considers matrices carrying it into the first one's point set, which
shrinks the enumeration enough to make exhaustive scans feasible at small q;
beyond the budget a seeded random search runs instead, so verdicts stay
reproducible.  Every claimed witness is re-verified by substitution before
it is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .analysis import linear_components, section_spectrum_fast, singular_points
from .gf import Field, FieldTooLarge
from .poly import Hypersurface, MultiPoly
from .projgeo import count_points, count_points_ext, enum_points, points_of

DEFAULT_BUDGET = 10_000_000
DEFAULT_SEED = 0xC0FFEE


@dataclass(frozen=True)
class Fingerprint:
    """Projective invariants of a hypersurface, cheap to compare.

    count_q2 is None (with the flag set) when the quadratic extension would
    exceed the field-order cap.
    """

    degree: int
    ambient: int
    count_q: int
    count_q2: int | None
    count_q2_skipped: bool
    singular_count: int
    spectrum: tuple
    linear_component_count: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "ambient": self.ambient,
            "count_q": self.count_q,
            "count_q2": self.count_q2,
            "count_q2_skipped": self.count_q2_skipped,
            "singular_count": self.singular_count,
            "spectrum": [list(kv) for kv in self.spectrum],
            "linear_component_count": self.linear_component_count,
        }

    def separating_field(self, other: "Fingerprint") -> str | None:
        for name in ("degree", "ambient", "count_q", "count_q2", "singular_count", "spectrum", "linear_component_count"):
            if getattr(self, name) != getattr(other, name):
                return name
        return None


def fingerprint(x: Hypersurface) -> Fingerprint:
    try:
        n_q2 = count_points_ext(x, 2)
        skipped = False
    except FieldTooLarge:
        n_q2 = None
        skipped = True
    sing = singular_points(x, t_max=1)
    if sing.gradient_identically_zero:
        sing_count = count_points(x)  # every point of X is singular
    else:
        sing_count = len(sing.points(1))
    spec = tuple(sorted(section_spectrum_fast(x).items()))
    return Fingerprint(
        degree=x.degree,
        ambient=x.ambient,
        count_q=count_points(x),
        count_q2=n_q2,
        count_q2_skipped=skipped,
        singular_count=sing_count,
        spectrum=spec,
        linear_component_count=len(linear_components(x)),
    )


@dataclass(frozen=True)
class EquivalenceVerdict:
    """equivalent (verified witness + scalar), inequivalent (separating
    invariant), or inconclusive (budget exhausted)."""

    status: str
    witness: tuple | None = None
    scalar: int | None = None
    separating: str | None = None
    examined: int = 0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": [list(r) for r in self.witness] if self.witness else None,
            "scalar": self.scalar,
            "separating": self.separating,
            "examined": self.examined,
        }


def verify_witness(x: Hypersurface, y: Hypersurface, m) -> tuple[bool, int | None]:
    """Does F∘M equal c·G for some scalar c?  Returns (ok, c)."""
    f = x.field
    moved = x.poly.linear_change(m)
    if not moved.terms or not y.poly.terms:
        return moved.terms == y.poly.terms, 1
    if moved.normalized() != y.poly.normalized():
        return False, None
    c = f.div(moved.terms[0][1], y.poly.terms[0][1])
    return True, c


def pgl_order(m: int, q: int) -> int:
    order = 1
    qm = q**m
    for i in range(m):
        order *= qm - q**i
    return order // (q - 1)


def _pack(vec, q: int) -> int:
    code = 0
    for c in reversed(vec):
        code = code * q + c
    return code


class _Searcher:
    """Pruned scan for M with F∘M proportional to a conjugated target form."""

    def __init__(self, x: Hypersurface, target: MultiPoly, field: Field):
        self.f = field
        self.n1 = x.ambient + 1
        self.q = field.q
        self.poly = x.poly
        self.target_norm = target.normalized()
        self.x_points = points_of(x)
        # sample points of {target = 0} other than e0 for cheap rejection
        e0 = (1,) + (0,) * (self.n1 - 1)
        self.probes = []
        for p in enum_points(field, self.n1 - 1):
            if p != e0 and target.evaluate(p) == 0:
                self.probes.append(p)
                if len(self.probes) == 4:
                    break
        self.all_vectors = [
            tuple((idx // self.q**k) % self.q for k in range(self.n1))
            for idx in range(self.q**self.n1)
        ]

    def candidate_ok(self, cols) -> tuple | None:
        """Cheap probes first, then the full substitution test."""
        f = self.f
        rows = tuple(zip(*cols))
        for y in self.probes:
            acc = [0] * self.n1
            for j, c in enumerate(y):
                if c:
                    col = cols[j]
                    for i in range(self.n1):
                        if col[i]:
                            acc[i] = f.add(acc[i], f.mul(c, col[i]))
            if self.poly.evaluate(acc) != 0:
                return None
        moved = self.poly.linear_change(rows)
        if moved.normalized() == self.target_norm:
            return rows
        return None

    def _extend_span(self, span: set, v) -> set:
        f, q = self.f, self.q
        out = set(span)
        for c in range(1, q):
            cv = tuple(f.mul(c, vi) for vi in v)
            for s_packed in span:
                s = self.all_vectors[s_packed]
                out.add(_pack(tuple(f.add(si, ci) for si, ci in zip(s, cv)), q))
        return out

    def exhaustive(self, first_cols) -> tuple[tuple | None, int]:
        examined = 0
        q = self.q

        def recurse(cols, span):
            nonlocal examined
            if len(cols) == self.n1:
                examined += 1
                return self.candidate_ok(cols)
            for v in self.all_vectors[1:]:
                if _pack(v, q) in span:
                    continue
                hit = recurse(cols + [v], self._extend_span(span, v))
                if hit is not None:
                    return hit
            return None

        for c0 in first_cols:
            span0 = self._extend_span({0}, c0)
            hit = recurse([c0], span0)
            if hit is not None:
                return hit, examined
        return None, examined

    def randomized(self, first_cols, budget: int, seed: int) -> tuple[tuple | None, int]:
        rng = random.Random(seed)
        examined = 0
        f, q = self.f, self.q
        while examined < budget:
            cols = [rng.choice(first_cols)]
            for _ in range(self.n1 - 1):
                cols.append(tuple(rng.randrange(q) for _ in range(self.n1)))
            if linalg.det(f, tuple(zip(*cols))) == 0:
                continue
            examined += 1
            hit = self.candidate_ok(cols)
            if hit is not None:
                return hit, examined
        return None, examined


def pgl_search(
    x: Hypersurface,
    y: Hypersurface,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
) -> EquivalenceVerdict:
    """Decide projective equivalence of X and Y over their common field.

    Fingerprint mismatch refutes immediately.  Otherwise the matrix scan is
    exhaustive whenever the pruned candidate count fits the budget (so small
    configurations can never come back inconclusive), and a seeded random
    search otherwise.  An `equivalent` verdict always carries a witness that
    has been re-verified against the original forms.
    """
    if x.field != y.field:
        return EquivalenceVerdict(status="inequivalent", separating="field")
    if x.ambient != y.ambient:
        return EquivalenceVerdict(status="inequivalent", separating="ambient")
    if x.degree != y.degree:
        return EquivalenceVerdict(status="inequivalent", separating="degree")
    fx, fy = fingerprint(x), fingerprint(y)
    sep = fx.separating_field(fy)
    if sep is not None:
        return EquivalenceVerdict(status="inequivalent", separating=sep)

    f = x.field
    n1 = x.ambient + 1
    q = f.q
    y_points = points_of(y)
    if y_points:
        q0 = y_points[0]
        t_y = linalg.transpose(linalg.complete_rows(f, [q0], n1))
        target = y.poly.linear_change(t_y)
    else:
        t_y = linalg.identity(n1)
        target = y.poly

    searcher = _Searcher(x, target, f)
    first_cols = searcher.x_points or list(enum_points(f, n1 - 1))
    cost = len(first_cols)
    for i in range(1, n1):
        cost *= q**n1 - q**i

    if cost <= budget:
        rows, examined = searcher.exhaustive(first_cols)
    else:
        rows, examined = searcher.randomized(first_cols, budget, seed)

    if rows is None:
        if cost <= budget:
            return EquivalenceVerdict(status="inequivalent", separating="exhausted_orbit", examined=examined)
        return EquivalenceVerdict(status="inconclusive", examined=examined)

    t_y_inv = linalg.inverse(f, t_y)
    witness = linalg.mat_mul(f, rows, t_y_inv)
    ok, scalar = verify_witness(x, y, witness)
    assert ok, "witness failed final re-verification"
    return EquivalenceVerdict(status="equivalent", witness=witness, scalar=scalar, examined=examined)
