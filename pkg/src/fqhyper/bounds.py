"""Upper bounds on rational point counts of hypersurfaces, as exact integers.

Everything here is unbounded-integer arithmetic; the only rounding anywhere
is the floor in the Aubry-Perret bound for non-square q, computed with an
integer square root so no floating point is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class UnsupportedDimension(ValueError):
    """The Homma-Kim bound is defined for hypersurface dimension n >= 2."""


def proj_space_count(n: int, q: int) -> int:
    """N_q(P^N) = q^N + q^(N-1) + ... + q + 1."""
    if n < 0 or q < 2:
        raise ValueError("need N >= 0 and q >= 2")
    return sum(q**i for i in range(n + 1))


def theta(n: int, d: int, q: int) -> int:
    """Homma-Kim bound (d-1)q^n + dq^(n-1) + q^(n-2) + ... + q + 1.

    Sharp for degree-d hypersurfaces of dimension n >= 2 without linear
    components defined over GF(q).
    """
    if n < 2:
        raise UnsupportedDimension("the bound is defined for n >= 2")
    if d < 1 or q < 2:
        raise ValueError("need d >= 1 and q >= 2")
    return (d - 1) * q**n + d * q ** (n - 1) + sum(q**i for i in range(n - 1))


def serre_bound(n: int, d: int, q: int) -> int:
    """Elementary bound dq^n + q^(n-1) + ... + q + 1, valid for any degree-d
    hypersurface; attained exactly by d hyperplanes through a common
    codimension-2 subspace when d <= q."""
    if n < 1 or d < 1 or q < 2:
        raise ValueError("need n >= 1, d >= 1, q >= 2")
    return d * q**n + sum(q**i for i in range(n))


def sziklai_bound(d: int, q: int) -> int:
    """(d-1)q + 2 for plane curves without linear components; equality is
    possible only when d = q = 4."""
    if d < 2:
        raise ValueError("need degree >= 2")
    return (d - 1) * q + 2


def sziklai_equality_possible(d: int, q: int) -> bool:
    return d == 4 and q == 4


def arithmetic_genus(d: int) -> int:
    """(d-1)(d-2)/2, the arithmetic genus of a plane curve of degree d."""
    return (d - 1) * (d - 2) // 2


def aubry_perret_bound(d: int, q: int) -> int:
    """q + 1 + floor(2 * p_C * sqrt(q)) with p_C the arithmetic genus.

    Integer-exact for square q; for non-square q the floor is taken via
    isqrt(4 * p_C^2 * q), which equals floor(2 p_C sqrt(q)) exactly.
    """
    if d < 1 or q < 2:
        raise ValueError("need d >= 1 and q >= 2")
    g = arithmetic_genus(d)
    return q + 1 + math.isqrt(4 * g * g * q)


def extremal_degree_candidates(q: int) -> set[int]:
    """Degrees at which the Homma-Kim bound can be attained: {2, sqrt(q)+1, q+1}."""
    out = {2, q + 1}
    r = math.isqrt(q)
    if r * r == q:
        out.add(r + 1)
    return out


def secant_inequality_margin(d: int, q: int) -> int:
    """d^2 - 2d - (q - 1): non-positive exactly when d <= sqrt(q) + 1.

    For an extremal surface of middle degree 3 <= d <= q, double counting
    point pairs on lines forces this to be <= 0.
    """
    return d * d - 2 * d - (q - 1)


@dataclass(frozen=True)
class BoundReport:
    """All bound values next to the measured count of one hypersurface.

    `theta` is None for plane curves (n = 1); `sziklai` and `aubry_perret`
    are populated only for plane curves.  `exceeds_any` must stay False for
    every hypersurface the theory covers.
    """

    n: int
    d: int
    q: int
    measured: int
    theta: int | None
    serre: int
    proj_space: int
    sziklai: int | None
    aubry_perret: int | None
    achieves_theta: bool
    achieves_serre: bool
    exceeds_any: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "q": self.q,
            "measured": self.measured,
            "theta": self.theta,
            "serre": self.serre,
            "proj_space": self.proj_space,
            "sziklai": self.sziklai,
            "aubry_perret": self.aubry_perret,
            "achieves_theta": self.achieves_theta,
            "achieves_serre": self.achieves_serre,
            "exceeds_any": self.exceeds_any,
        }


def make_report(n: int, d: int, q: int, measured: int, linear_component_free: bool) -> BoundReport:
    """Assemble a BoundReport from a measured count.

    The theta comparison only applies to hypersurfaces without linear
    components; the Serre comparison applies unconditionally.
    """
    th = theta(n, d, q) if n >= 2 else None
    se = serre_bound(n, d, q)
    ps = proj_space_count(n + 1, q)
    sz = sziklai_bound(d, q) if n == 1 and d >= 2 else None
    ap = aubry_perret_bound(d, q) if n == 1 else None
    if th is not None and d <= q + 1:
        assert th <= se, "theta must not exceed the Serre bound for d <= q+1"
        assert (th <= ps) == (d <= q + 1)
    exceeds = measured > se or (linear_component_free and th is not None and measured > th)
    return BoundReport(
        n=n,
        d=d,
        q=q,
        measured=measured,
        theta=th,
        serre=se,
        proj_space=ps,
        sziklai=sz,
        aubry_perret=ap,
        achieves_theta=th is not None and measured == th and linear_component_free,
        achieves_serre=measured == se,
        exceeds_any=exceeds,
    )


GRID_COLUMNS = ("n", "d", "q", "theta", "serre", "proj_space", "theta_within_space")


def grid_rows(ns, ds, qs) -> list[tuple]:
    """Bound table over a (n, d, q) grid; rows match GRID_COLUMNS."""
    rows = []
    for n in ns:
        for q in qs:
            for d in ds:
                th = theta(n, d, q)
                rows.append((n, d, q, th, serre_bound(n, d, q), proj_space_count(n + 1, q), th <= proj_space_count(n + 1, q)))
    return rows
