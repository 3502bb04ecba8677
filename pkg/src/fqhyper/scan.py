"""Randomized searches for bound-attaining hypersurfaces.

Samples defining forms with uniform nonzero coefficient vectors (dense over
the degree-d monomial basis, or over antisymmetric specs for degree q+1),
discards those with linear components, histograms the point counts, and runs
the full classification on every bound attainer.  An attainer that fits no
extremal family (`unclassified`) or a count above the bound is an alarm: the
most interesting possible output, since the theory says it cannot exist.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field

from . import bounds
from .analysis import linear_components
from .classify import classify
from .constructions import AntisymmetricSpec, space_filling
from .gf import Field
from .poly import Hypersurface, MultiPoly
from .projgeo import zero_mask


@dataclass(frozen=True)
class ScanConfig:
    p: int
    s: int
    degree: int
    ambient: int
    samples: int  # number of linear-component-free hypersurfaces to analyze
    seed: int = 0xC0FFEE
    family: str = "dense"  # or "antisymmetric" (degree is then forced to q+1)


@dataclass
class ScanResult:
    config: ScanConfig
    histogram: Counter = dc_field(default_factory=Counter)
    drawn: int = 0
    kept: int = 0
    excluded: int = 0
    achievers: list = dc_field(default_factory=list)  # (poly text, Classification)
    alarms: list = dc_field(default_factory=list)

    @property
    def alarm(self) -> bool:
        return bool(self.alarms)

    def to_json(self) -> dict:
        return {
            "config": self.config.__dict__,
            "histogram": [[k, self.histogram[k]] for k in sorted(self.histogram)],
            "drawn": self.drawn,
            "kept": self.kept,
            "excluded": self.excluded,
            "achievers": [
                {"poly": text, "classification": c.to_json()} for text, c in self.achievers
            ],
            "alarms": self.alarms,
        }

    def histogram_csv(self) -> str:
        lines = ["count,frequency"]
        lines += [f"{k},{self.histogram[k]}" for k in sorted(self.histogram)]
        return "\n".join(lines) + "\n"


def monomial_basis(nvars: int, degree: int) -> list[tuple]:
    """All exponent tuples of the given total degree, graded-lex order."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


def _draw_dense(field: Field, basis, rng) -> MultiPoly:
    q = field.q
    while True:
        codes = [rng.randrange(q) for _ in basis]
        if any(codes):
            return MultiPoly(field, len(basis[0]), {e: c for e, c in zip(basis, codes) if c})


def run_scan(cfg: ScanConfig, field: Field, max_draws: int | None = None) -> ScanResult:
    """Deterministic given the config (seed included); see ScanConfig."""
    rng = random.Random(cfg.seed)
    n = cfg.ambient - 1
    q = field.q
    degree = q + 1 if cfg.family == "antisymmetric" else cfg.degree
    theta = bounds.theta(n, degree, q) if n >= 2 else None
    basis = monomial_basis(cfg.ambient + 1, degree)
    result = ScanResult(config=cfg)
    limit = max_draws if max_draws is not None else 1000 * cfg.samples

    while result.kept < cfg.samples and result.drawn < limit:
        result.drawn += 1
        if cfg.family == "antisymmetric":
            spec = AntisymmetricSpec.random(n, field, rng)
            x = space_filling(spec, field)
        else:
            x = Hypersurface(_draw_dense(field, basis, rng))
        mask = zero_mask(x.poly)
        count = int(mask.sum())
        if linear_components(x):
            result.excluded += 1
            continue
        result.kept += 1
        result.histogram[count] += 1
        if theta is not None and count > theta:
            result.alarms.append({"kind": "exceeds_bound", "poly": x.poly.render(), "count": count})
            continue
        if theta is not None and count == theta:
            verdict = classify(x)
            result.achievers.append((x.poly.render(), verdict))
            if verdict.alarm:
                result.alarms.append({"kind": verdict.status, "poly": x.poly.render(), "count": count})
    return result
