"""Command-line entry point: count, classify, verify, scan.

One command per invocation, reports to stdout as JSON (default) or CSV.
Identical configurations (seed and worker count included) produce
byte-identical reports.  Exit codes: 0 ok, 1 failed identity check,
2 invalid input, 3 counterexample alarm (a bound attainer the classification
cannot place, which the theory says cannot exist).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field

from . import bounds
from .analysis import linear_components
from .classify import classify
from .constructions import (
    AntisymmetricSpec,
    gamma_curve,
    hermitian,
    hermitian_cone,
    hyperbolic_quadric,
    hyperplane_pencil_union,
    quadric_pencil,
    space_filling,
)
from .gf import make_field
from .poly import Hypersurface, parse
from .projgeo import count_points, count_points_ext
from .scan import ScanConfig, run_scan
from .verify import GRIDS, run_battery

SCHEMA_VERSION = 1
DEFAULT_SEED = 0xC0FFEE
DEFAULT_BUDGET = 10_000_000
DEFAULT_T_MAX = 2


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Canonical form of one invocation; `to_args` and `parse_args` round-trip."""

    command: str
    p: int = 0
    s: int = 1
    poly: str | None = None
    construct: str | None = None
    ambient: int = 3
    dim: int = 3
    upper: str | None = None
    vec_a: str | None = None
    vec_b: str | None = None
    forms: str | None = None
    ext: int = 1
    t_max: int = DEFAULT_T_MAX
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    fmt: str = "json"
    jobs: int = 1
    degree: int = 2
    samples: int = 100
    family: str = "dense"
    grid: str = "small"

    def to_args(self) -> list[str]:
        args = [self.command]
        if self.command != "verify":
            args += ["--field", f"{self.p}^{self.s}"]
            if self.poly is not None:
                args += ["--poly", self.poly]
            if self.construct is not None:
                args += ["--construct", self.construct]
                args += ["--ambient", str(self.ambient), "--dim", str(self.dim)]
                if self.upper is not None:
                    args += ["--upper", self.upper]
                if self.vec_a is not None:
                    args += ["--a", self.vec_a]
                if self.vec_b is not None:
                    args += ["--b", self.vec_b]
                if self.forms is not None:
                    args += ["--forms", self.forms]
        if self.command == "count":
            args += ["--ext", str(self.ext), "--jobs", str(self.jobs)]
        if self.command == "classify":
            args += ["--t-max", str(self.t_max), "--budget", str(self.budget), "--seed", str(self.seed)]
        if self.command == "scan":
            args += [
                "--degree", str(self.degree), "--ambient", str(self.ambient),
                "--samples", str(self.samples), "--seed", str(self.seed),
                "--family", self.family,
            ]
        if self.command == "verify":
            args += ["--grid", self.grid]
        args += ["--format", self.fmt]
        return args


def parse_field_spec(text: str) -> tuple[int, int]:
    try:
        if "^" in text:
            p_str, s_str = text.split("^", 1)
            return int(p_str), int(s_str)
        return int(text), 1
    except ValueError:
        raise InputError(f"bad field spec {text!r}; expected p or p^s") from None


def _parse_codes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise InputError(f"bad code vector {text!r}; expected comma-separated integers") from None


def _parse_upper(text: str) -> dict:
    entries = {}
    try:
        for chunk in text.split(";"):
            pos, c = chunk.split(":")
            i, j = pos.split(",")
            entries[(int(i), int(j))] = int(c)
    except ValueError:
        raise InputError(f"bad upper-triangle spec {text!r}; expected i,j:c;...") from None
    return entries


def build_hypersurface(cfg: RunConfig, field) -> Hypersurface:
    if (cfg.poly is None) == (cfg.construct is None):
        raise InputError("exactly one of --poly and --construct is required")
    if cfg.poly is not None:
        p = parse(cfg.poly, field, cfg.ambient + 1)
        return Hypersurface(p)
    name = cfg.construct
    if name == "gamma":
        return gamma_curve(field)
    if name == "hermitian":
        return hermitian(field, cfg.ambient)
    if name == "hermitian-cone":
        return hermitian_cone(field, cfg.dim)
    if name == "hyperbolic-quadric":
        return hyperbolic_quadric(field)
    if name == "space-filling":
        n = cfg.ambient - 1
        spec = (
            AntisymmetricSpec.from_dict(n, _parse_upper(cfg.upper))
            if cfg.upper
            else AntisymmetricSpec.standard(n)
        )
        return space_filling(spec, field)
    if name == "quadric-pencil":
        if cfg.vec_a is None or cfg.vec_b is None:
            raise InputError("quadric-pencil needs --a and --b code vectors")
        return quadric_pencil(_parse_codes(cfg.vec_a), _parse_codes(cfg.vec_b), field).surface
    if name == "pencil-union":
        if cfg.forms is None:
            raise InputError("pencil-union needs --forms \"c,c,..;c,c,..\"")
        rows = [_parse_codes(chunk) for chunk in cfg.forms.split(";")]
        return hyperplane_pencil_union(rows, field, len(rows[0]))
    raise InputError(f"unknown constructor {name!r}")


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out(json.dumps(report, sort_keys=True, indent=2))
    else:
        for key in sorted(report):
            out(f"{key},{json.dumps(report[key], sort_keys=True)}")


def cmd_count(cfg: RunConfig, out=print) -> int:
    field = make_field(cfg.p, cfg.s)
    x = build_hypersurface(cfg, field)
    comps = linear_components(x)
    measured = count_points(x, jobs=cfg.jobs)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "count",
        "field": field.descriptor(),
        "poly": x.poly.render(),
        "ambient": x.ambient,
        "degree": x.degree,
        "count": measured,
        "linear_components": [list(c) for c in comps],
        "bounds": bounds.make_report(
            x.ambient - 1, x.degree, field.q, measured, linear_component_free=not comps
        ).to_json(),
    }
    if cfg.ext > 1:
        report["count_ext"] = {str(t): count_points_ext(x, t, jobs=cfg.jobs) for t in range(1, cfg.ext + 1)}
    _emit(report, cfg.fmt, out)
    return 0


def cmd_classify(cfg: RunConfig, out=print) -> int:
    field = make_field(cfg.p, cfg.s)
    x = build_hypersurface(cfg, field)
    verdict = classify(x, t_max=cfg.t_max)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "classify",
        "field": field.descriptor(),
        "poly": x.poly.render(),
        "classification": verdict.to_json(),
    }
    _emit(report, cfg.fmt, out)
    return 3 if verdict.alarm else 0


def cmd_verify(cfg: RunConfig, out=print) -> int:
    failures = run_battery(cfg.grid, out=out)
    if failures:
        print(f"verify failed: {failures[0][0]}", file=sys.stderr)
        return 1
    return 0


def cmd_scan(cfg: RunConfig, out=print) -> int:
    field = make_field(cfg.p, cfg.s)
    scan_cfg = ScanConfig(
        p=cfg.p,
        s=cfg.s,
        degree=cfg.degree,
        ambient=cfg.ambient,
        samples=cfg.samples,
        seed=cfg.seed,
        family=cfg.family,
    )
    result = run_scan(scan_cfg, field)
    if cfg.fmt == "csv":
        out(result.histogram_csv().rstrip("\n"))
    else:
        report = {"schema": SCHEMA_VERSION, "command": "scan", "result": result.to_json()}
        _emit(report, "json", out)
    return 3 if result.alarm else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqhyper",
        description="exact point counts, bounds and classification for hypersurfaces over finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_surface=True):
        if with_surface:
            p.add_argument("--field", required=True, help="field order as p or p^s")
            group = p.add_mutually_exclusive_group()
            group.add_argument("--poly", help="defining form, e.g. \"x0*x1-x2*x3\"")
            group.add_argument(
                "--construct",
                choices=[
                    "gamma", "hermitian", "hermitian-cone", "hyperbolic-quadric",
                    "space-filling", "quadric-pencil", "pencil-union",
                ],
            )
            p.add_argument("--ambient", type=int, default=3, help="ambient projective dimension N")
            p.add_argument("--dim", type=int, default=3, help="hypersurface dimension n (cones)")
            p.add_argument("--upper", help="antisymmetric upper triangle i,j:c;...")
            p.add_argument("--a", dest="vec_a", help="quadric-pencil first code vector")
            p.add_argument("--b", dest="vec_b", help="quadric-pencil second code vector")
            p.add_argument("--forms", help="pencil-union forms c,c,..;c,c,..")
        p.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")

    p_count = sub.add_parser("count", help="count rational points and compare against bounds")
    add_common(p_count)
    p_count.add_argument("--ext", type=int, default=1, help="also count over GF(q^t) for t <= ext")
    p_count.add_argument("--jobs", type=int, default=1)

    p_classify = sub.add_parser("classify", help="full extremal classification verdict")
    add_common(p_classify)
    p_classify.add_argument("--t-max", dest="t_max", type=int, default=DEFAULT_T_MAX)
    p_classify.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_classify.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p_verify = sub.add_parser("verify", help="run the named identity battery")
    p_verify.add_argument("--grid", choices=sorted(GRIDS), default="small")
    add_common(p_verify, with_surface=False)

    p_scan = sub.add_parser("scan", help="sample random hypersurfaces and classify bound attainers")
    add_common(p_scan)
    p_scan.add_argument("--degree", type=int, default=2)
    p_scan.add_argument("--samples", type=int, default=100)
    p_scan.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_scan.add_argument("--family", choices=["dense", "antisymmetric"], default="dense")
    return parser


def config_from_namespace(ns: argparse.Namespace) -> RunConfig:
    kwargs = {"command": ns.command, "fmt": ns.fmt}
    if ns.command != "verify":
        p, s = parse_field_spec(ns.field)
        kwargs.update(
            p=p, s=s, poly=ns.poly, construct=ns.construct, ambient=ns.ambient,
            dim=ns.dim, upper=ns.upper, vec_a=ns.vec_a, vec_b=ns.vec_b, forms=ns.forms,
        )
    if ns.command == "count":
        kwargs.update(ext=ns.ext, jobs=ns.jobs)
    elif ns.command == "classify":
        kwargs.update(t_max=ns.t_max, budget=ns.budget, seed=ns.seed)
    elif ns.command == "scan":
        kwargs.update(degree=ns.degree, samples=ns.samples, seed=ns.seed, family=ns.family)
    elif ns.command == "verify":
        kwargs.update(grid=ns.grid)
    return RunConfig(**kwargs)


COMMANDS = {
    "count": cmd_count,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "scan": cmd_scan,
}


def main(argv=None, out=print) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_namespace(ns)
        return COMMANDS[cfg.command](cfg, out=out)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
