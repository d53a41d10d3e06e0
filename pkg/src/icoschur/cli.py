"""Command-line entry point: ``icoschur <command> [options]``.

Exit codes: 0 success, 1 verification failure (or failed check), 2 usage
error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence

import numpy as np

from . import groups, io, schur, verify
from .cutproject import (
    GuardViolation,
    bain_equivalence_check,
    enumerate_model_set,
    fixed_axis,
    orbit_array,
    project_array,
)
from .cutproject.lattice import KINDS
from .cutproject.patches import RADIUS_GUARD

OUTPUT_ENV = "ICOSCHUR_OUTPUT_DIR"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3
BAIN_TOLERANCE = 1e-9

log = logging.getLogger("icoschur")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str = ""
    subgroup: str = "T"
    endpoint: int | None = None
    angles: list[float] | None = None
    t: float | None = None
    sweep: list[float] | None = None
    rmax: float | None = None
    lattice: str = "SC"
    output: str | None = None
    format: str = "csv"
    seed: list[int] = field(default_factory=lambda: [1, 0, 0, 0, 0, 0])
    orbit_group: str = "I"
    axis: list[float] | None = None
    only: str | None = None
    tolerances: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.subgroup not in groups.SUBGROUPS:
            raise UsageError(f"unknown subgroup {self.subgroup!r}; expected one of {groups.SUBGROUPS}")
        for t in self.t_values():
            if not 0.0 <= t <= 1.0:
                raise UsageError(f"t values must lie in [0, 1], got {t:g}")
        if self.rmax is not None and not 0.0 < self.rmax <= RADIUS_GUARD:
            raise UsageError(f"rmax must lie in (0, {RADIUS_GUARD:g}], got {self.rmax:g}")
        if self.lattice not in KINDS:
            raise UsageError(f"lattice must be one of {KINDS}")
        if self.format not in io.FORMATS:
            raise UsageError(f"format must be one of {io.FORMATS}")
        if len(self.seed) != 6:
            raise UsageError("seed must have six integer coordinates")
        if self.orbit_group not in groups.GENERATOR_TABLE:
            raise UsageError(f"unknown orbit group {self.orbit_group!r}")

    def t_values(self) -> list[float]:
        if self.sweep:
            return list(self.sweep)
        return [self.t if self.t is not None else 0.0]


# argument parsing


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _seed(text: str) -> list[int]:
    t = text.strip().lower()
    if t.startswith("e") and t[1:].isdigit():
        k = int(t[1:])
        if not 1 <= k <= 6:
            raise argparse.ArgumentTypeError("basis vector index must be 1..6")
        return [int(i == k - 1) for i in range(6)]
    try:
        vals = [int(x) for x in t.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be e1..e6 or six integers, got {text!r}") from None
    if len(vals) != 6:
        raise argparse.ArgumentTypeError("seed must have six integer coordinates")
    return vals


def _common(p: argparse.ArgumentParser, subgroup: bool = True) -> None:
    p.add_argument("--config", help="RunConfig JSON document; explicit flags take precedence")
    if subgroup:
        p.add_argument("--subgroup", help="T, D10 or D6")
        p.add_argument("--endpoint", type=int, help="index into the sorted boundary-solution list")
        p.add_argument("--angles", type=_floats, help="explicit endpoint angles (overrides --endpoint)")


def _output(p: argparse.ArgumentParser, formats: bool = True) -> None:
    p.add_argument("-o", "--output", help=f"output path (default: under ${OUTPUT_ENV} or the cwd)")
    if formats:
        p.add_argument("--format", choices=io.FORMATS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="icoschur", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the self-check suites")
    _common(p, subgroup=False)
    p.add_argument("--only", choices=verify.SUITES)

    for name in ("boundary", "boundary-angles"):
        p = sub.add_parser(name, help="solve for and report boundary angles")
        _common(p)
        _output(p, formats=False)

    p = sub.add_parser("modelset", help="enumerate a model-set patch")
    _common(p)
    _output(p)
    p.add_argument("--t", type=float)
    p.add_argument("--rmax", type=float)
    p.add_argument("--lattice", choices=KINDS)
    p.add_argument("--axis", type=_floats, help="SVG view axis (default: subgroup symmetry axis)")

    p = sub.add_parser("array", help="project a lattice-point orbit")
    _common(p)
    _output(p)
    p.add_argument("--seed", type=_seed, help="e1..e6 or six comma-separated integers")
    p.add_argument("--orbit-group", dest="orbit_group", choices=sorted(groups.GENERATOR_TABLE))
    p.add_argument("--t", type=float)
    p.add_argument("--sweep", type=_floats, help="comma-separated t values")
    p.add_argument("--axis", type=_floats)

    p = sub.add_parser("bain-check", help="compare the strained-lattice and rotated-frame constructions")
    _common(p)
    p.add_argument("--t", type=float)
    p.add_argument("--sweep", type=_floats)
    p.add_argument("--rmax", type=float)

    p = sub.add_parser("export-constants", help="write every embedded constant table as JSON")
    _common(p, subgroup=False)
    _output(p, formats=False)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    if getattr(args, "config", None):
        try:
            doc = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        known = {f.name for f in fields(RunConfig)}
        unknown = set(doc) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        for k, v in doc.items():
            if k != "command":
                setattr(cfg, k, v)
    for f in fields(RunConfig):
        if f.name != "command" and getattr(args, f.name, None) is not None:
            setattr(cfg, f.name, getattr(args, f.name))
    cfg.validate()
    return cfg


def resolve_endpoint(cfg: RunConfig) -> tuple[schur.SchurFamily, schur.AngleParameter, str]:
    fam = schur.family(cfg.subgroup)
    if cfg.angles is not None:
        try:
            ep = schur.validate_endpoint(fam, cfg.angles, cfg.tolerances.get("endpoint", 1e-8))
        except (schur.ArityError, schur.NotABoundarySolution) as exc:
            raise UsageError(str(exc)) from None
        return fam, ep, "custom"
    try:
        ep = schur.endpoint_by_index(cfg.subgroup, cfg.endpoint)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    index = cfg.endpoint if cfg.endpoint is not None else schur.default_endpoint_index(cfg.subgroup)
    return fam, ep, f"e{index}"


def output_path(cfg: RunConfig, stem: str, ext: str) -> Path:
    if cfg.output:
        return Path(cfg.output)
    return output_dir(cfg) / f"{stem}.{ext}"


def output_dir(cfg: RunConfig) -> Path:
    """Directory for multi-file output: --output if given, else the environment default."""
    if cfg.output:
        return Path(cfg.output)
    return Path(os.environ.get(OUTPUT_ENV, "."))


def symmetry_axis(fam: schur.SchurFamily) -> np.ndarray:
    """Axis of the subgroup's highest-order rotation in parallel space (3-, 5- or 3-fold)."""
    g = groups.to_array(groups.group(fam.tag).generators[1])
    block = (fam.frame.T @ g @ fam.frame)[:3, :3]
    return fixed_axis(block)


def _tag(t: float) -> str:
    return io.fmt(t).replace("-", "m")


# commands


def cmd_verify(cfg: RunConfig) -> int:
    checks = verify.run(cfg.only)
    print(verify.format_table(checks))
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"FAILED: {c.suite}.{c.name} ({c.detail})", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def boundary_report(tag: str) -> dict:
    fam = schur.family(tag)
    sols = []
    for i, s in enumerate(fam.boundary_solutions()):
        sols.append({
            "index": i,
            "angles": [io.round15(v) for v in s.values],
            "residual": io.round15(schur.off_block_residual_at(fam, s)),
            "irreps": list(schur.boundary_irreps(fam, s)),
        })
    return {"subgroup": tag, "count": len(sols), "solutions": sols}


def cmd_boundary(cfg: RunConfig) -> int:
    text = json.dumps(boundary_report(cfg.subgroup), indent=1, sort_keys=True) + "\n"
    if cfg.output:
        io.write_text(Path(cfg.output), text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_modelset(cfg: RunConfig) -> int:
    fam, ep, label = resolve_endpoint(cfg)
    t, rmax = cfg.t_values()[0], cfg.rmax if cfg.rmax is not None else 4.0
    try:
        patch = enumerate_model_set(fam, ep, t, rmax)
    except GuardViolation as exc:
        raise UsageError(str(exc)) from None
    axis = cfg.axis or symmetry_axis(fam)
    path = output_path(cfg, f"modelset_{cfg.subgroup}_{label}_t{_tag(t)}", cfg.format)
    io.write_text(path, io.render(patch, cfg.format, axis))
    print(f"{path}: {len(patch)} points, {patch.boundary_hits} on the window boundary")
    return EXIT_OK


def cmd_array(cfg: RunConfig) -> int:
    fam, ep, label = resolve_endpoint(cfg)
    orbit = orbit_array(groups.group(cfg.orbit_group), cfg.seed)
    axis = cfg.axis or symmetry_axis(fam)
    arrays = []
    for t in cfg.t_values():
        arr = project_array(fam, ep, t, orbit)
        arrays.append(arr)
        stem = f"array_{cfg.subgroup}_{label}_t{_tag(t)}"
        if cfg.sweep:
            path = output_dir(cfg) / f"{stem}.{cfg.format}"
        else:
            path = output_path(cfg, stem, cfg.format)
        io.write_text(path, io.render(arr, cfg.format, axis))
        note = f", collisions {list(arr.collisions)}" if arr.collisions else ""
        print(f"{path}: {len(arr)} points{note}")
    if cfg.sweep:
        stem = f"trajectory_{cfg.subgroup}_{label}"
        path = output_dir(cfg) / f"{stem}.json"
        io.write_text(path, io.trajectory_json(arrays))
        print(f"{path}: trajectory over {len(arrays)} t values")
    return EXIT_OK


def cmd_bain(cfg: RunConfig) -> int:
    fam, ep, _ = resolve_endpoint(cfg)
    rmax = cfg.rmax if cfg.rmax is not None else 3.0
    ts = cfg.sweep or ([cfg.t] if cfg.t is not None else [0.0, 0.25, 0.5, 0.75, 1.0])
    worst = 0.0
    for t in ts:
        try:
            d = bain_equivalence_check(fam, ep, t, rmax)
        except GuardViolation as exc:
            raise UsageError(str(exc)) from None
        worst = max(worst, d)
        print(f"t={io.fmt(t)} hausdorff={d:.3e}")
    tol = cfg.tolerances.get("bain", BAIN_TOLERANCE)
    print(f"max distance {worst:.3e} ({'PASS' if worst < tol else 'FAIL'} at {tol:g})")
    return EXIT_OK if worst < tol else EXIT_FAIL


def cmd_export(cfg: RunConfig) -> int:
    text = json.dumps(io.constants_document(), indent=1, sort_keys=True) + "\n"
    if cfg.output:
        io.write_text(Path(cfg.output), text)
        print(cfg.output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "boundary": cmd_boundary,
    "boundary-angles": cmd_boundary,
    "modelset": cmd_modelset,
    "array": cmd_array,
    "bain-check": cmd_bain,
    "export-constants": cmd_export,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"icoschur {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except schur.SolverFailure as exc:
        print(f"icoschur {args.command}: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"icoschur {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
