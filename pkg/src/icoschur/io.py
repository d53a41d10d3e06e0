"""Writers and readers for patches, arrays, trajectories and constant tables."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from . import golden, groups, reduction
from .cutproject import ModelSetPatch, PointArray
from .schur import AngleParameter

FORMATS = ("csv", "json", "xyz", "svg")
CSV_HEADER = "x,y,z,v1,v2,v3,v4,v5,v6,boundary_flag"


def fmt(x: float) -> str:
    """15 significant digits, with negative zero folded to zero."""
    s = f"{float(x):.15g}"
    return "0" if s in ("-0", "0") else s


def round15(x: float) -> float:
    return float(fmt(x))


def _flags(obj) -> np.ndarray:
    if isinstance(obj, ModelSetPatch):
        return obj.boundary_flags.astype(int)
    return np.zeros(len(obj), dtype=int)


def to_csv(obj: ModelSetPatch | PointArray) -> str:
    lines = [CSV_HEADER]
    for p, v, f in zip(obj.points, obj.preimages, _flags(obj)):
        lines.append(",".join([fmt(c) for c in p] + [str(int(c)) for c in v] + [str(int(f))]))
    return "\n".join(lines) + "\n"


def to_xyz(obj: ModelSetPatch | PointArray) -> str:
    meta = obj.metadata()
    comment = f"{meta['kind']} subgroup={obj.subgroup} t={fmt(obj.t)}"
    lines = [str(len(obj)), comment]
    lines += ["C " + " ".join(fmt(c) for c in p) for p in obj.points]
    return "\n".join(lines) + "\n"


def to_json(obj: ModelSetPatch | PointArray) -> str:
    """Full-precision JSON (floats use their shortest round-trip form)."""
    doc = {
        "metadata": obj.metadata(),
        "points": [[float(c) for c in p] for p in obj.points],
        "preimages": [[int(c) for c in v] for v in obj.preimages],
    }
    if isinstance(obj, ModelSetPatch):
        doc["boundary_flags"] = [bool(f) for f in obj.boundary_flags]
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def from_json(text: str) -> ModelSetPatch | PointArray:
    doc = json.loads(text)
    meta = doc["metadata"]
    pts = np.array(doc["points"], dtype=float).reshape(-1, 3)
    pre = np.array(doc["preimages"], dtype=np.int64).reshape(-1, 6)
    ep = AngleParameter(meta["endpoint"])
    if meta["kind"] == "modelset":
        flags = np.array(doc["boundary_flags"], dtype=bool)
        return ModelSetPatch(pts, pre, flags, meta["t"], meta["subgroup"], ep,
                             meta["radius_max"], meta["lattice"])
    return PointArray(pts, pre, meta["t"], meta["subgroup"], ep,
                      tuple(tuple(c) for c in meta["collisions"]))


def _view_basis(axis: Sequence[float]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    helper = np.array([0.0, 0.0, 1.0]) if abs(u[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    e1 = np.cross(helper, u)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(u, e1), u


def to_svg(obj: ModelSetPatch | PointArray, axis: Sequence[float], size: int = 600) -> str:
    """Orthographic view down ``axis``; nearer points drawn later and larger."""
    e1, e2, u = _view_basis(axis)
    pts = np.asarray(obj.points, dtype=float).reshape(-1, 3)
    flags = _flags(obj)
    x, y, depth = pts @ e1, pts @ e2, pts @ u
    extent = max(float(np.abs(np.concatenate([x, y])).max()) if len(pts) else 1.0, 1e-9)
    scale = 0.45 * size / extent
    dspan = max(float(np.ptp(depth)) if len(pts) else 0.0, 1e-9)
    order = np.lexsort((np.arange(len(pts)), np.round(depth, 9)))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f"<!-- {obj.metadata()['kind']} subgroup={obj.subgroup} t={fmt(obj.t)} "
        f"axis={','.join(fmt(c) for c in u)} -->",
    ]
    base = max(1.5, 0.012 * size * min(1.0, 40.0 / max(math.sqrt(len(pts)), 1.0)))
    for i in order:
        cx = size / 2 + scale * x[i]
        cy = size / 2 - scale * y[i]
        r = base * (0.6 + 0.4 * (depth[i] - depth.min()) / dspan)
        if flags[i]:
            style = 'fill="none" stroke="#c0392b" stroke-width="1"'
        else:
            style = 'fill="#2c3e50" stroke="white" stroke-width="0.5"'
        out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{r:.3f}" {style}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(obj: ModelSetPatch | PointArray, fmt_name: str, axis: Sequence[float] | None = None) -> str:
    if fmt_name == "csv":
        return to_csv(obj)
    if fmt_name == "json":
        return to_json(obj)
    if fmt_name == "xyz":
        return to_xyz(obj)
    if fmt_name == "svg":
        return to_svg(obj, axis if axis is not None else (0.0, 0.0, 1.0))
    raise ValueError(f"unknown format {fmt_name!r}; expected one of {FORMATS}")


def trajectory_json(arrays: Sequence[PointArray]) -> str:
    """Positions of each orbit point across the sweep, linked by preimage."""
    first = arrays[0]
    doc = {
        "subgroup": first.subgroup,
        "endpoint": list(first.endpoint.values),
        "t": [a.t for a in arrays],
        "preimages": [[int(c) for c in v] for v in first.preimages],
        "positions": [
            [[float(c) for c in a.points[i]] for a in arrays] for i in range(len(first))
        ],
        "collisions": {fmt(a.t): [list(c) for c in a.collisions] for a in arrays},
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _golden_rows(m) -> list[list[str]]:
    return [[str(golden.GoldenNumber.coerce(x)) for x in row] for row in m]


def constants_document() -> dict:
    """Every embedded constant, golden entries as canonical "a + b*tau" text."""
    return {
        "R": {"entries": _golden_rows(reduction.R_FRAME.entries),
              "norm_squared": str(reduction.R_FRAME.norm_squared)},
        "Q": {"entries": _golden_rows(reduction.Q_SCALED.entries),
              "norm_squared": str(reduction.Q_SCALED.norm_squared)},
        "blocks": {
            label: {"parallel": [_golden_rows(b) for b in top],
                    "perpendicular": [_golden_rows(b) for b in bottom]}
            for label, (top, bottom) in reduction.SOURCE_BLOCKS.items()
        },
        "float_reducers": {
            name: [[float(x) for x in row] for row in getattr(reduction, name)]
            for name in ("P1", "P2", "R1", "R2")
        },
        "generators": {
            label: [[int(x) for row in g for x in row] for g in gens]
            for label, gens in groups.GENERATOR_TABLE.items()
        },
    }


def write_text(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps byte-identical output across platforms
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path
