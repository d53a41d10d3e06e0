"""Model-set patches and projected orbit arrays along a Schur rotation path."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .. import groups
from ..schur import AngleParameter, SchurFamily, path_angles, validate_endpoint
from .lattice import SC, HypercubicLattice, integer_ball
from .window import ProjectionWindow, build_window

RADIUS_GUARD = 12.0
COLLISION_DISTANCE = 1e-9


class GuardViolation(ValueError):
    pass


def projection_at(fam: SchurFamily, endpoint: AngleParameter, t: float,
                  waypoints=None) -> tuple[np.ndarray, np.ndarray]:
    """Rotation M(t) and the 6x6 projector (M(t) R)^T: rows 0-2 give pi_par_t, rows 3-5 pi_perp_t."""
    m = fam.evaluate(path_angles(endpoint, t, waypoints))
    return m, (m @ fam.frame).T


@dataclass(frozen=True)
class ModelSetPatch:
    points: np.ndarray = field(repr=False)
    preimages: np.ndarray = field(repr=False)
    boundary_flags: np.ndarray = field(repr=False)
    t: float
    subgroup: str
    endpoint: AngleParameter
    radius_max: float
    lattice_kind: str = "SC"
    window: ProjectionWindow | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.points)

    @property
    def boundary_hits(self) -> int:
        return int(self.boundary_flags.sum())

    def metadata(self) -> dict:
        return {
            "kind": "modelset",
            "t": self.t,
            "subgroup": self.subgroup,
            "endpoint": list(self.endpoint.values),
            "radius_max": self.radius_max,
            "lattice": self.lattice_kind,
            "count": len(self),
            "boundary_hits": self.boundary_hits,
        }


@dataclass(frozen=True)
class PointArray:
    points: np.ndarray = field(repr=False)
    preimages: np.ndarray = field(repr=False)
    t: float
    subgroup: str
    endpoint: AngleParameter
    collisions: tuple = ()

    def __len__(self):
        return len(self.points)

    def metadata(self) -> dict:
        return {
            "kind": "array",
            "t": self.t,
            "subgroup": self.subgroup,
            "endpoint": list(self.endpoint.values),
            "count": len(self),
            "collisions": [list(c) for c in self.collisions],
        }


def _sort_key(points: np.ndarray, preimages: np.ndarray) -> np.ndarray:
    # (|p|, p lexicographic, preimage lexicographic); rounding keeps ties stable
    norms = np.round(np.linalg.norm(points, axis=1), 9)
    keys = [preimages[:, k] for k in range(5, -1, -1)]
    keys += [np.round(points[:, k], 9) for k in range(2, -1, -1)]
    keys.append(norms)
    return np.lexsort(keys)


def _chunk(first: int, bound_sq: float, proj: np.ndarray, window: ProjectionWindow,
           rmax: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    v = integer_ball(bound_sq, first=first)
    x = v @ proj.T
    par, perp = x[:, :3], x[:, 3:]
    near = np.einsum("ij,ij->i", par, par) <= rmax * rmax + 1e-12
    v, par, perp = v[near], par[near], perp[near]
    status = window.classify(perp)
    keep = status < 2
    return v[keep], par[keep], status[keep] == 1


def enumerate_model_set(fam: SchurFamily, endpoint, t: float, radius_max: float,
                        lattice: HypercubicLattice = SC, waypoints=None,
                        workers: int = 1) -> ModelSetPatch:
    """Sigma_t restricted to the ball of radius ``radius_max`` in parallel space.

    The enumeration runs over integer vectors with |v|^2 <= rmax^2 + circumradius^2,
    chunked by first coordinate; chunks are independent and merged by sorting.
    """
    if lattice.kind != "SC":
        raise GuardViolation("model sets are only enumerated for the simple cubic lattice")
    if not 0.0 < radius_max <= RADIUS_GUARD:
        raise GuardViolation(f"radius_max must lie in (0, {RADIUS_GUARD:g}], got {radius_max:g}")
    ep = validate_endpoint(fam, endpoint)
    m, proj = projection_at(fam, ep, t, waypoints)
    window = build_window(m, fam.frame)
    bound_sq = radius_max ** 2 + window.circumradius ** 2
    top = int(np.floor(np.sqrt(bound_sq)))
    firsts = range(-top, top + 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda f: _chunk(f, bound_sq, proj, window, radius_max), firsts))
    else:
        parts = [_chunk(f, bound_sq, proj, window, radius_max) for f in firsts]
    v = np.vstack([p[0] for p in parts])
    par = np.vstack([p[1] for p in parts])
    flags = np.concatenate([p[2] for p in parts])
    order = _sort_key(par, v)
    return ModelSetPatch(par[order], v[order], flags[order], float(t), fam.tag, ep,
                         float(radius_max), lattice.kind, window)


def orbit_array(group: groups.MatrixGroup, seed: Sequence[int]) -> list[tuple[int, ...]]:
    return groups.orbit(group, seed)


def find_collisions(points: np.ndarray, distance: float = COLLISION_DISTANCE) -> tuple:
    if len(points) < 2:
        return ()
    return tuple(sorted(cKDTree(points).query_pairs(distance)))


def project_array(fam: SchurFamily, endpoint, t: float, orbit: Sequence[Sequence[int]],
                  waypoints=None) -> PointArray:
    """C_t: pi_par_t applied to every orbit vector; coincident images are flagged, never merged."""
    ep = validate_endpoint(fam, endpoint)
    _, proj = projection_at(fam, ep, t, waypoints)
    pre = np.asarray(orbit, dtype=np.int64).reshape(-1, 6)
    pts = pre @ proj[:3].T
    return PointArray(pts, pre, float(t), fam.tag, ep, find_collisions(pts))
