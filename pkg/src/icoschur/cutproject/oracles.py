"""Geometric oracles for projected point sets."""

from __future__ import annotations

import itertools
import math
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .. import groups

LATTICE_TOLERANCE = 1e-8
CANDIDATE_COUNT = 40
# difference vectors are drawn from this many points nearest the origin
CANDIDATE_POOL = 200


class LatticeFit(NamedTuple):
    basis: np.ndarray
    residual: float


def detect_lattice_3d(points: np.ndarray, tolerance: float = LATTICE_TOLERANCE) -> LatticeFit | None:
    """Basis of a 3D lattice containing every point, or None.

    Takes the three shortest linearly independent vectors among the 40
    shortest point differences and checks that each point is an integer
    combination of them.  The fit is returned only if the worst rounding
    residual is below ``tolerance``.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    norms = np.linalg.norm(pts, axis=1)
    if len(pts) < 20 or norms.min() > 1e-9:
        raise ValueError("lattice detection needs at least 20 points including the origin")
    pool = pts[np.argsort(norms, kind="stable")[:CANDIDATE_POOL]]
    diffs = (pool[:, None, :] - pool[None, :, :]).reshape(-1, 3)
    diffs = diffs[np.linalg.norm(diffs, axis=1) > 1e-9]
    # dedupe on rounded keys but keep the unrounded vectors
    _, first = np.unique(np.round(diffs, 9), axis=0, return_index=True)
    diffs = diffs[np.sort(first)]
    keys = np.round(diffs, 9)
    dn = np.round(np.linalg.norm(diffs, axis=1), 9)
    cand = diffs[np.lexsort((*keys.T[::-1], dn))][:CANDIDATE_COUNT]

    basis: list[np.ndarray] = []
    for c in cand:
        trial = np.array(basis + [c])
        sv = np.linalg.svd(trial, compute_uv=False)
        if sv[-1] > 1e-6 * sv[0]:
            basis.append(c)
            if len(basis) == 3:
                break
    if len(basis) < 3:
        return None
    b = np.array(basis).T
    coeff = np.linalg.solve(b, pts.T)
    residual = float(np.linalg.norm(b @ np.round(coeff) - pts.T, axis=0).max())
    if residual >= tolerance:
        return None
    return LatticeFit(b.T.copy(), residual)


def lattice_points_missing(points: np.ndarray, fit: LatticeFit, radius: float, tol: float = 1e-8) -> int:
    """Number of lattice points of ``fit`` inside ``radius`` absent from ``points``."""
    b = fit.basis.T
    # coefficient bound from the smallest singular value
    k = int(math.ceil(radius / np.linalg.svd(b, compute_uv=False)[-1])) + 1
    rng = np.arange(-k, k + 1)
    m = np.array(list(itertools.product(rng, repeat=3)))
    lat = m @ b.T
    lat = lat[np.linalg.norm(lat, axis=1) <= radius]
    d, _ = cKDTree(np.asarray(points)).query(lat)
    return int((d > tol).sum())


def check_set_symmetry(points: np.ndarray, action: Sequence[np.ndarray], match_tolerance: float,
                       interior_radius: float) -> bool:
    """True iff g p lies within ``match_tolerance`` of the set for every g and interior p."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) == 0:
        return True
    interior = pts[np.linalg.norm(pts, axis=1) <= interior_radius]
    if len(interior) == 0:
        return True
    tree = cKDTree(pts)
    for g in action:
        d, _ = tree.query(interior @ np.asarray(g).T)
        if d.max() > match_tolerance:
            return False
    return True


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=float).reshape(-1, 3)
    b = np.asarray(b, dtype=float).reshape(-1, 3)
    if len(a) == 0 and len(b) == 0:
        return 0.0
    if len(a) == 0 or len(b) == 0:
        return math.inf
    return float(max(cKDTree(b).query(a)[0].max(), cKDTree(a).query(b)[0].max()))


def parallel_action(projector: np.ndarray, group: groups.MatrixGroup) -> list[np.ndarray]:
    """Top-left 3x3 blocks of the group conjugated by a 6x6 projector (rows = pi_par, pi_perp)."""
    p = np.asarray(projector)
    return [(p @ g @ p.T)[:3, :3] for g in group.arrays()]


# shape oracles for point arrays


def is_icosahedron(points: np.ndarray, tol: float = 1e-9) -> bool:
    """12 points on a sphere, each with exactly 5 neighbours at the minimal pairwise distance."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) != 12:
        return False
    norms = np.linalg.norm(pts, axis=1)
    if norms.max() - norms.min() > tol or norms.min() < tol:
        return False
    d = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
    np.fill_diagonal(d, np.inf)
    dmin = d.min()
    return bool(((np.abs(d - dmin) <= tol).sum(axis=1) == 5).all())


def is_hexagonal_prism(points: np.ndarray, axis: np.ndarray, tol: float = 1e-9) -> bool:
    """Two parallel regular hexagons perpendicular to ``axis``, one above the other."""
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) != 12:
        return False
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    h = pts @ u
    layers = [pts[h > tol], pts[h < -tol]]
    if any(len(layer) != 6 for layer in layers):
        return False
    e1 = np.cross(u, [1.0, 0.0, 0.0] if abs(u[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(u, e1)
    flats = []
    for layer in layers:
        hl = layer @ u
        if hl.max() - hl.min() > tol:
            return False
        flat = layer - np.outer(hl, u)
        centred = flat - flat.mean(axis=0)
        r = np.linalg.norm(centred, axis=1)
        if r.max() - r.min() > tol:
            return False
        ring = centred[np.argsort(np.arctan2(centred @ e2, centred @ e1))]
        edges = np.linalg.norm(ring - np.roll(ring, 1, axis=0), axis=1)
        if edges.max() - edges.min() > tol or abs(edges[0] - r[0]) > tol:
            return False
        flats.append(flat)
    # the two hexagons coincide when viewed down the axis
    return nearest_point_distance(flats[0], flats[1]) <= tol


def fixed_axis(matrix: np.ndarray) -> np.ndarray:
    """Unit eigenvector with eigenvalue 1 of a 3x3 rotation, sign fixed by its largest entry."""
    w, v = np.linalg.eig(np.asarray(matrix, dtype=float))
    k = int(np.argmin(np.abs(w - 1)))
    a = np.real(v[:, k])
    a /= np.linalg.norm(a)
    return a if a[np.argmax(np.abs(a))] > 0 else -a


def nearest_point_distance(a: np.ndarray, b: np.ndarray) -> float:
    """max over a of the distance to the nearest point of b."""
    return float(cKDTree(np.asarray(b)).query(np.asarray(a))[0].max())
