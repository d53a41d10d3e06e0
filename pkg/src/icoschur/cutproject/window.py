"""Projection windows: convex hulls of projected Voronoi vertices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .lattice import HypercubicLattice, SC

BOUNDARY_EPS = 1e-9
INSIDE, BOUNDARY, OUTSIDE = "inside", "boundary", "outside"


class SingularFrame(ValueError):
    pass


@dataclass(frozen=True)
class ProjectionWindow:
    normals: np.ndarray = field(repr=False)
    offsets: np.ndarray = field(repr=False)
    vertices: np.ndarray = field(repr=False)
    eps: float = BOUNDARY_EPS

    @property
    def face_count(self) -> int:
        return len(self.offsets)

    @property
    def circumradius(self) -> float:
        return float(np.linalg.norm(self.vertices, axis=1).max())

    @property
    def diameter(self) -> float:
        v = self.vertices
        return float(np.linalg.norm(v[:, None, :] - v[None, :, :], axis=2).max())

    @property
    def inradius(self) -> float:
        return float(self.offsets.min())

    def slack(self, x: np.ndarray) -> np.ndarray:
        """max over faces of n.x - offset, for each row of ``x``."""
        x = np.atleast_2d(x)
        return (x @ self.normals.T - self.offsets).max(axis=1)

    def classify(self, x: np.ndarray) -> np.ndarray:
        """Vectorised membership: 0 inside, 1 boundary, 2 outside."""
        s = self.slack(x)
        return np.where(s <= -self.eps, 0, np.where(s <= self.eps, 1, 2))

    def sorted_offsets(self) -> np.ndarray:
        return np.sort(self.offsets)


def window_from_points(points: np.ndarray, eps: float = BOUNDARY_EPS) -> ProjectionWindow:
    """Half-space form of the convex hull of 3D points, coplanar facets merged."""
    pts = np.asarray(points, dtype=float)
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise SingularFrame(f"degenerate window: {exc}") from None
    if hull.volume < 1e-9:
        raise SingularFrame(f"window volume {hull.volume:.3g} below 1e-9")
    faces: dict[tuple, tuple[np.ndarray, float]] = {}
    for eq in hull.equations:
        n = eq[:3] / np.linalg.norm(eq[:3])
        off = -eq[3] / np.linalg.norm(eq[:3])
        key = tuple(np.round(np.append(n, off), 7))
        faces.setdefault(key, (n, off))
    keys = sorted(faces)
    normals = np.array([faces[k][0] for k in keys])
    offsets = np.array([faces[k][1] for k in keys])
    verts = np.unique(np.round(pts[hull.vertices], 12), axis=0)
    w = ProjectionWindow(normals, offsets, verts, eps)
    if (w.slack(verts) > eps).any():
        raise SingularFrame("hull vertices violate their own half-spaces")
    return w


def build_window(rotation: np.ndarray, frame: np.ndarray, lattice: HypercubicLattice = SC,
                 eps: float = BOUNDARY_EPS) -> ProjectionWindow:
    """W_t: hull of the Voronoi vertices under pi_perp_t = pi_perp @ rotation^-1."""
    if lattice.kind != "SC":
        raise NotImplementedError("windows are only built for the simple cubic lattice")
    perp = (np.asarray(frame).T @ np.asarray(rotation).T)[3:]
    return window_from_points(lattice.voronoi_vertices() @ perp.T, eps)


def window_contains(w: ProjectionWindow, x) -> str:
    return (INSIDE, BOUNDARY, OUTSIDE)[int(w.classify(np.asarray(x, dtype=float))[0])]
