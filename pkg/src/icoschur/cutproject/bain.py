"""Bain-strain picture: deform the lattice, keep the projection frame fixed."""

from __future__ import annotations

import numpy as np

from ..schur import SchurFamily, validate_endpoint
from .lattice import SC, integer_ball
from .oracles import hausdorff_distance
from .patches import GuardViolation, enumerate_model_set, projection_at
from .window import window_from_points

BAIN_GUARD = 6.0


def strained_model_set(fam: SchurFamily, endpoint, t: float, radius_max: float,
                       waypoints=None) -> np.ndarray:
    """Sigma~_t: points pi_par(B(t) m) with pi_perp(B(t) m) in pi_perp(B(t) V(0)), B(t) = M(t)^-1."""
    ep = validate_endpoint(fam, endpoint)
    m, _ = projection_at(fam, ep, t, waypoints)
    basis = m.T
    proj = fam.frame.T
    window = window_from_points(SC.voronoi_vertices() @ basis.T @ proj[3:].T)
    deformed = integer_ball(radius_max ** 2 + window.circumradius ** 2) @ basis.T
    par, perp = deformed @ proj[:3].T, deformed @ proj[3:].T
    keep = (np.einsum("ij,ij->i", par, par) <= radius_max ** 2 + 1e-12) & (window.classify(perp) < 2)
    return par[keep]


def bain_equivalence_check(fam: SchurFamily, endpoint, t: float, radius_max: float,
                           waypoints=None) -> float:
    """Hausdorff distance between the strained-lattice and rotated-frame constructions."""
    if not 0.0 < radius_max <= BAIN_GUARD:
        raise GuardViolation(f"radius_max must lie in (0, {BAIN_GUARD:g}] for the Bain check")
    strained = strained_model_set(fam, endpoint, t, radius_max, waypoints)
    rotated = enumerate_model_set(fam, endpoint, t, radius_max, waypoints=waypoints).points
    return hausdorff_distance(strained, rotated)
