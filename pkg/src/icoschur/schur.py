"""Centralizer rotation families and their boundary angles.

For a maximal subgroup G of the icosahedral group, every rotation commuting
with the 6D representation of G has the form ``C @ block(angles) @ C.T``
where C reduces G to a canonical block form.  The boundary angles are the
angles at which the rotated frame ``evaluate(angles) @ R`` block-diagonalises
the partner icosahedral representation again.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import groups
from .reduction import DEFAULT_FRAME, identify_irrep, reducers

log = logging.getLogger(__name__)

ARITY = {"T": 1, "D10": 1, "D6": 2}

SCAN_STEP_CIRCLE = math.radians(0.05)
SCAN_STEP_TORUS = math.radians(0.5)
CANDIDATE_THRESHOLD = 0.05
DEDUP_DISTANCE = 1e-6
MAX_ITERATIONS = 200
# a refined candidate whose residual stalls above this is a genuine nonzero minimum
NONROOT_FLOOR = 1e-3

_A, _B = math.atan(0.5), math.atan(2.0)
# closed-form boundary sets, used as oracles for the numerical solver
CLOSED_FORMS = {
    "T": ((-_A,), (math.pi - _A,), (_B,), (_B - math.pi,)),
    "D10": ((math.pi / 2,), (-math.pi / 2,)),
    "D6": (
        (_A, _B), (_A - math.pi, _B - math.pi), (_A - math.pi, _B), (_A, _B - math.pi),
        (-_B, -_A), (math.pi - _B, math.pi - _A), (math.pi - _B, -_A), (-_B, math.pi - _A),
    ),
}
# worked-example endpoints: the default when no index is given
EXAMPLE_ENDPOINTS = {"T": (-_A,), "D10": (math.pi / 2,), "D6": (_A, _B)}


class ArityError(ValueError):
    pass


class SolverFailure(RuntimeError):
    def __init__(self, message: str, seed):
        super().__init__(f"{message} (seed {tuple(float(s) for s in seed)})")
        self.seed = seed


class NotABoundarySolution(ValueError):
    pass


def canonical_angle(x: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    y = math.remainder(float(x), 2 * math.pi)
    if y <= -math.pi:
        y += 2 * math.pi
    return y + 0.0


def angular_distance(x: Sequence[float], y: Sequence[float]) -> float:
    return max(abs(math.remainder(a - b, 2 * math.pi)) for a, b in zip(x, y))


@dataclass(frozen=True, order=True)
class AngleParameter:
    values: tuple

    def __init__(self, values):
        if isinstance(values, (int, float)):
            values = (values,)
        vals = tuple(canonical_angle(v) for v in values)
        if len(vals) not in (1, 2):
            raise ArityError("angle parameters have one or two components")
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __add__(self, other: AngleParameter) -> AngleParameter:
        return AngleParameter([a + b for a, b in zip(self.values, other.values)])

    def close_to(self, other: AngleParameter, tol: float = DEDUP_DISTANCE) -> bool:
        return len(self) == len(other) and angular_distance(self.values, other.values) <= tol


# canonical block forms, written as sum_k w_k(angles) * BASIS[k]


def _rot_basis(pairs_a: Sequence[tuple[int, int]], fixed: Sequence[int]):
    """Basis matrices (const, cos, sin) for planar rotations on index pairs."""
    const = np.zeros((6, 6))
    for i in fixed:
        const[i, i] = 1.0
    cos = np.zeros((6, 6))
    sin = np.zeros((6, 6))
    for i, j in pairs_a:
        cos[i, i] = cos[j, j] = 1.0
        sin[i, j] = -1.0
        sin[j, i] = 1.0
    return const, cos, sin


_T_CONST, _T_COS, _T_SIN = _rot_basis([(0, 3), (1, 4), (2, 5)], [])
_D10_CONST, _D10_COS, _D10_SIN = _rot_basis([(0, 3)], [1, 2, 4, 5])
# D6: first angle turns the two E planes, second angle turns the A2 plane
_D6_E_CONST, _D6_E_COS, _D6_E_SIN = _rot_basis([(1, 4), (2, 5)], [])
_D6_A_CONST, _D6_A_COS, _D6_A_SIN = _rot_basis([(0, 3)], [])

BLOCK_BASIS = {
    "T": (_T_COS, _T_SIN),
    "D10": (_D10_CONST, _D10_COS, _D10_SIN),
    "D6": (_D6_E_COS, _D6_E_SIN, _D6_A_COS, _D6_A_SIN),
}


def _weights(tag: str, angles: np.ndarray) -> np.ndarray:
    """Trig weights for BLOCK_BASIS; ``angles`` has shape (n, arity)."""
    a = np.atleast_2d(angles)
    if tag == "T":
        return np.stack([np.cos(a[:, 0]), np.sin(a[:, 0])], axis=1)
    if tag == "D10":
        return np.stack([np.ones(len(a)), np.cos(a[:, 0]), np.sin(a[:, 0])], axis=1)
    return np.stack([np.cos(a[:, 0]), np.sin(a[:, 0]), np.cos(a[:, 1]), np.sin(a[:, 1])], axis=1)


def block_form(tag: str, angles: Sequence[float]) -> np.ndarray:
    """N(beta) for T, M(beta) for D10, P(alpha, beta) for D6."""
    w = _weights(tag, np.asarray(angles, dtype=float)[None, :])[0]
    return sum(wk * bk for wk, bk in zip(w, BLOCK_BASIS[tag]))


_OFF_MASK = np.zeros((6, 6), dtype=bool)
_OFF_MASK[:3, 3:] = True
_OFF_MASK[3:, :3] = True


@dataclass(frozen=True)
class SchurFamily:
    tag: str
    conjugator: np.ndarray = field(repr=False)
    frame: np.ndarray = field(repr=False)
    subgroup_generators: tuple = field(repr=False)
    partner_generators: tuple = field(repr=False)

    @property
    def arity(self) -> int:
        return ARITY[self.tag]

    def block(self, angles) -> np.ndarray:
        return block_form(self.tag, _values(angles, self.arity))

    def evaluate(self, angles) -> np.ndarray:
        c = self.conjugator
        return c @ self.block(angles) @ c.T

    def rotated_frame(self, angles) -> np.ndarray:
        return self.evaluate(angles) @ self.frame

    def partner_conjugates(self, angles) -> list[np.ndarray]:
        rg = self.rotated_frame(angles)
        return [rg.T @ g @ rg for g in self.partner_generators]

    def residual_vector(self, angles) -> np.ndarray:
        """The 36 off-diagonal-block entries of the two conjugated partner generators."""
        return np.concatenate([k[_OFF_MASK] for k in self.partner_conjugates(angles)])

    def boundary_solutions(self) -> list[AngleParameter]:
        return list(_cached_solutions(self.tag))


def _values(angles, arity: int) -> tuple[float, ...]:
    if isinstance(angles, AngleParameter):
        vals = angles.values
    elif isinstance(angles, (int, float)):
        vals = (float(angles),)
    else:
        vals = tuple(float(a) for a in angles)
    if len(vals) != arity:
        raise ArityError(f"expected {arity} angle(s), got {len(vals)}")
    return vals


@lru_cache(maxsize=None)
def family(tag: str) -> SchurFamily:
    if tag not in ARITY:
        raise KeyError(f"unknown subgroup {tag!r}; expected one of T, D10, D6")
    frame = DEFAULT_FRAME.array
    c = frame @ reducers()[tag].conjugator
    sub = tuple(groups.to_array(g) for g in groups.group(tag).generators)
    partner = tuple(groups.to_array(g) for g in groups.group(groups.PARTNER[tag]).generators)
    return SchurFamily(tag, c, frame, sub, partner)


def evaluate(fam: SchurFamily, angles) -> np.ndarray:
    return fam.evaluate(angles)


def commutation_residual(fam: SchurFamily, angles) -> float:
    x = fam.evaluate(angles)
    return float(max(np.abs(x @ g - g @ x).max() for g in fam.subgroup_generators))


def off_block_residual_at(fam: SchurFamily, angles) -> float:
    return float(np.abs(fam.residual_vector(angles)).max())


# vectorised residual for scanning: the off-block entries are a quadratic
# form in the trig weights, so precompute the coefficient tensor once


@lru_cache(maxsize=None)
def _coefficients(tag: str) -> np.ndarray:
    fam = family(tag)
    c = fam.conjugator
    a = c.T @ fam.frame
    basis = BLOCK_BASIS[tag]
    k = len(basis)
    coeff = np.zeros((k, k, 36))
    for gi, g in enumerate(fam.partner_generators):
        gc = c.T @ g @ c
        for i in range(k):
            for j in range(k):
                m = a.T @ basis[i].T @ gc @ basis[j] @ a
                coeff[i, j, gi * 18:(gi + 1) * 18] = m[_OFF_MASK]
    return coeff


def residual_grid(tag: str, angles: np.ndarray, chunk: int = 65536) -> np.ndarray:
    """Max-abs off-block residual at each row of ``angles`` (shape (n, arity))."""
    coeff = _coefficients(tag)
    angles = np.atleast_2d(np.asarray(angles, dtype=float))
    out = np.empty(len(angles))
    for start in range(0, len(angles), chunk):
        w = _weights(tag, angles[start:start + chunk])
        r = np.einsum("ni,nj,ijm->nm", w, w, coeff, optimize=True)
        out[start:start + chunk] = np.abs(r).max(axis=1)
    return out


def _scan_candidates(tag: str, offset: float = 0.0) -> list[np.ndarray]:
    if ARITY[tag] == 1:
        n = round(2 * math.pi / SCAN_STEP_CIRCLE)
        grid = -math.pi + offset + SCAN_STEP_CIRCLE * np.arange(n)
        res = residual_grid(tag, grid[:, None])
        left, right = np.roll(res, 1), np.roll(res, -1)
        idx = np.nonzero((res <= left) & (res <= right) & (res < CANDIDATE_THRESHOLD))[0]
        return [np.array([grid[i]]) for i in idx]
    n = round(2 * math.pi / SCAN_STEP_TORUS)
    axis = -math.pi + offset + SCAN_STEP_TORUS * np.arange(n)
    aa, bb = np.meshgrid(axis, axis, indexing="ij")
    res = residual_grid(tag, np.stack([aa.ravel(), bb.ravel()], axis=1)).reshape(n, n)
    is_min = res < CANDIDATE_THRESHOLD
    for da in (-1, 0, 1):
        for db in (-1, 0, 1):
            if da or db:
                is_min &= res <= np.roll(np.roll(res, da, axis=0), db, axis=1)
    ii, jj = np.nonzero(is_min)
    return [np.array([axis[i], axis[j]]) for i, j in zip(ii, jj)]


def refine(fam: SchurFamily, seed: np.ndarray, tolerance: float,
           step: float = 1e-6) -> tuple[np.ndarray, float] | None:
    """Gauss-Newton on the 36 residual entries with a central-difference Jacobian.

    Returns (angles, residual) on convergence, None if the seed sits in a
    nonzero local minimum.  Raises SolverFailure when a near-root seed does
    not reach ``tolerance`` within MAX_ITERATIONS.
    """
    x = np.array(seed, dtype=float)
    r = fam.residual_vector(x)
    best = float(np.abs(r).max())
    for _ in range(MAX_ITERATIONS):
        jac = np.empty((r.size, x.size))
        for k in range(x.size):
            h = np.zeros_like(x)
            h[k] = step
            jac[:, k] = (fam.residual_vector(x + h) - fam.residual_vector(x - h)) / (2 * step)
        delta = np.linalg.lstsq(jac, -r, rcond=None)[0]
        lam = 1.0
        while lam > 1e-6:
            xn = x + lam * delta
            rn = fam.residual_vector(xn)
            cur = float(np.abs(rn).max())
            if cur < best or cur < tolerance * 1e-3:
                break
            lam /= 2
        else:
            break
        moved = float(np.abs(xn - x).max())
        x, r, best = xn, rn, cur
        if best < tolerance and moved < 1e-14:
            break
    if best < tolerance:
        return x, best
    if best > NONROOT_FLOOR:
        return None
    raise SolverFailure(f"refinement stalled at residual {best:.3g}", seed)


def boundary_solve(fam: SchurFamily, tolerance: float = 1e-12, offset: float = 0.0) -> list[AngleParameter]:
    """All boundary angles of ``fam``: dense scan, refine each candidate, deduplicate.

    Output is sorted by canonical angle so reruns give identical order.
    """
    if not 0 < tolerance <= 1e-6:
        raise ValueError("tolerance must lie in (0, 1e-6]")
    found: list[AngleParameter] = []
    for seed in _scan_candidates(fam.tag, offset):
        out = refine(fam, seed, tolerance)
        if out is None:
            continue
        angle = AngleParameter(out[0])
        if not any(angle.close_to(f) for f in found):
            found.append(angle)
    # rounded key: equal leading angles must not be ordered by float noise
    found.sort(key=lambda a: tuple(round(v, 9) for v in a.values))
    log.debug("%s: %d boundary solutions", fam.tag, len(found))
    return found


@lru_cache(maxsize=None)
def _cached_solutions(tag: str) -> tuple[AngleParameter, ...]:
    return tuple(boundary_solve(family(tag)))


def default_endpoint_index(tag: str) -> int:
    target = AngleParameter(EXAMPLE_ENDPOINTS[tag])
    for i, sol in enumerate(family(tag).boundary_solutions()):
        if sol.close_to(target, 1e-9):
            return i
    raise SolverFailure("example endpoint missing from the solution set", target.values)


def endpoint_by_index(tag: str, index: int | None) -> AngleParameter:
    sols = family(tag).boundary_solutions()
    if index is None:
        index = default_endpoint_index(tag)
    if not 0 <= index < len(sols):
        raise IndexError(f"endpoint index {index} out of range for {tag} ({len(sols)} solutions)")
    return sols[index]


def boundary_irreps(fam: SchurFamily, angles) -> tuple[str, str]:
    """Irrep labels of the two diagonal blocks of the conjugated partner representation."""
    ks = fam.partner_conjugates(angles)
    return identify_irrep([k[:3, :3] for k in ks]), identify_irrep([k[3:, 3:] for k in ks])


def validate_endpoint(fam: SchurFamily, endpoint, tol: float = 1e-8) -> AngleParameter:
    ep = endpoint if isinstance(endpoint, AngleParameter) else AngleParameter(_values(endpoint, fam.arity))
    if len(ep) != fam.arity:
        raise ArityError(f"expected {fam.arity} angle(s)")
    res = off_block_residual_at(fam, ep)
    if res > tol:
        raise NotABoundarySolution(f"{ep.values} is not a boundary angle (residual {res:.3g})")
    return ep


def path_angles(endpoint: AngleParameter, t: float,
                waypoints: Sequence[Sequence[float]] | None = None) -> tuple[float, ...]:
    """Angles at parameter t on the straight path 0 -> endpoint, or a waypoint polyline."""
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    end = np.array(endpoint.values)
    if not waypoints:
        return tuple(float(v) for v in t * end)
    nodes = [np.zeros_like(end)] + [np.asarray(w, dtype=float) for w in waypoints] + [end]
    segs = len(nodes) - 1
    s = t * segs
    i = min(int(s), segs - 1)
    u = s - i
    return tuple(float(v) for v in (1 - u) * nodes[i] + u * nodes[i + 1])


def rotation_path(fam: SchurFamily, endpoint, t: float,
                  waypoints: Sequence[Sequence[float]] | None = None) -> np.ndarray:
    """M(t) on the path from the identity to the Schur operator at ``endpoint``."""
    ep = validate_endpoint(fam, endpoint)
    return fam.evaluate(path_angles(ep, t, waypoints))

