"""Reduction matrices and block decompositions of the 6D representations.

Two tracks are kept apart.  Anything expressible in Q(tau) (the frame R,
the icosahedral and tetrahedral block tables, Q) is handled exactly with
GoldenNumber.  The dihedral reducers P1, P2, R1, R2 carry radicals outside
Q(tau) and live on a float track with tolerance ``FLOAT_TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import groups
from .golden import (
    TAU,
    TAU_FLOAT,
    GoldenNumber,
    ScaledGoldenMatrix,
    frame_check,
    golden_matrix,
    matmul,
    to_numpy,
    transpose,
)

FLOAT_TOL = 1e-12
TRACE_TOL = 1e-9

t = TAU

R_FRAME = ScaledGoldenMatrix(
    [
        [t, 1, 0, t, 0, 1],
        [0, t, 1, -1, t, 0],
        [-1, 0, t, 0, -1, t],
        [0, -t, 1, 1, t, 0],
        [t, -1, 0, -t, 0, 1],
        [1, 0, t, 0, -1, -t],
    ],
    norm_squared=2 * (2 + t),
)

_half = GoldenNumber("1/2")

# icosahedral blocks, generator order (g2, g3)
RHO3 = (
    golden_matrix([[t - 1, 1, t], [1, -t, t - 1], [t, t - 1, -1]], _half),
    golden_matrix([[t, t - 1, 1], [1 - t, -1, t], [1, -t, 1 - t]], _half),
)
RHO3_PRIME = (
    golden_matrix([[t - 1, -t, -1], [-t, -1, t - 1], [-1, t - 1, -t]], _half),
    golden_matrix([[-1, 1 - t, -t], [t - 1, t, -1], [t, -1, 1 - t]], _half),
)

# tetrahedral blocks, generator order (g2, g3d)
GAMMA1 = (
    RHO3[0],
    golden_matrix([[1 - t, 1, t], [1, t, 1 - t], [-t, t - 1, -1]], _half),
)
GAMMA2 = (
    RHO3_PRIME[0],
    golden_matrix([[1 - t, t, -1], [-t, -1, 1 - t], [-1, t - 1, t]], _half),
)
Q_SCALED = ScaledGoldenMatrix(
    [[3 - t, 1, t + 2], [-t - 2, 3 - t, 1], [-1, -t - 2, 3 - t]],
    norm_squared=16,
)

# D10 blocks, generator order (g2d, g5d)
D1 = (
    golden_matrix([[-t, t - 1, -1], [t - 1, -1, -t], [-1, -t, t - 1]], _half),
    golden_matrix([[t - 1, -1, t], [1, t, t - 1], [-t, t - 1, 1]], _half),
)
D2 = (
    golden_matrix([[-1, t - 1, t], [t - 1, -t, 1], [t, 1, t - 1]], _half),
    golden_matrix([[1 - t, -t, -1], [-t, 1, 1 - t], [1, t - 1, -t]], _half),
)

# D6 blocks, generator order (g2d, g3)
S1 = (D1[0], RHO3[1])
S2 = (D2[0], RHO3_PRIME[1])

_tf = TAU_FLOAT
_s5 = math.sqrt(5.0)
_s3 = math.sqrt(3.0)

P1 = np.array(
    [
        [0.0, 1.0, 0.0],
        [math.sqrt((_tf + 2) / 5), 0.0, math.sqrt((3 - _tf) / 5)],
        [(2 * _tf - 1) / math.sqrt(5 * (_tf + 2)), 0.0, (1 - 2 * _tf) / math.sqrt(5 * (3 - _tf))],
    ]
)
P2 = np.array(
    [
        [math.sqrt((3 - _tf) / 5), (2 * _tf - 1) / math.sqrt(5 * (3 - _tf)), 0.0],
        [(1 - 2 * _tf) / math.sqrt(5 * (3 - _tf)), math.sqrt((3 - _tf) / 5), 0.0],
        [0.0, 0.0, 1.0],
    ]
)
R1 = np.array([[_tf, 0.0, 1 - _tf], [0.0, _s3, 0.0], [_tf - 1, 0.0, _tf]]) / _s3
R2 = np.array([[0.0, _s3, 0.0], [_tf, 0.0, 1 - _tf], [1 - _tf, 0.0, -_tf]]) / _s3

SOURCE_BLOCKS = {
    "I": (RHO3, RHO3_PRIME),
    "T": (GAMMA1, GAMMA2),
    "D10": (D1, D2),
    "D6": (S1, S2),
}


class ConstantTableCorruption(Exception):
    pass


class UnidentifiedIrrep(Exception):
    pass


@dataclass(frozen=True)
class ReductionFrame:
    matrix: ScaledGoldenMatrix

    def __post_init__(self):
        if self.matrix.rows != 6 or self.matrix.cols != 6:
            raise ValueError("reduction frame must be 6x6")

    @property
    def array(self) -> np.ndarray:
        return self.matrix.to_numpy()

    @property
    def inverse(self) -> np.ndarray:
        # orthogonal frame: inverse is the transpose
        return self.array.T

    @property
    def parallel_rows(self) -> np.ndarray:
        return self.inverse[:3]

    @property
    def perp_rows(self) -> np.ndarray:
        return self.inverse[3:]

    def is_exact_frame(self) -> bool:
        return frame_check(self.matrix)


DEFAULT_FRAME = ReductionFrame(R_FRAME)


@dataclass
class BlockDecomposition:
    """Conjugated generators split into 3x3 diagonal blocks.

    On the exact track ``top`` and ``bottom`` hold tuple-of-tuple GoldenNumber
    matrices; on the float track they hold numpy arrays.
    """

    top: list
    bottom: list
    off_block_residual: float
    conjugated: list = field(repr=False)
    exact: bool = False
    pattern_residual: float = 0.0

    def top_arrays(self) -> list[np.ndarray]:
        return [to_numpy(b) if self.exact else np.asarray(b) for b in self.top]

    def bottom_arrays(self) -> list[np.ndarray]:
        return [to_numpy(b) if self.exact else np.asarray(b) for b in self.bottom]


def reduce_rep(frame: ReductionFrame, rep: groups.MatrixGroup | Sequence) -> BlockDecomposition:
    """Conjugate each generator by the frame, exactly, and split into blocks."""
    gens = rep.generators if isinstance(rep, groups.MatrixGroup) else rep
    e = frame.matrix.entries
    et = transpose(e)
    ns = frame.matrix.norm_squared
    conj = []
    for g in gens:
        gm = golden_matrix(g)
        k = matmul(matmul(et, gm), e)
        conj.append(tuple(tuple(x / ns for x in row) for row in k))
    residual = 0.0
    for k in conj:
        for i in range(6):
            for j in range(6):
                if (i < 3) != (j < 3) and k[i][j]:
                    residual = max(residual, abs(float(k[i][j])))
    top = [tuple(row[:3] for row in k[:3]) for k in conj]
    bottom = [tuple(row[3:] for row in k[3:]) for k in conj]
    return BlockDecomposition(top, bottom, residual, conj, exact=True)


def reduce_rep_float(frame_matrix: np.ndarray, generators: Sequence[np.ndarray]) -> BlockDecomposition:
    """Float-track version of :func:`reduce_rep` for an arbitrary orthogonal frame."""
    f = np.asarray(frame_matrix, dtype=float)
    conj = [f.T @ np.asarray(g, dtype=float) @ f for g in generators]
    residual = max(
        max(np.abs(k[:3, 3:]).max(), np.abs(k[3:, :3]).max()) for k in conj
    )
    return BlockDecomposition(
        [k[:3, :3] for k in conj], [k[3:, 3:] for k in conj], float(residual), conj
    )


# irrep identification


def float_closure(generators: Sequence[np.ndarray], cap: int = 240, decimals: int = 8) -> list[np.ndarray]:
    """Closure of real matrices, hashing entries rounded to ``decimals``."""
    gens = [np.asarray(g, dtype=float) for g in generators]
    n = gens[0].shape[0]

    def key(m):
        return tuple((np.round(m, decimals) + 0.0).ravel())

    e = np.eye(n)
    seen = {key(e): e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = key(y)
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > cap:
                        raise UnidentifiedIrrep("block generators do not close to a small finite group")
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def commutant_dimension(generators: Sequence[np.ndarray], tol: float = 1e-9) -> int:
    """Dimension of {X : X g = g X for all generators} over the reals."""
    n = np.asarray(generators[0]).shape[0]
    eye = np.eye(n)
    rows = [np.kron(eye, np.asarray(g)) - np.kron(np.asarray(g).T, eye) for g in generators]
    return n * n - int(np.linalg.matrix_rank(np.vstack(rows), tol=tol))


def _as_float(block) -> np.ndarray:
    if isinstance(block, np.ndarray):
        return block.astype(float)
    return to_numpy(block)


def identify_irrep(generators: Sequence) -> str:
    """Label a pair of 3x3 block generators by (group order, trace) signature.

    The generators must be given in presentation order: (g2, g3) for the
    icosahedral and D6 images, (g2, g3d) for tetrahedral, (g2d, g5d) for D10.
    """
    a, b = (_as_float(g) for g in generators)
    order = len(float_closure([a, b]))
    tr_a, tr_b, tr_ab = np.trace(a), np.trace(b), np.trace(a @ b)

    def near(x, y):
        return abs(x - y) < TRACE_TOL

    tau_c = 1 - TAU_FLOAT
    if order == 60 and near(tr_a, -1) and near(tr_b, 0):
        if near(tr_ab, TAU_FLOAT):
            return "T1"
        if near(tr_ab, tau_c):
            return "T2"
    if order == 12 and near(tr_a, -1) and near(tr_b, 0) and near(tr_ab, 0):
        return "T(tetrahedral)"
    if order == 10 and near(tr_a, -1):
        # A2 contributes 1 to the five-fold trace; E1 gives tau - 1, E2 gives -tau
        if near(tr_b, TAU_FLOAT):
            return "A2+E1"
        if near(tr_b, 1 - TAU_FLOAT):
            return "A2+E2"
    if order == 6 and near(tr_a, -1) and near(tr_b, 0):
        return "A2+E"
    if order not in (6, 10, 12, 60):
        raise UnidentifiedIrrep(f"block group of order {order} is not a known image")
    if commutant_dimension([a, b]) > 1:
        return "reducible-other"
    raise UnidentifiedIrrep(
        f"irreducible block of order {order} with traces ({tr_a:.6g}, {tr_b:.6g}, {tr_ab:.6g})"
    )


def identify_e_block(g5_block_2x2: np.ndarray) -> str:
    """E1 vs E2 for the 2x2 dihedral block of a five-fold generator."""
    tr = float(np.trace(g5_block_2x2))
    if abs(tr - (TAU_FLOAT - 1)) < TRACE_TOL:
        return "E1"
    if abs(tr + TAU_FLOAT) < TRACE_TOL:
        return "E2"
    raise UnidentifiedIrrep(f"2x2 block trace {tr:.6g} matches neither E1 nor E2")


# subgroup reducers


@dataclass(frozen=True)
class SubgroupReducer:
    tag: str
    conjugator: np.ndarray = field(repr=False)
    exact_blocks: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        c = self.conjugator
        if np.abs(c @ c.T - np.eye(6)).max() > FLOAT_TOL:
            raise ConstantTableCorruption(f"{self.tag} conjugator is not orthogonal")


def _direct_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((6, 6))
    out[:3, :3] = a
    out[3:, 3:] = b
    return out


def _q_hat_exact():
    eye = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    q = Q_SCALED.normalized().entries
    rows = [tuple(GoldenNumber.coerce(x) for x in r) + (0, 0, 0) for r in eye]
    rows += [(0, 0, 0) + tuple(r) for r in q]
    return tuple(tuple(GoldenNumber.coerce(x) for x in r) for r in rows)


def reducers() -> dict[str, SubgroupReducer]:
    return {
        "T": SubgroupReducer("T", _direct_sum(np.eye(3), Q_SCALED.to_numpy()), _q_hat_exact()),
        "D10": SubgroupReducer("D10", _direct_sum(P1, P2)),
        "D6": SubgroupReducer("D6", _direct_sum(R1, R2)),
        "identity": SubgroupReducer("identity", np.eye(6)),
    }


def block_pattern_residual(block: np.ndarray) -> float:
    """Largest entry coupling the 1x1 (A2) slot to the 2x2 (E) slot."""
    b = np.asarray(block)
    return float(max(np.abs(b[0, 1:]).max(), np.abs(b[1:, 0]).max()))


def apply_subgroup_reducer(reducer: SubgroupReducer, decomposition: BlockDecomposition,
                           tol: float = FLOAT_TOL) -> BlockDecomposition:
    """Conjugate a decomposition by a subgroup reducer and check the target pattern.

    T: both blocks must coincide (Gamma1 + Gamma1).  D10/D6: each 3x3 block
    must split as 1 + 2.  Violations beyond ``tol`` mean a constant table is
    corrupt.
    """
    if reducer.tag == "identity":
        return decomposition
    if reducer.tag == "T" and decomposition.exact and reducer.exact_blocks is not None:
        qh = reducer.exact_blocks
        conj = [matmul(matmul(transpose(qh), k), qh) for k in decomposition.conjugated]
        top = [tuple(r[:3] for r in k[:3]) for k in conj]
        bottom = [tuple(r[3:] for r in k[3:]) for k in conj]
        diff = 0.0
        for x, y in zip(top, bottom):
            for rx, ry in zip(x, y):
                for u, v in zip(rx, ry):
                    if u != v:
                        diff = max(diff, abs(float(u - v)))
        if diff > tol:
            raise ConstantTableCorruption(f"Q does not carry Gamma2 onto Gamma1 (diff {diff:.3g})")
        return BlockDecomposition(top, bottom, decomposition.off_block_residual, conj,
                                  exact=True, pattern_residual=diff)

    c = reducer.conjugator
    mats = [
        to_numpy(k) if decomposition.exact else np.asarray(k) for k in decomposition.conjugated
    ]
    conj = [c.T @ k @ c for k in mats]
    top = [k[:3, :3] for k in conj]
    bottom = [k[3:, 3:] for k in conj]
    off = max(max(np.abs(k[:3, 3:]).max(), np.abs(k[3:, :3]).max()) for k in conj)
    if reducer.tag == "T":
        pattern = max(np.abs(x - y).max() for x, y in zip(top, bottom))
    else:
        pattern = max(block_pattern_residual(b) for b in top + bottom)
    if pattern > tol:
        raise ConstantTableCorruption(
            f"{reducer.tag} reducer leaves pattern residual {pattern:.3g} > {tol:g}"
        )
    return BlockDecomposition(top, bottom, float(off), conj, exact=False,
                              pattern_residual=float(pattern))


def blocks_equal_exact(computed: Sequence, expected: Sequence) -> bool:
    return all(tuple(map(tuple, c)) == tuple(map(tuple, e)) for c, e in zip(computed, expected))


def frobenius_sq(mats: Sequence[np.ndarray]) -> float:
    return float(sum(np.sum(np.asarray(m) ** 2) for m in mats))
