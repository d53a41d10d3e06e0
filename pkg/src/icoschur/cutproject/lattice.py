"""The three hypercubic Bravais lattices of R^6 and integer-ball enumeration."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

KINDS = ("SC", "BCC", "FCC")


def _generator(kind: str) -> tuple[tuple[Fraction, ...], ...]:
    h = Fraction(1, 2)
    cols: list[list[Fraction]]
    if kind == "SC":
        cols = [[Fraction(int(i == j)) for i in range(6)] for j in range(6)]
    elif kind == "BCC":
        cols = [[Fraction(int(i == j)) for i in range(6)] for j in range(5)]
        cols.append([h] * 6)
    elif kind == "FCC":
        # half of the D6 root lattice basis e_i - e_{i+1}, e_5 + e_6
        cols = []
        for j in range(5):
            c = [Fraction(0)] * 6
            c[j], c[j + 1] = h, -h
            cols.append(c)
        c = [Fraction(0)] * 6
        c[4] = c[5] = h
        cols.append(c)
    else:
        raise ValueError(f"unknown lattice kind {kind!r}")
    return tuple(tuple(cols[j][i] for j in range(6)) for i in range(6))


@dataclass(frozen=True)
class HypercubicLattice:
    kind: str = "SC"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"lattice kind must be one of {KINDS}")

    @property
    def generator(self) -> tuple[tuple[Fraction, ...], ...]:
        """Columns generate the lattice; entries are exact rationals."""
        return _generator(self.kind)

    def generator_array(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.generator])

    def contains(self, x: Sequence) -> bool:
        doubled = [Fraction(v) * 2 for v in x]
        if len(doubled) != 6 or any(d.denominator != 1 for d in doubled):
            return False
        ints = [int(d) for d in doubled]
        if self.kind == "SC":
            return all(i % 2 == 0 for i in ints)
        if self.kind == "BCC":
            return len({i % 2 for i in ints}) == 1
        return sum(ints) % 2 == 0

    def voronoi_vertices(self) -> np.ndarray:
        """Vertices of the Voronoi cell of the origin (SC only: the cube (+-1/2)^6)."""
        if self.kind != "SC":
            raise NotImplementedError("Voronoi cells are only built for the simple cubic lattice")
        return np.array(list(itertools.product((-0.5, 0.5), repeat=6)))


SC = HypercubicLattice("SC")


def _isqrt_array(n: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(n.astype(float))).astype(np.int64)
    r -= (r * r > n)
    r += ((r + 1) * (r + 1) <= n)
    return r


def integer_ball(radius_sq: float, first: int | None = None, dim: int = 6) -> np.ndarray:
    """All v in Z^dim with |v|^2 <= radius_sq, grown coordinate by coordinate.

    Each prefix only receives the next-coordinate values its remaining
    budget allows, so nothing outside the ball is ever materialised.  With
    ``first`` set, only vectors with that leading coordinate are produced,
    which is how enumeration is chunked.  Rows come out in lexicographic order.
    """
    budget = int(math.floor(radius_sq + 1e-9))
    if budget < 0:
        return np.zeros((0, dim), dtype=np.int64)
    m = math.isqrt(budget)
    if first is None:
        prefix = np.arange(-m, m + 1, dtype=np.int64)[:, None]
    elif first * first <= budget:
        prefix = np.array([[first]], dtype=np.int64)
    else:
        return np.zeros((0, dim), dtype=np.int64)
    partial = (prefix ** 2).sum(axis=1)
    for _ in range(dim - 1):
        lim = _isqrt_array(budget - partial)
        counts = 2 * lim + 1
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        col = np.arange(counts.sum(), dtype=np.int64) - starts - np.repeat(lim, counts)
        prefix = np.hstack([np.repeat(prefix, counts, axis=0), col[:, None]])
        partial = np.repeat(partial, counts) + col ** 2
    return prefix
