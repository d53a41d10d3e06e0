"""Signed-permutation matrix groups inside the hyperoctahedral group B6.

Elements are stored as tuples of tuples of ints so that set semantics and
hashing are exact.  The generator tables below are the crystallographic
icosahedral representation, its three partner representations, and the
three maximal-subgroup representations they intersect in.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

B6_ORDER = 46080
LABELS = ("I", "I_T", "I_D10", "I_D6", "T", "D10", "D6", "other")

# (order of g2, order of g3, order of g2*g3)
PRESENTATIONS = {
    "I": (2, 3, 5),
    "I_T": (2, 3, 5),
    "I_D10": (2, 3, 5),
    "I_D6": (2, 3, 5),
    "T": (2, 3, 3),
    "D10": (2, 5, 2),
    "D6": (2, 3, 2),
}

Matrix = tuple[tuple[int, ...], ...]


class GroupError(Exception):
    pass


class ClosureCapExceeded(GroupError):
    pass


class UnsupportedPresentation(GroupError):
    pass


def signed_perm(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    if not is_signed_perm(m):
        raise ValueError("not a signed permutation matrix")
    return m


def is_signed_perm(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    if any(len(r) != n for r in m):
        return False
    if any(x not in (-1, 0, 1) for r in m for x in r):
        return False
    row_ok = all(sum(abs(x) for x in r) == 1 for r in m)
    col_ok = all(sum(abs(m[i][j]) for i in range(n)) == 1 for j in range(n))
    return row_ok and col_ok


def identity(n: int = 6) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mul(x: Matrix, y: Matrix) -> Matrix:
    # signed permutations: one nonzero per row, so the product is a row lookup
    out = []
    for row in x:
        for j, v in enumerate(row):
            if v:
                out.append(tuple(v * e for e in y[j]))
                break
    return tuple(out)


def inverse(x: Matrix) -> Matrix:
    return tuple(zip(*x))


def element_order(x: Matrix, limit: int = 120) -> int:
    e = identity(len(x))
    y = x
    for k in range(1, limit + 1):
        if y == e:
            return k
        y = mul(y, x)
    raise GroupError("element order exceeds limit")


def trace(x: Matrix) -> int:
    return sum(x[i][i] for i in range(len(x)))


def to_array(x: Matrix) -> np.ndarray:
    return np.array(x, dtype=float)


@dataclass(frozen=True)
class MatrixGroup:
    elements: frozenset
    generators: tuple
    label: str = "other"
    order: int = field(init=False)

    def __post_init__(self):
        if self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        object.__setattr__(self, "order", len(self.elements))

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return self.order

    def arrays(self) -> list[np.ndarray]:
        return [to_array(x) for x in sorted(self.elements)]

    def generator_arrays(self) -> list[np.ndarray]:
        return [to_array(g) for g in self.generators]

    def is_closed(self) -> bool:
        return all(mul(x, y) in self.elements for x in self.elements for y in self.elements)


def closure(generators: Sequence[Matrix], cap: int = B6_ORDER, label: str = "other") -> MatrixGroup:
    """Breadth-first product closure of ``generators``.

    Raises ClosureCapExceeded once more than ``cap`` elements have been produced.
    """
    gens = tuple(signed_perm(g) for g in generators)
    n = len(gens[0]) if gens else 6
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(f"closure exceeded cap {cap}")
        frontier = nxt
    return MatrixGroup(frozenset(seen), gens, label)


def verify_presentation(g: MatrixGroup) -> bool:
    if g.label not in PRESENTATIONS:
        raise UnsupportedPresentation(f"no presentation for label {g.label!r}")
    if len(g.generators) != 2:
        raise ValueError("presentation check needs exactly two generators")
    a, b = g.generators
    e = identity(len(a))
    pa, pb, pab = PRESENTATIONS[g.label]
    return power(a, pa) == e and power(b, pb) == e and power(mul(a, b), pab) == e


def power(x: Matrix, k: int) -> Matrix:
    y = identity(len(x))
    for _ in range(k):
        y = mul(y, x)
    return y


def intersect(g: MatrixGroup, h: MatrixGroup) -> MatrixGroup:
    common = g.elements & h.elements
    return MatrixGroup(frozenset(common), tuple(sorted(common)), "other")


def character_vector(g: MatrixGroup) -> dict[tuple[int, int], int]:
    """Counts of elements per (matrix order, trace)."""
    return dict(sorted(Counter((element_order(x), trace(x)) for x in g.elements).items()))


def orbit(group: MatrixGroup, seed: Sequence[int]) -> list[tuple[int, ...]]:
    """Deduplicated orbit {A seed : A in group}, sorted lexicographically."""
    v = tuple(int(x) for x in seed)
    pts = {tuple(sum(a * b for a, b in zip(row, v)) for row in x) for x in group.elements}
    return sorted(pts)


# Generator tables.

I_GENERATORS = (
    (
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, 1, 0),
        (0, 0, -1, 0, 0, 0),
        (0, 0, 0, -1, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (1, 0, 0, 0, 0, 0),
    ),
    (
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 1, 0, 0),
        (0, -1, 0, 0, 0, 0),
        (0, 0, -1, 0, 0, 0),
        (1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
    ),
)

T_GENERATORS = (
    I_GENERATORS[0],
    (
        (0, 1, 0, 0, 0, 0),
        (0, 0, 0, -1, 0, 0),
        (0, 0, 0, 0, 0, -1),
        (-1, 0, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, -1, 0),
    ),
)

I_T_GENERATORS = (
    (
        (0, 0, 0, -1, 0, 0),
        (0, 0, 0, 0, 0, -1),
        (0, 0, -1, 0, 0, 0),
        (-1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, -1, 0),
        (0, -1, 0, 0, 0, 0),
    ),
    (
        (0, 0, 0, -1, 0, 0),
        (0, 0, 0, 0, -1, 0),
        (0, -1, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, 1),
        (0, 0, 1, 0, 0, 0),
        (-1, 0, 0, 0, 0, 0),
    ),
)

D10_GENERATORS = (
    (
        (0, 0, 0, 0, 0, -1),
        (0, -1, 0, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, -1, 0),
        (-1, 0, 0, 0, 0, 0),
    ),
    (
        (0, 0, 0, 0, 0, 1),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 0, 0, -1, 0),
        (-1, 0, 0, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 1, 0, 0, 0),
    ),
)

I_D10_GENERATORS = (
    (
        (0, 0, 0, 0, -1, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, -1, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (-1, 0, 0, 0, 0, 0),
        (0, 0, 0, 0, 0, -1),
    ),
    (
        (0, 0, 0, 0, -1, 0),
        (0, 0, -1, 0, 0, 0),
        (0, 0, 0, 0, 0, 1),
        (1, 0, 0, 0, 0, 0),
        (0, 0, 0, -1, 0, 0),
        (0, -1, 0, 0, 0, 0),
    ),
)

D6_GENERATORS = (
    D10_GENERATORS[0],
    I_GENERATORS[1],
)

I_D6_GENERATORS = (
    (
        (0, 0, -1, 0, 0, 0),
        (0, 0, 0, 0, 0, -1),
        (-1, 0, 0, 0, 0, 0),
        (0, 0, 0, -1, 0, 0),
        (0, 0, 0, 0, -1, 0),
        (0, -1, 0, 0, 0, 0),
    ),
    (
        (0, 0, -1, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 1),
        (0, -1, 0, 0, 0, 0),
        (0, 0, 0, -1, 0, 0),
        (-1, 0, 0, 0, 0, 0),
    ),
)

GENERATOR_TABLE = {
    "I": I_GENERATORS,
    "I_T": I_T_GENERATORS,
    "I_D10": I_D10_GENERATORS,
    "I_D6": I_D6_GENERATORS,
    "T": T_GENERATORS,
    "D10": D10_GENERATORS,
    "D6": D6_GENERATORS,
}

SUBGROUPS = ("T", "D10", "D6")
PARTNER = {"T": "I_T", "D10": "I_D10", "D6": "I_D6"}
EXPECTED_ORDER = {"I": 60, "I_T": 60, "I_D10": 60, "I_D6": 60, "T": 12, "D10": 10, "D6": 6}

_cache: dict[str, MatrixGroup] = {}


def group(label: str) -> MatrixGroup:
    """Closed group for a named table entry; built once and checked on first use."""
    if label not in _cache:
        if label not in GENERATOR_TABLE:
            raise KeyError(label)
        g = closure(GENERATOR_TABLE[label], label=label)
        if g.order != EXPECTED_ORDER[label] or not verify_presentation(g):
            raise GroupError(f"generator table for {label} is corrupt")
        _cache[label] = g
    return _cache[label]
