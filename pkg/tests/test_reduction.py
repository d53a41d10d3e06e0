import numpy as np
import pytest

from icoschur import groups, reduction
from icoschur.golden import TAU_FLOAT, ScaledGoldenMatrix, frame_check
from icoschur.reduction import (
    DEFAULT_FRAME,
    ConstantTableCorruption,
    UnidentifiedIrrep,
    apply_subgroup_reducer,
    blocks_equal_exact,
    commutant_dimension,
    identify_e_block,
    identify_irrep,
    reduce_rep,
    reducers,
)


def test_frame_is_exact():
    assert DEFAULT_FRAME.is_exact_frame()
    r = DEFAULT_FRAME.array
    assert np.allclose(r @ r.T, np.eye(6), atol=1e-15)


@pytest.mark.parametrize("label", ["I", "T", "D10", "D6"])
def test_exact_reduction_reproduces_tables(label):
    dec = reduce_rep(DEFAULT_FRAME, groups.GENERATOR_TABLE[label])
    assert dec.off_block_residual == 0
    top, bottom = reduction.SOURCE_BLOCKS[label]
    assert blocks_equal_exact(dec.top, top)
    assert blocks_equal_exact(dec.bottom, bottom)


def test_frame_columns_span_the_t1_isotypic_component():
    # independent oracle: P = (3/60) sum chi_T1(g) g projects onto the T1 component.
    # chi_T1 is tau on the conjugacy class of g2 g3 and 1 - tau on the other five-fold class.
    ico = groups.group("I")
    a = groups.mul(*groups.I_GENERATORS)
    cls = {groups.mul(groups.mul(h, a), groups.inverse(h)) for h in ico.elements}
    proj = np.zeros((6, 6))
    for g in ico.elements:
        order = groups.element_order(g)
        if order == 5:
            c = TAU_FLOAT if g in cls else 1 - TAU_FLOAT
        else:
            c = {1: 3.0, 2: -1.0, 3: 0.0}[order]
        proj += c * groups.to_array(g)
    proj *= 3 / 60
    par = DEFAULT_FRAME.array[:, :3]
    assert np.allclose(proj @ proj, proj, atol=1e-12)
    assert np.allclose(proj, par @ par.T, atol=1e-12)


def test_icosahedral_blocks_identify_as_t1_t2():
    dec = reduce_rep(DEFAULT_FRAME, groups.I_GENERATORS)
    assert identify_irrep(dec.top) == "T1"
    assert identify_irrep(dec.bottom) == "T2"


@pytest.mark.parametrize(
    "label,expected",
    [("T", ("T(tetrahedral)", "T(tetrahedral)")), ("D10", ("A2+E1", "A2+E2")), ("D6", ("A2+E", "A2+E"))],
)
def test_subgroup_blocks_identify(label, expected):
    dec = reduce_rep(DEFAULT_FRAME, groups.GENERATOR_TABLE[label])
    assert (identify_irrep(dec.top), identify_irrep(dec.bottom)) == expected


def test_q_is_exactly_orthogonal():
    assert frame_check(reduction.Q_SCALED)


@pytest.mark.parametrize("name", ["P1", "P2", "R1", "R2"])
def test_float_reducers_are_orthogonal(name):
    m = getattr(reduction, name)
    assert np.abs(m @ m.T - np.eye(3)).max() < 1e-12
    assert abs(np.linalg.det(m)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_subgroup_reducers_reach_their_pattern(tag):
    dec = reduce_rep(DEFAULT_FRAME, groups.GENERATOR_TABLE[tag])
    red = apply_subgroup_reducer(reducers()[tag], dec)
    assert red.pattern_residual <= 1e-12
    assert red.off_block_residual == 0


def test_q_carries_gamma2_onto_gamma1_exactly():
    dec = reduce_rep(DEFAULT_FRAME, groups.T_GENERATORS)
    red = apply_subgroup_reducer(reducers()["T"], dec)
    assert blocks_equal_exact(red.bottom, red.top)
    assert blocks_equal_exact(red.top, reduction.GAMMA1)


def test_corrupted_q_is_detected():
    entries = [list(r) for r in reduction.Q_SCALED.entries]
    entries[0][0], entries[0][1] = entries[0][1], entries[0][0]
    bad = ScaledGoldenMatrix(entries, 16)
    assert not frame_check(bad)


def test_wrong_reducer_is_detected():
    dec = reduce_rep(DEFAULT_FRAME, groups.D10_GENERATORS)
    with pytest.raises(ConstantTableCorruption):
        apply_subgroup_reducer(reducers()["D6"], dec)


def test_e_block_labels():
    c, s = np.cos(2 * np.pi / 5), np.sin(2 * np.pi / 5)
    assert identify_e_block(np.array([[c, -s], [s, c]])) == "E1"
    c2, s2 = np.cos(4 * np.pi / 5), np.sin(4 * np.pi / 5)
    assert identify_e_block(np.array([[c2, -s2], [s2, c2]])) == "E2"
    with pytest.raises(UnidentifiedIrrep):
        identify_e_block(np.eye(2))


def test_commutant_dimension():
    dec = reduce_rep(DEFAULT_FRAME, groups.I_GENERATORS)
    assert commutant_dimension(dec.top_arrays()) == 1
    full = [groups.to_array(g) for g in groups.I_GENERATORS]
    # T1 + T2 are inequivalent, so the commutant is two scalars
    assert commutant_dimension(full) == 2
    t = [groups.to_array(g) for g in groups.T_GENERATORS]
    # two copies of the same irrep: a 2x2 matrix algebra
    assert commutant_dimension(t) == 4


def test_unknown_block_group_is_rejected():
    rot = np.array([[np.cos(1.0), -np.sin(1.0), 0], [np.sin(1.0), np.cos(1.0), 0], [0, 0, 1]])
    with pytest.raises(UnidentifiedIrrep):
        identify_irrep([rot, np.eye(3)])
