import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from icoschur import groups
from icoschur.cutproject import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    GuardViolation,
    HypercubicLattice,
    SingularFrame,
    bain_equivalence_check,
    build_window,
    check_set_symmetry,
    detect_lattice_3d,
    enumerate_model_set,
    hausdorff_distance,
    integer_ball,
    is_hexagonal_prism,
    is_icosahedron,
    orbit_array,
    parallel_action,
    project_array,
    projection_at,
    window_contains,
    window_from_points,
)
from icoschur.schur import endpoint_by_index, family

FRAME = family("T").frame


def example(tag):
    return family(tag), endpoint_by_index(tag, None)


# lattices


def test_lattice_membership():
    sc, bcc, fcc = (HypercubicLattice(k) for k in ("SC", "BCC", "FCC"))
    h = Fraction(1, 2)
    assert sc.contains([1, 0, -2, 0, 0, 3]) and not sc.contains([h, 0, 0, 0, 0, 0])
    assert bcc.contains([h] * 6) and bcc.contains([1, 0, 0, 0, 0, 0])
    assert not bcc.contains([h, h, 0, 0, 0, 0])
    assert fcc.contains([h, h, 0, 0, 0, 0]) and fcc.contains([1, 0, 0, 0, 0, 0])
    assert not fcc.contains([h, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        HypercubicLattice("HCP")


@pytest.mark.parametrize("kind,det", [("SC", 1.0), ("BCC", 0.5), ("FCC", 1 / 32)])
def test_generator_columns_are_members_and_covolume(kind, det):
    lat = HypercubicLattice(kind)
    cols = list(zip(*lat.generator))
    assert all(lat.contains(c) for c in cols)
    assert abs(np.linalg.det(lat.generator_array())) == pytest.approx(det)


def test_integer_ball_matches_brute_force():
    pts = integer_ball(6.0)
    brute = [v for v in itertools.product(range(-2, 3), repeat=6) if sum(x * x for x in v) <= 6]
    assert sorted(map(tuple, pts)) == sorted(brute)
    assert len(integer_ball(-1.0)) == 0


# windows


def test_triacontahedral_window():
    w = build_window(np.eye(6), FRAME)
    assert w.face_count == 30
    assert len(w.vertices) == 32
    assert w.inradius > 0.3
    assert w.diameter < 3
    # central symmetry
    assert np.all(w.classify(-w.vertices) <= 1)
    assert window_contains(w, [0, 0, 0]) == INSIDE
    assert window_contains(w, [10, 0, 0]) == OUTSIDE
    assert window_contains(w, w.vertices[0]) == BOUNDARY
    assert np.all(w.slack(w.vertices) <= w.eps)


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_boundary_window_is_congruent(tag):
    fam, ep = example(tag)
    m, _ = projection_at(fam, ep, 1.0)
    w0, w1 = build_window(np.eye(6), FRAME), build_window(m, FRAME)
    assert np.allclose(w0.sorted_offsets(), w1.sorted_offsets(), atol=1e-9)


def test_degenerate_window():
    flat = np.array([[x, y, 0.0] for x in (0, 1) for y in (0, 1)] + [[0.5, 0.5, 0.0]])
    with pytest.raises(SingularFrame):
        window_from_points(flat)


# model sets


def test_small_radius_contains_only_origin():
    for tag in groups.SUBGROUPS:
        fam, ep = example(tag)
        patch = enumerate_model_set(fam, ep, 0.0, 0.4)
        assert len(patch) == 1 and np.allclose(patch.points, 0)


def test_guard():
    fam, ep = example("T")
    with pytest.raises(GuardViolation):
        enumerate_model_set(fam, ep, 0.0, 12.5)
    with pytest.raises(GuardViolation):
        enumerate_model_set(fam, ep, 0.0, 2.0, lattice=HypercubicLattice("BCC"))


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_patch_invariants(tag):
    fam, ep = example(tag)
    patch = enumerate_model_set(fam, ep, 0.3, 3.0)
    m, proj = projection_at(fam, ep, 0.3)
    assert np.abs(patch.preimages @ proj[:3].T - patch.points).max() < 1e-12
    status = patch.window.classify(patch.preimages @ proj[3:].T)
    assert np.all(status <= 1)
    assert np.array_equal(status == 1, patch.boundary_flags)
    assert np.all(np.linalg.norm(patch.points, axis=1) <= 3.0 + 1e-12)


def test_enumeration_is_complete_against_brute_force():
    fam, ep = example("D10")
    patch = enumerate_model_set(fam, ep, 0.4, 2.0)
    _, proj = projection_at(fam, ep, 0.4)
    cube = np.array(list(itertools.product(range(-3, 4), repeat=6)))
    x = cube @ proj.T
    keep = (np.linalg.norm(x[:, :3], axis=1) <= 2.0) & (patch.window.classify(x[:, 3:]) <= 1)
    assert sorted(map(tuple, cube[keep])) == sorted(map(tuple, patch.preimages))


def test_monotone_growth():
    fam, ep = example("D6")
    small = enumerate_model_set(fam, ep, 0.6, 2.0)
    big = enumerate_model_set(fam, ep, 0.6, 3.0)
    assert set(map(tuple, small.preimages)) <= set(map(tuple, big.preimages))


def test_parallel_enumeration_is_identical():
    fam, ep = example("T")
    a = enumerate_model_set(fam, ep, 0.5, 3.0)
    b = enumerate_model_set(fam, ep, 0.5, 3.0, workers=4)
    assert np.array_equal(a.preimages, b.preimages) and np.array_equal(a.points, b.points)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=6, max_size=6),
    st.floats(0, 1),
    st.sampled_from(groups.SUBGROUPS),
)
def test_pythagoras_split(v, t, tag):
    fam, ep = example(tag)
    _, proj = projection_at(fam, ep, t)
    x = proj @ np.array(v, dtype=float)
    assert abs(np.dot(v, v) - x[:3] @ x[:3] - x[3:] @ x[3:]) < 1e-10


# arrays


def test_orbit_and_projection():
    fam, ep = example("D6")
    orb = orbit_array(groups.group("I"), [1, 0, 0, 0, 0, 0])
    arr = project_array(fam, ep, 0.0, orb)
    assert len(arr) == 12 and is_icosahedron(arr.points)
    origin = project_array(fam, ep, 0.7, [[0] * 6])
    assert len(origin) == 1 and np.allclose(origin.points, 0)


def test_collisions_are_flagged_not_merged():
    fam, ep = example("D10")
    orb = orbit_array(groups.group("I"), [1, 0, 0, 0, 0, 0])
    arr = project_array(fam, ep, 0.5, orb)
    assert len(arr) == 12
    assert len(arr.collisions) == 1
    i, j = arr.collisions[0]
    assert np.allclose(arr.preimages[i], -arr.preimages[j])


# oracles


def test_detect_lattice_on_synthetic_lattice():
    rng = np.random.default_rng(3)
    basis = rng.normal(size=(3, 3)) + 2 * np.eye(3)
    m = np.array(list(itertools.product(range(-3, 4), repeat=3)))
    pts = m @ basis
    fit = detect_lattice_3d(pts)
    assert fit is not None and fit.residual < 1e-12
    assert abs(abs(np.linalg.det(fit.basis)) - abs(np.linalg.det(basis))) < 1e-9
    jitter = pts + rng.normal(scale=1e-3, size=pts.shape) * (np.linalg.norm(pts, axis=1) > 0)[:, None]
    assert detect_lattice_3d(jitter) is None


def test_detect_lattice_preconditions():
    with pytest.raises(ValueError):
        detect_lattice_3d(np.ones((30, 3)))
    with pytest.raises(ValueError):
        detect_lattice_3d(np.zeros((5, 3)))


def test_icosahedral_model_set_is_not_a_lattice():
    fam, ep = example("T")
    assert detect_lattice_3d(enumerate_model_set(fam, ep, 0.0, 4.0).points, 1e-6) is None


def test_symmetry_detects_a_deleted_point():
    fam, ep = example("T")
    patch = enumerate_model_set(fam, ep, 0.0, 4.0)
    action = parallel_action(FRAME.T, groups.group("I"))
    assert check_set_symmetry(patch.points, action, 1e-9, 1.5)
    norms = np.linalg.norm(patch.points, axis=1)
    k = int(np.nonzero((norms > 0.5) & (norms < 1.2))[0][0])
    broken = np.delete(patch.points, k, axis=0)
    assert not check_set_symmetry(broken, action, 1e-9, 1.5)


def test_hausdorff():
    a = np.array([[0.0, 0, 0], [1, 0, 0]])
    assert hausdorff_distance(a, a) == 0
    assert hausdorff_distance(a, a[:1]) == pytest.approx(1.0)
    assert hausdorff_distance(a[:0], a[:0]) == 0
    assert math.isinf(hausdorff_distance(a, a[:0]))


def test_shape_oracles_reject_other_shapes():
    cube = np.array(list(itertools.product((-1.0, 1.0), repeat=3)))
    assert not is_icosahedron(cube)
    angles = np.arange(6) * np.pi / 3
    ring = np.stack([np.cos(angles), np.sin(angles), np.zeros(6)], axis=1)
    prism = np.vstack([ring + [0, 0, 1], ring - [0, 0, 1]])
    assert is_hexagonal_prism(prism, [0, 0, 1])
    twisted = np.vstack([ring + [0, 0, 1], ring @ np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]]).T - [0, 0, 1]])
    assert not is_hexagonal_prism(twisted, [0, 0, 1])
    assert not is_hexagonal_prism(prism, [1, 0, 0])


def test_bain_identity_at_start():
    fam, ep = example("D6")
    assert bain_equivalence_check(fam, ep, 0.0, 2.5) < 1e-12
    with pytest.raises(GuardViolation):
        bain_equivalence_check(fam, ep, 0.0, 7.0)
