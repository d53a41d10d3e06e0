import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from icoschur import groups
from icoschur.schur import (
    CLOSED_FORMS,
    AngleParameter,
    ArityError,
    NotABoundarySolution,
    angular_distance,
    boundary_irreps,
    boundary_solve,
    canonical_angle,
    commutation_residual,
    family,
    off_block_residual_at,
    path_angles,
    residual_grid,
    rotation_path,
    validate_endpoint,
)

angles = st.floats(min_value=-20, max_value=20, allow_nan=False)


@given(angles)
def test_canonical_angle_range_and_equivalence(x):
    y = canonical_angle(x)
    assert -math.pi < y <= math.pi
    assert abs(math.remainder(x - y, 2 * math.pi)) < 1e-9


def test_angle_parameter_canonicalises():
    assert AngleParameter(-math.pi).values == (math.pi,)
    assert AngleParameter([3 * math.pi / 2]).close_to(AngleParameter(-math.pi / 2), 1e-12)
    with pytest.raises(ArityError):
        AngleParameter([0.0, 0.0, 0.0])


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_family_members_commute_and_are_rotations(tag, data):
    fam = family(tag)
    a = data.draw(st.lists(angles, min_size=fam.arity, max_size=fam.arity))
    b = data.draw(st.lists(angles, min_size=fam.arity, max_size=fam.arity))
    m = fam.evaluate(a)
    assert commutation_residual(fam, a) < 1e-12
    assert np.abs(m @ m.T - np.eye(6)).max() < 1e-12
    assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)
    law = fam.evaluate(a) @ fam.evaluate(b) - fam.evaluate(np.add(a, b))
    assert np.abs(law).max() < 1e-12


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_commutes_with_whole_subgroup(tag):
    fam = family(tag)
    m = fam.evaluate([0.7] * fam.arity)
    for g in groups.group(tag).arrays():
        assert np.abs(m @ g - g @ m).max() < 1e-12


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_grid_residual_matches_direct(tag):
    fam = family(tag)
    rng = np.random.default_rng(1)
    pts = rng.uniform(-math.pi, math.pi, size=(25, fam.arity))
    grid = residual_grid(tag, pts)
    direct = [off_block_residual_at(fam, p) for p in pts]
    assert np.allclose(grid, direct, atol=1e-12)


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_solver_finds_exactly_the_closed_forms(tag):
    fam = family(tag)
    found = boundary_solve(fam)
    expected = [AngleParameter(v) for v in CLOSED_FORMS[tag]]
    assert len(found) == len(expected)
    for e in expected:
        assert any(e.close_to(f, 1e-9) for f in found), e
    for f in found:
        assert off_block_residual_at(fam, f) < 1e-12
        assert sorted(boundary_irreps(fam, f)) == ["T1", "T2"]


@pytest.mark.parametrize("tag", groups.SUBGROUPS)
def test_solver_is_independent_of_grid_offset(tag):
    fam = family(tag)
    a = boundary_solve(fam)
    b = boundary_solve(fam, offset=math.radians(0.013))
    assert len(a) == len(b)
    assert all(x.close_to(y, 1e-9) for x, y in zip(a, b))


def test_d10_half_turn_preserves_the_blocks():
    # M(pi) commutes with the frame split, which is why +pi/2 and -pi/2 are both solutions
    fam = family("D10")
    dec = fam.frame.T @ fam.evaluate([math.pi]) @ fam.frame
    assert np.abs(dec[:3, 3:]).max() < 1e-12 and np.abs(dec[3:, :3]).max() < 1e-12
    assert off_block_residual_at(fam, [-math.pi / 2]) < 1e-12


def test_expected_d6_pair_with_positive_arctan2_is_not_a_solution():
    fam = family("D6")
    a, b = math.atan(0.5), math.atan(2.0)
    assert off_block_residual_at(fam, [b, math.pi - a]) > 0.1
    assert off_block_residual_at(fam, [-b, math.pi - a]) < 1e-12


def test_validate_endpoint():
    fam = family("T")
    ep = validate_endpoint(fam, [-math.atan(0.5)])
    assert isinstance(ep, AngleParameter)
    with pytest.raises(NotABoundarySolution):
        validate_endpoint(fam, [0.3])
    with pytest.raises(ArityError):
        validate_endpoint(fam, [0.3, 0.1])


def test_path_endpoints():
    fam = family("D6")
    ep = AngleParameter(CLOSED_FORMS["D6"][0])
    assert np.allclose(rotation_path(fam, ep, 0.0), np.eye(6), atol=1e-15)
    assert np.allclose(rotation_path(fam, ep, 1.0), fam.evaluate(ep), atol=1e-15)
    assert path_angles(ep, 0.5) == pytest.approx(tuple(0.5 * v for v in ep.values))
    with pytest.raises(ValueError):
        path_angles(ep, 1.5)


def test_waypoint_path():
    ep = AngleParameter((1.0, 2.0))
    way = [(1.0, 0.0)]
    assert path_angles(ep, 0.5, way) == pytest.approx((1.0, 0.0))
    assert path_angles(ep, 0.25, way) == pytest.approx((0.5, 0.0))
    assert path_angles(ep, 1.0, way) == pytest.approx((1.0, 2.0))


def test_angular_distance_wraps():
    assert angular_distance([math.pi - 1e-3], [-math.pi + 1e-3]) == pytest.approx(2e-3)
