from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mebgeom.errors import EmptyInput, GeometryError, InstanceTooLarge
from mebgeom.meb import meb_oracle, minimum_enclosing_ball, verify_enclosure
from mebgeom.simplex import Ball, regular_simplex


@pytest.mark.parametrize("solve", [minimum_enclosing_ball, meb_oracle])
def test_two_points(solve):
    res = solve([[0, 0], [4, 0]])
    np.testing.assert_allclose(res.center, [2, 0])
    assert res.radius == pytest.approx(2)
    assert res.support == [0, 1]


@pytest.mark.parametrize("solve", [minimum_enclosing_ball, meb_oracle])
def test_obtuse_triangle_support_is_long_edge(solve):
    res = solve([[0, 0], [2, 0], [1, 1]])
    np.testing.assert_allclose(res.center, [1, 0], atol=1e-15)
    assert res.radius == pytest.approx(1)
    assert res.support == [0, 1]


@pytest.mark.parametrize("solve", [minimum_enclosing_ball, meb_oracle])
def test_right_triangle_and_square(solve):
    res = solve([[0, 0], [2, 0], [0, 2]])
    np.testing.assert_allclose(res.center, [1, 1])
    assert res.radius == pytest.approx(sqrt(2))
    res = solve([[0, 0], [1, 0], [1, 1], [0, 1]])
    np.testing.assert_allclose(res.center, [0.5, 0.5])
    assert res.radius == pytest.approx(sqrt(2) / 2)
    assert len(res.support) == 2


def test_regular_tetrahedron():
    res = minimum_enclosing_ball(regular_simplex(3, 1.0).vertices)
    assert res.radius == pytest.approx(0.6123724356957945, rel=1e-12)
    assert res.certified


@pytest.mark.parametrize("solve", [minimum_enclosing_ball, meb_oracle])
def test_single_point(solve):
    res = solve([[3.0, -1.0]])
    assert res.radius == 0 and list(res.center) == [3, -1]


def test_errors():
    with pytest.raises(EmptyInput):
        minimum_enclosing_ball(np.empty((0, 2)))
    with pytest.raises(EmptyInput):
        meb_oracle(np.empty((0, 3)))
    with pytest.raises(InstanceTooLarge):
        meb_oracle(np.zeros((41, 2)))


def test_duplicates_and_collinear():
    pts = np.array([[0, 0], [1, 1], [2, 2], [1, 1], [0, 0]], dtype=float)
    res = minimum_enclosing_ball(pts)
    np.testing.assert_allclose(res.center, [1, 1])
    assert res.radius == pytest.approx(sqrt(2))
    assert res.support == meb_oracle(pts).support


def test_cocircular_points_support_bounded():
    t = np.linspace(0, 2 * np.pi, 24, endpoint=False)
    pts = np.c_[np.cos(t), np.sin(t)]
    res = minimum_enclosing_ball(pts)
    assert res.radius == pytest.approx(1, rel=1e-12)
    assert len(res.support) <= 3
    assert verify_enclosure(res.ball, pts).enclosed


def test_verify_enclosure_examples():
    pts = [[0, 0], [2, 0], [1, 1]]
    rep = verify_enclosure(Ball(np.array([1.0, 0.0]), 1.0), pts)
    assert rep.max_violation == pytest.approx(0, abs=1e-15) and rep.enclosed
    rep = verify_enclosure(Ball(np.array([0.0, 0.0]), 1.0), [[3, 0]])
    assert rep.max_violation == pytest.approx(2) and rep.violating_index == 0
    rep = verify_enclosure(Ball(np.array([0.0, 0.0]), 5.0), [[0, 0]])
    assert rep.max_violation == pytest.approx(-5)
    with pytest.raises(GeometryError):
        verify_enclosure(Ball(np.array([0.0, 0.0]), 1.0), [[0, 0, 0]])


def test_seed_independence_of_radius(rng):
    pts = rng.standard_normal((60, 4))
    radii = {round(minimum_enclosing_ball(pts, seed=s).radius, 12) for s in range(5)}
    assert len(radii) == 1


def test_higher_dimension_without_oracle(rng):
    pts = rng.standard_normal((300, 10))
    res = minimum_enclosing_ball(pts)
    assert res.certified and len(res.support) <= 11
    assert verify_enclosure(res.ball, pts).enclosed


@settings(max_examples=120, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 4)),
              elements=st.floats(-100, 100, allow_subnormal=False)))
def test_matches_oracle(pts):
    solver = minimum_enclosing_ball(pts)
    oracle = meb_oracle(pts)
    d = pts.shape[1]
    assert abs(solver.radius - oracle.radius) <= 1e-9 * max(1.0, oracle.radius)
    assert len(solver.support) <= d + 1
    assert verify_enclosure(solver.ball, pts).enclosed
    dist = np.linalg.norm(pts[solver.support] - solver.center, axis=1)
    assert np.all(np.abs(dist - solver.radius) <= 1e-9 * max(1.0, solver.radius))
