import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asi.geometry import (
    TWO_PI,
    AngularCoords,
    Containment,
    InputError,
    Polygon,
    circular_ranks,
    contains_mask,
    convex_hull,
    map_to_rectangle,
    normalize_azimuth,
    polygon_contains,
)
from oracles import brute_hull_vertices, half_plane_inside

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_ranks_examples():
    assert circular_ranks([0.1, 3.0, 1.5]).tolist() == [1, 3, 2]
    assert circular_ranks([0.5, 0.5, 0.2]).tolist() == [2, 3, 1]
    assert circular_ranks([4.2]).tolist() == [1]


def test_ranks_tie_break_matches_stable_sort():
    rng = np.random.default_rng(1)
    angles = rng.integers(0, 5, size=40).astype(float)
    expected = [0] * 40
    for k, i in enumerate(sorted(range(40), key=lambda i: (angles[i], i)), 1):
        expected[i] = k
    assert circular_ranks(angles).tolist() == expected


def test_ranks_reject_nan():
    with pytest.raises(InputError):
        circular_ranks([0.1, float("nan")])


@given(st.lists(st.floats(0, TWO_PI, exclude_max=True), min_size=1, max_size=60))
def test_ranks_are_a_permutation(angles):
    r = circular_ranks(angles)
    assert sorted(r.tolist()) == list(range(1, len(angles) + 1))


@given(st.integers(2, 40), st.floats(0.0, 10.0), st.randoms(use_true_random=False))
def test_rotation_gives_cyclic_shift_of_order(n, c, rnd):
    # grid angles avoid float ties after the shift
    angles = np.array(rnd.sample(range(10 * n), n)) * TWO_PI / (10 * n)
    before = np.argsort(circular_ranks(angles))
    after = np.argsort(circular_ranks(normalize_azimuth(angles + c)))
    k = int(np.flatnonzero(after == before[0])[0])
    assert np.array_equal(np.roll(after, -k), before)


def test_normalize_wraps_into_range():
    out = normalize_azimuth([-0.5, TWO_PI, 7.0, -1e-18])
    assert np.all((out >= 0) & (out < TWO_PI))
    assert out[1] == 0.0
    assert out[0] == pytest.approx(TWO_PI - 0.5)


def test_elevation_rejected_not_clamped():
    with pytest.raises(InputError):
        AngularCoords([0.0, 1.0], [0.0, 2.0])
    c = AngularCoords([7.0, -1.0], [math.pi / 2, -math.pi / 2])
    assert c.dims == 3
    assert np.all(c.theta < TWO_PI)


def test_hull_square_drops_center():
    hull = convex_hull(UNIT_SQUARE + [(0.5, 0.5)])
    assert len(hull) == 4
    assert (0.5, 0.5) not in {tuple(v) for v in hull.vertices}


def test_hull_is_ccw():
    v = convex_hull(UNIT_SQUARE).vertices
    area2 = sum(v[k, 0] * v[k - 1, 1] - v[k - 1, 0] * v[k, 1] for k in range(len(v)))
    assert area2 < 0  # shoelace with (k, k-1) ordering is negative for CCW


def test_hull_collinear_is_segment():
    hull = convex_hull([(0, 0), (1, 1), (2, 2)])
    assert hull.degenerate
    assert {tuple(p) for p in hull.vertices} == {(0.0, 0.0), (2.0, 2.0)}


def test_hull_single_point_and_empty():
    assert len(convex_hull([(3, 4), (3, 4)])) == 1
    with pytest.raises(InputError):
        convex_hull([])


def test_hull_collinear_edge_points_dropped():
    pts = UNIT_SQUARE + [(0.5, 0.0), (1.0, 0.5)]
    assert len(convex_hull(pts)) == 4


@pytest.mark.parametrize("seed", range(10))
def test_hull_matches_half_plane_oracle(seed):
    rng = np.random.default_rng(seed)
    pts = rng.random((50, 2)) * [TWO_PI, math.pi]
    hull = convex_hull(pts)
    assert {tuple(v) for v in hull.vertices} == brute_hull_vertices(pts)


@settings(max_examples=60)
@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=1, max_size=30))
def test_hull_properties(points):
    hull = convex_hull(points)
    assert {tuple(v) for v in hull.vertices} == brute_hull_vertices(points)
    again = convex_hull(hull.vertices)
    assert np.array_equal(again.vertices, hull.vertices)
    for p in points:
        assert polygon_contains(hull, p) is not Containment.OUTSIDE


def test_contains_square():
    sq = convex_hull(UNIT_SQUARE)
    assert polygon_contains(sq, (0.5, 0.5)) is Containment.INSIDE
    assert polygon_contains(sq, (1.0, 0.5)) is Containment.BOUNDARY
    assert polygon_contains(sq, (0.0, 0.0)) is Containment.BOUNDARY
    assert polygon_contains(sq, (1.5, 0.5)) is Containment.OUTSIDE


def test_contains_degenerate():
    seg = Polygon(np.array([[0.0, 0.0], [2.0, 2.0]]))
    assert polygon_contains(seg, (1.0, 1.0)) is Containment.BOUNDARY
    assert polygon_contains(seg, (3.0, 3.0)) is Containment.OUTSIDE
    assert polygon_contains(seg, (1.0, 1.1)) is Containment.OUTSIDE
    pt = Polygon(np.array([[1.0, 1.0]]))
    assert polygon_contains(pt, (1.0, 1.0)) is Containment.BOUNDARY
    assert polygon_contains(pt, (1.0, 1.0 + 1e-9)) is Containment.OUTSIDE


@pytest.mark.parametrize("seed", range(5))
def test_contains_agrees_with_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    hull = convex_hull(rng.random((12, 2)))
    probes = rng.random((300, 2)) * 1.4 - 0.2
    mask = contains_mask(hull, probes)
    for p, m in zip(probes, mask):
        assert m == half_plane_inside(hull.vertices, p)
        assert m == (polygon_contains(hull, p) is not Containment.OUTSIDE)


def test_map_to_rectangle_examples():
    x, y = map_to_rectangle(1.0, 0.2, 0.5, 2.0, -0.1, 0)
    assert (x, y) == pytest.approx((0.5, 0.3))
    x, _ = map_to_rectangle(0.1, 0.0, 0.05, 6.0, 0.0, 1)
    assert x == pytest.approx(0.38319, abs=1e-5)
    x, _ = map_to_rectangle(0.5, 0.0, 0.5, 2.0, 0.0, 0)
    assert x == 0.0


@given(
    st.floats(0, TWO_PI, exclude_max=True),
    st.floats(0, TWO_PI, exclude_max=True),
    st.floats(0, 1),
    st.floats(0, 1),
)
def test_map_nonnegative_inside_region(a, b, u, v):
    lo, hi = sorted((a, b))
    p1, p2 = -0.4, 0.9
    phi = p1 + v * (p2 - p1)
    # flag 0 interior
    theta = lo + u * (hi - lo)
    x, y = map_to_rectangle(theta, phi, lo, hi, p1, 0)
    assert x >= 0 and y >= 0
    # flag 1 interior wraps through zero
    span = TWO_PI - (hi - lo)
    theta = (hi + u * span) % TWO_PI
    x, y = map_to_rectangle(theta, phi, lo, hi, p1, 1)
    assert x >= 0 and y >= 0
