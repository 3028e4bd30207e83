from fractions import Fraction as F

import numpy as np
import pytest

from toricnp.geometry import (PolygonData, enumerate_weight_level, hodge_data,
                              hodge_numbers, hodge_polygon, weight)


def test_weight_examples():
    assert weight(3, (0, 0)) == 0
    assert weight(3, (-1, -1)) == 1
    assert weight(3, (-1, 0)) == 2
    assert weight(5, (2, 0)) == F(2, 5)


def test_weight_rejects_small_n():
    with pytest.raises(ValueError):
        weight(1, (0, 0))


def _scaled_weight_grid(n, lim):
    # n * weight(a, b) as an integer array over |a|,|b| <= lim: exact and
    # vectorizable, unlike a Fraction per lattice point
    a = np.arange(-lim, lim + 1, dtype=np.int64)
    A, B = np.meshgrid(a, a, indexing="ij")
    m = np.maximum(0, np.maximum(-A, -B))
    return A + n * B + (2 * n + 1) * m


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_weight_positive_definite(n):
    W = _scaled_weight_grid(n, 50)
    assert W.min() >= 0
    zeros = np.argwhere(W == 0)
    assert [tuple(z) for z in zeros] == [(50, 50)]  # the origin only
    # spot-check the scaled grid against the Fraction implementation
    for a, b in ((0, 0), (3, -2), (-7, 5), (50, -50), (-50, 50)):
        assert W[a + 50, b + 50] == weight(n, (a, b)) * n


@pytest.mark.parametrize("n", [2, 3, 5])
def test_weight_homogeneous_under_scaling(n):
    W = _scaled_weight_grid(n, 50)
    Wbig = _scaled_weight_grid(n, 500)
    for c in range(11):
        scaled = Wbig[(np.arange(-50, 51) * c + 500)][:, (np.arange(-50, 51) * c + 500)]
        assert np.array_equal(scaled, c * W)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_weight_subadditive(n):
    lim = 50
    W = _scaled_weight_grid(n, lim)
    Wsum = _scaled_weight_grid(n, 2 * lim)
    size = 2 * lim + 1
    for ia in range(size):
        for ib in range(size):
            # slice of Wsum holding weight(u + v) for this u and all v
            block = Wsum[ia:ia + size, ib:ib + size]
            assert (block <= W[ia, ib] + W).all(), (ia - lim, ib - lim)


def test_level_sets_small_n3():
    assert [pt for pt in enumerate_weight_level(3, 2).points] == [(2, 0)]
    lvl4 = enumerate_weight_level(3, 4)
    assert set(lvl4.points) == {(1, 1), (4, 0), (0, -1)}
    assert lvl4.count == 3
    lvl6 = enumerate_weight_level(3, 6)
    assert set(lvl6.points) == {(3, 1), (6, 0), (0, 2), (-1, 0), (-2, -2), (2, -1)}
    assert lvl6.count == 6


def test_level_set_weights_consistent():
    for n in (2, 3, 4):
        for k in range(2 * n + 1):
            lvl = enumerate_weight_level(n, k)
            assert all(weight(n, pt) == F(k, n) for pt in lvl.points)
            assert lvl.count == len(lvl.points)


def test_level_zero_is_origin():
    for n in (2, 3, 7):
        assert enumerate_weight_level(n, 0).points == ((0, 0),)


def test_hodge_numbers_tables():
    d3 = hodge_numbers(3)
    assert d3.W == (1, 1, 1, 3, 3, 3, 6)
    assert d3.H == (1, 1, 1, 1, 1, 1, 1)
    d2 = hodge_numbers(2)
    assert d2.W == (1, 1, 3, 3, 6)
    assert d2.H == (1, 1, 1, 1, 1)
    assert sum(d2.H) == 5


@pytest.mark.parametrize("n", range(2, 13))
def test_hodge_pattern_all_n(n):
    data = hodge_numbers(n)
    expected_W = tuple([1] * n + [3] * n + [6])
    assert data.W == expected_W
    assert data.H == tuple([1] * (2 * n + 1))
    assert sum(data.H) == 2 * n + 1
    assert data.H[0] == 1


def test_hodge_polygon_closed_form():
    assert hodge_polygon(3).slopes == tuple(F(i, 3) for i in range(7))
    assert hodge_polygon(4).slopes == tuple(F(i, 4) for i in range(9))
    assert hodge_polygon(2).endpoint == (5, 5)


def test_hodge_data_bundles_polygon():
    d = hodge_data(3)
    assert d.polygon.slopes == hodge_polygon(3).slopes
    assert d.polygon.endpoint == (7, 7)


def test_polygon_from_slopes_collapses_runs():
    poly = PolygonData.from_slopes([F(0), F(1, 2), F(1, 2), F(2)])
    assert poly.vertices == ((0, F(0)), (1, F(0)), (3, F(1)), (4, F(3)))
    assert poly.slopes == (F(0), F(1, 2), F(1, 2), F(2))


def test_lower_hull_drops_interior_points():
    # (1, 5) sits far above the chord from (0,0) to (2,1)
    poly = PolygonData.lower_hull([(0, F(0)), (1, F(5)), (2, F(1))])
    assert poly.vertices == ((0, F(0)), (2, F(1)))
    assert poly.slopes == (F(1, 2), F(1, 2))


def test_lower_hull_keeps_supporting_points():
    poly = PolygonData.lower_hull([(0, F(0)), (1, F(0)), (2, F(1)), (3, F(3))])
    assert poly.slopes == (F(0), F(1), F(2))
    assert poly.y_at(2) == F(1)


def test_lower_hull_requires_anchor():
    with pytest.raises(ValueError):
        PolygonData.lower_hull([(1, F(1)), (2, F(2))])


def test_dominates():
    hp = hodge_polygon(3)
    above = PolygonData.from_slopes(
        [s + (F(1, 10) if 0 < i < 6 else 0) for i, s in enumerate(hp.slopes)])
    assert above.dominates(hp)
    assert not hp.dominates(above)
    assert hp.dominates(hp)
    # length mismatch is never comparable
    assert not hp.dominates(hodge_polygon(2))


def test_polygon_json_shape():
    d = hodge_polygon(2).to_json_dict()
    assert d["slopes"] == [[0, 1], [1, 2], [1, 1], [3, 2], [2, 1]]
    assert d["vertices"][0] == [0, [0, 1]]
