import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symharm.fractal import (BoxCountEstimate, bilipschitz_probe, box_count, box_count_points,
                             distortion, dyadic_levels, graph_count, graph_dimension, minkowski_fit,
                             point_count, points_dimension, union_probe, weierstrass_series)

TH = np.linspace(0, np.pi, 2**14 + 1)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.01, 1.0), st.floats(-5, 5))
def test_constant_graph(eps, c):
    th = np.linspace(0, np.pi, 4001)
    eps = max(eps, 2 * th[1])
    assert graph_count(th, np.full_like(th, c), eps) == int(np.ceil(np.pi / eps - 1e-9))


@pytest.mark.parametrize("j", range(3, 10))
def test_identity_graph(j):
    eps = np.pi / 2**j
    cols = 2**j
    n = graph_count(TH, TH, eps)
    assert abs(n - 2 * cols) <= cols


def test_smooth_graph_dimension():
    est = graph_dimension(TH, np.sin(3 * TH), dyadic_levels(np.pi, 4 * TH[1]))
    assert est.dimension == pytest.approx(1.0, abs=0.05)


@pytest.mark.parametrize("gamma", [0.3, 0.5])
def test_weierstrass_dimension(gamma):
    th = np.linspace(0, np.pi, 2**17 + 1)
    levels = [np.pi / 2**j for j in range(3, 11)]
    est = graph_dimension(th, weierstrass_series(gamma, th, K=20), levels)
    assert est.dimension == pytest.approx(2 - gamma, abs=0.15)


def test_weierstrass_k14_half():
    th = np.linspace(0, np.pi, 2**16 + 1)
    est = graph_dimension(th, weierstrass_series(0.5, th, K=14), [np.pi / 2**j for j in range(3, 11)])
    assert est.dimension == pytest.approx(1.5, abs=0.15)


def test_box_count_rejects():
    with pytest.raises(ValueError, match="below resolution"):
        box_count(TH, TH, [TH[1], 0.5])
    with pytest.raises(ValueError, match="increasing"):
        box_count(TH[::-1], TH, [0.5, 0.25])
    with pytest.raises(ValueError, match="at least 2"):
        box_count(TH, TH, [0.5])
    with pytest.raises(ValueError, match="degenerate window"):
        minkowski_fit(box_count(TH, TH, [1.0, 0.5, 0.25, 0.125]))


def test_window_selection():
    est = box_count(TH, np.sin(TH), dyadic_levels(np.pi, 4 * TH[1]))
    fit = minkowski_fit(est, window=(0.01, 0.2))
    assert 0.01 <= fit.window[0] and fit.window[1] <= 0.2


def test_dyadic_levels():
    lv = dyadic_levels(np.pi, np.pi / 64)
    assert lv == [np.pi / 2**j for j in range(3, 7)]


def test_point_count_segment():
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    # a horizontal unit segment starting on a grid line meets 1/eps + 1 boxes
    assert point_count(pts, 0.125) == 9
    assert point_count(pts, 0.125, connected=False) == 2


def test_curve_dimensions():
    t = np.linspace(0, 2 * np.pi, 4000)
    circle = np.stack([np.cos(t), np.sin(t)], axis=1)
    levels = [2.0 ** -j for j in range(2, 9)]
    assert points_dimension(circle, levels).dimension == pytest.approx(1.0, abs=0.05)


def _graph_points(gamma=0.5, n=2**15 + 1):
    th = np.linspace(0, np.pi, n)
    return np.stack([th, weierstrass_series(gamma, th, K=16)], axis=1)


def test_bilipschitz_invariance():
    pts = _graph_points()
    levels = [np.pi / 2**j for j in range(3, 10)]
    shear = lambda x, y: (x + 0.3 * y, 0.8 * y + 0.1 * np.sin(x))
    before, after = bilipschitz_probe(pts, shear, levels)
    assert abs(before - after) <= 0.1
    c, s = np.cos(0.4), np.sin(0.4)
    before, after = bilipschitz_probe(pts, lambda x, y: (c * x - s * y, s * x + c * y), levels)
    assert abs(before - after) <= 0.1


def test_distortion():
    pts = np.array([[0.0, 0.0], [1.0, 1.0]])
    assert distortion(lambda x, y: (2 * x, y), pts) == pytest.approx(2.0, rel=1e-6)
    with pytest.raises(ValueError, match="distortion"):
        bilipschitz_probe(pts, lambda x, y: (100 * x, y), [0.5, 0.25])


def test_union_is_max():
    levels = [np.pi / 2**j for j in range(3, 10)]
    rough = _graph_points(0.3)
    smooth = np.stack([TH, np.sin(TH) + 5.0], axis=1)
    da, db, du = union_probe(rough, smooth, levels)
    assert du == pytest.approx(max(da, db), abs=0.05)


def test_estimate_json():
    est = BoxCountEstimate((0.5, 0.25), (4, 8))
    js = est.to_json()
    assert js["counts"] == [4, 8] and js["dimension"] is None
