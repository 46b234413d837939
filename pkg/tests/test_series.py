import numpy as np
import pytest

from vidalign.errors import BadWindow, DimMismatch, LengthMismatch
from vidalign.features import SubjectTrack, local_features
from vidalign.rng import SplitMix64
from vidalign.series import (
    GLOBAL_DIM,
    SERIES_DIM,
    FeatureSeries,
    assemble,
    build_series,
    normalize,
    smooth,
)


def _track(T, seed):
    rng = SplitMix64(seed)
    boxes = np.column_stack([
        rng.normals(T) * 5.0 + 100.0,
        rng.normals(T) * 5.0 + 80.0,
        rng.floats(T) * 20.0 + 10.0,
        rng.floats(T) * 30.0 + 15.0,
    ])
    poses = rng.normal_matrix(T * 24, 2).reshape(T, 24, 2) * 8.0 + 50.0
    return SubjectTrack(boxes, poses)


def test_layout_constants():
    assert GLOBAL_DIM == 64
    assert SERIES_DIM == 166


def test_series_requires_2d():
    with pytest.raises(DimMismatch):
        FeatureSeries(np.zeros(5))


def test_assemble_order_and_width():
    track = _track(7, 1)
    local = local_features(track)
    rng = SplitMix64(2)
    glob = rng.normal_matrix(7, 64)
    series = assemble(local, glob, "vid01")
    assert series.video_id == "vid01"
    assert series.values.shape == (7, 166)
    assert np.array_equal(series.values[:, :3], local.static_box)
    assert np.array_equal(series.values[:, 3:51], local.static_pose)
    assert np.array_equal(series.values[:, 51:54], local.dynamic_box)
    assert np.array_equal(series.values[:, 54:102], local.dynamic_pose)
    assert np.array_equal(series.values[:, 102:], glob)


def test_assemble_rejects_bad_global():
    track = _track(5, 3)
    local = local_features(track)
    with pytest.raises(DimMismatch):
        assemble(local, np.zeros((5, 63)))
    with pytest.raises(LengthMismatch):
        assemble(local, np.zeros((6, 64)))


def test_smooth_impulse():
    series = FeatureSeries(np.array([[0.0], [0.0], [5.0], [0.0], [0.0]]))
    out = smooth(series, window=5).values[:, 0]
    # clipped windows: frame 1 averages frames 1..3, frame 2 frames 1..4
    np.testing.assert_allclose(out, [5 / 3, 5 / 4, 1.0, 5 / 4, 5 / 3], atol=1e-12)


def test_smooth_window_one_is_identity():
    series = FeatureSeries(SplitMix64(9).normal_matrix(6, 4))
    assert np.array_equal(smooth(series, window=1).values, series.values)


def test_smooth_preserves_constant_columns():
    series = FeatureSeries(np.full((8, 3), 2.5))
    np.testing.assert_allclose(smooth(series).values, 2.5, atol=1e-12)


def test_smooth_rejects_bad_window():
    series = FeatureSeries(np.zeros((5, 2)))
    for bad in (0, -1, 2, 4):
        with pytest.raises(BadWindow):
            smooth(series, window=bad)


def test_smooth_per_column_independent():
    rng = SplitMix64(14)
    values = rng.normal_matrix(10, 3)
    whole = smooth(FeatureSeries(values)).values
    for c in range(3):
        col = smooth(FeatureSeries(values[:, c:c + 1])).values[:, 0]
        np.testing.assert_array_equal(whole[:, c], col)


def test_normalize_fixture():
    series = FeatureSeries(np.array([[1.0], [3.0]]))
    np.testing.assert_array_equal(normalize(series).values, [[-1.0], [1.0]])


def test_normalize_moments():
    series = FeatureSeries(SplitMix64(5).normal_matrix(40, 6) * 3.0 + 7.0)
    out = normalize(series).values
    np.testing.assert_allclose(out.mean(axis=0), 0.0, atol=1e-9)
    np.testing.assert_allclose(out.std(axis=0), 1.0, atol=1e-9)


def test_normalize_constant_column_to_zeros():
    values = SplitMix64(6).normal_matrix(9, 3)
    values[:, 1] = 4.25
    out = normalize(FeatureSeries(values)).values
    assert np.all(out[:, 1] == 0.0)
    assert np.any(out[:, 0] != 0.0)


def test_normalize_affine_invariant():
    values = SplitMix64(7).normal_matrix(12, 4)
    a = normalize(FeatureSeries(values)).values
    b = normalize(FeatureSeries(values * 3.5 + 100.0)).values
    np.testing.assert_allclose(a, b, atol=1e-9)


def test_build_series_shape_and_determinism():
    track = _track(9, 31)
    glob = SplitMix64(32).normal_matrix(9, 64)
    a = build_series(track, glob, "v")
    b = build_series(_track(9, 31), glob.copy(), "v")
    assert a.values.shape == (9, 166)
    assert np.array_equal(a.values, b.values)
    assert np.all(np.isfinite(a.values))


def test_build_series_output_is_normalized():
    track = _track(12, 41)
    glob = SplitMix64(42).normal_matrix(12, 64)
    out = build_series(track, glob).values
    live = out.std(axis=0) > 0
    np.testing.assert_allclose(out[:, live].mean(axis=0), 0.0, atol=1e-9)
    np.testing.assert_allclose(out[:, live].std(axis=0), 1.0, atol=1e-9)
