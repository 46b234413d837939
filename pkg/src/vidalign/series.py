"""Per-video feature series: assemble, smooth, z-normalize.

A video becomes a (T, 166) matrix: 102 local feature columns followed by a
64-wide global embedding, smoothed with a centered moving average and then
z-scored per column.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadWindow, DimMismatch, LengthMismatch
from .features import LocalFeatures, SubjectTrack, local_features

DIM_LAYOUT = (("static_box", 3), ("static_pose", 48),
              ("dynamic_box", 3), ("dynamic_pose", 48),
              ("global", 64))
GLOBAL_DIM = 64
SERIES_DIM = sum(width for _, width in DIM_LAYOUT)  # 166

# Columns are constant when the population std is at or below this relative
# threshold; float rounding leaves O(1e-17) residue on truly constant input.
_CONST_RTOL = 1e-12


@dataclass
class FeatureSeries:
    """A (T, D) float64 matrix with the video it came from."""

    values: np.ndarray
    video_id: str = ""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise DimMismatch(f"series must be 2-D, got shape {self.values.shape}")

    @property
    def n_frames(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


def assemble(local: LocalFeatures, global_feats: np.ndarray,
             video_id: str = "") -> FeatureSeries:
    """Concatenate local blocks and the 64-wide global block into (T, 166)."""
    global_feats = np.asarray(global_feats, dtype=np.float64)
    if global_feats.ndim != 2 or global_feats.shape[1] != GLOBAL_DIM:
        raise DimMismatch(
            f"global features must be (T, {GLOBAL_DIM}), got {global_feats.shape}")
    stacked = local.stacked()
    if len(stacked) != len(global_feats):
        raise LengthMismatch(
            f"local has {len(stacked)} frames, global has {len(global_feats)}")
    return FeatureSeries(np.hstack([stacked, global_feats]), video_id)


def smooth(series: FeatureSeries, window: int = 5) -> FeatureSeries:
    """Centered moving average per column.

    The window is clipped to the valid frame range near the edges (frame 1
    with window 5 averages frames 1..3), so length is preserved and no
    padding values are invented.
    """
    if window < 1 or window % 2 == 0:
        raise BadWindow(f"window must be a positive odd integer, got {window}")
    values = series.values
    half = window // 2
    out = np.empty_like(values)
    for i in range(len(values)):
        lo = max(0, i - half)
        hi = min(len(values) - 1, i + half)
        out[i] = values[lo:hi + 1].mean(axis=0)
    return FeatureSeries(out, series.video_id)


def normalize(series: FeatureSeries) -> FeatureSeries:
    """Z-score each column over time using population variance.

    Columns with (numerically) zero variance become all zeros.
    """
    values = series.values
    mean = values.mean(axis=0)
    std = values.std(axis=0)  # ddof=0
    scale = np.maximum(1.0, np.abs(values).max(axis=0, initial=0.0))
    constant = std <= _CONST_RTOL * scale
    out = np.zeros_like(values)
    live = ~constant
    out[:, live] = (values[:, live] - mean[live]) / std[live]
    return FeatureSeries(out, series.video_id)


def build_series(track: SubjectTrack, global_feats: np.ndarray,
                 video_id: str = "", window: int = 5) -> FeatureSeries:
    """Full pipeline: local features -> assemble -> smooth -> normalize."""
    raw = assemble(local_features(track), global_feats, video_id)
    return normalize(smooth(raw, window))
