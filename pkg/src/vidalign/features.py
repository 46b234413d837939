"""Per-frame subject features from detection boxes and 2D poses.

A track stores one box and one 24-point pose per frame (missing detections
allowed).  After gap interpolation, four local feature blocks are computed
per frame: box position/ratio relative to frame 1, pose keypoints relative
to the frame-1 hip, and the first differences of both.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AllMissing, DegenerateBox, InputError, LengthTooShort

N_KEYPOINTS = 24
# Keypoint 1 is the hip; the full order is fixed in docs/FORMATS.md.
HIP = 0


@dataclass(frozen=True)
class Box:
    """Axis-aligned subject box: center (cx, cy), width w, height h, in pixels."""

    cx: float
    cy: float
    w: float
    h: float

    @property
    def ratio(self) -> float:
        """Height/width aspect ratio."""
        return self.h / self.w


@dataclass
class SubjectTrack:
    """Per-frame observations of one subject.

    boxes: (T, 4) float array of [cx, cy, w, h]; a NaN row marks a missing box.
    poses: (T, 24, 2) float array of keypoint (x, y); NaN marks a missing pose.
    """

    boxes: np.ndarray
    poses: np.ndarray

    def __post_init__(self):
        self.boxes = np.asarray(self.boxes, dtype=np.float64)
        self.poses = np.asarray(self.poses, dtype=np.float64)
        if self.boxes.ndim != 2 or self.boxes.shape[1] != 4:
            raise InputError(f"boxes must be (T, 4), got {self.boxes.shape}")
        if self.poses.ndim != 3 or self.poses.shape[1:] != (N_KEYPOINTS, 2):
            raise InputError(f"poses must be (T, {N_KEYPOINTS}, 2), got {self.poses.shape}")
        if len(self.boxes) != len(self.poses):
            raise InputError("boxes and poses disagree on frame count")
        if len(self.boxes) < 2:
            raise LengthTooShort(f"track needs at least 2 frames, got {len(self.boxes)}")

    @classmethod
    def from_frames(cls, frames) -> "SubjectTrack":
        """Build from a list of (Box | None, (24, 2) keypoints | None) pairs."""
        boxes = np.full((len(frames), 4), np.nan)
        poses = np.full((len(frames), N_KEYPOINTS, 2), np.nan)
        for t, (box, pose) in enumerate(frames):
            if box is not None:
                boxes[t] = (box.cx, box.cy, box.w, box.h)
            if pose is not None:
                poses[t] = np.asarray(pose, dtype=np.float64)
        return cls(boxes, poses)

    @property
    def n_frames(self) -> int:
        return len(self.boxes)

    @property
    def missing_boxes(self) -> int:
        return int(np.isnan(self.boxes).any(axis=1).sum())

    @property
    def missing_poses(self) -> int:
        return int(np.isnan(self.poses).any(axis=(1, 2)).sum())

    def is_complete(self) -> bool:
        return self.missing_boxes == 0 and self.missing_poses == 0


@dataclass
class LocalFeatures:
    """Per-frame local feature blocks, in series column order."""

    static_box: np.ndarray    # (T, 3)
    static_pose: np.ndarray   # (T, 48)
    dynamic_box: np.ndarray   # (T, 3)
    dynamic_pose: np.ndarray  # (T, 48)

    def stacked(self) -> np.ndarray:
        """(T, 102) concatenation in declaration order."""
        return np.hstack([self.static_box, self.static_pose,
                          self.dynamic_box, self.dynamic_pose])


def _fill_rows(values: np.ndarray, what: str) -> np.ndarray:
    """Linearly interpolate missing rows; edge gaps copy the nearest present row."""
    flat = values.reshape(len(values), -1)
    present = ~np.isnan(flat).any(axis=1)
    if not present.any():
        raise AllMissing(f"no frame has a {what}")
    if present.all():
        return values.copy()
    t = np.arange(len(flat), dtype=np.float64)
    tp = t[present]
    out = np.empty_like(flat)
    for c in range(flat.shape[1]):
        out[:, c] = np.interp(t, tp, flat[present, c])
    out[present] = flat[present]  # present frames stay bit-identical
    return out.reshape(values.shape)


def interpolate_track(track: SubjectTrack) -> SubjectTrack:
    """Return a fully populated copy of the track.

    Interior gaps are filled by per-coordinate linear interpolation between
    the nearest present frames; leading/trailing gaps copy the nearest
    present frame.  Raises AllMissing when a whole channel is absent.
    """
    return SubjectTrack(_fill_rows(track.boxes, "box"),
                        _fill_rows(track.poses, "pose"))


def _require_complete(track: SubjectTrack) -> None:
    if not track.is_complete():
        raise InputError("track has missing frames; run interpolate_track first")


def static_box_features(track: SubjectTrack) -> np.ndarray:
    """(T, 3) block: center offset from frame 1 and ratio relative to frame 1.

    Columns: cx(n)-cx(1), cy(n)-cy(1), r(n)/r(1) with r = h/w.  Frame 1 is
    (0, 0, 1) by construction.
    """
    _require_complete(track)
    boxes = track.boxes
    bad = np.flatnonzero((boxes[:, 2] <= 0) | (boxes[:, 3] <= 0))
    if bad.size:
        raise DegenerateBox(f"non-positive box extent at frame {bad[0] + 1}")
    offsets = boxes[:, :2] - boxes[0, :2]
    ratios = boxes[:, 3] / boxes[:, 2]
    return np.column_stack([offsets, ratios / ratios[0]])


def static_pose_features(track: SubjectTrack) -> np.ndarray:
    """(T, 48) block: every keypoint of every frame relative to the frame-1 hip."""
    _require_complete(track)
    anchored = track.poses - track.poses[0, HIP]
    return anchored.reshape(track.n_frames, 2 * N_KEYPOINTS)


def dynamic_features(static_block: np.ndarray) -> np.ndarray:
    """First differences along time; the first frame is all zeros."""
    static_block = np.asarray(static_block, dtype=np.float64)
    if len(static_block) < 2:
        raise LengthTooShort("dynamic features need at least 2 frames")
    out = np.empty_like(static_block)
    out[0] = 0.0
    out[1:] = static_block[1:] - static_block[:-1]
    return out


def local_features(track: SubjectTrack) -> LocalFeatures:
    """Interpolate the track and compute all four local blocks (T, 102 total)."""
    full = interpolate_track(track)
    sb = static_box_features(full)
    sp = static_pose_features(full)
    return LocalFeatures(sb, sp, dynamic_features(sb), dynamic_features(sp))
