"""Subject-centered Gaussian weight masks.

The mask weights every pixel of a frame so that downstream image embeddings
attend to the subject: a 2D Gaussian centered on the subject box inside an
enlarged "margin box", and one constant slightly below the boundary minimum
everywhere outside it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBox, EmptyIntersection, InputError
from .features import Box


@dataclass
class WeightMask:
    """Frame-sized weight matrix plus the margin-box pixel bounds.

    values: (H, W) float64 weights.
    mbox: inclusive pixel bounds (x0, y0, x1, y1) of the margin box.
    outside_value: the constant used outside the margin box, or None when the
    margin box covers every pixel.
    """

    values: np.ndarray
    mbox: tuple[int, int, int, int]
    outside_value: float | None


def gaussian_mask(frame_w: int, frame_h: int, box: Box, margin_px: float = 20.0,
                  outside_drop: float = 0.2, normalized: bool = True) -> WeightMask:
    """Build the subject weight mask for one frame.

    The margin box adds margin_px to the box width and height (half per
    side) and is clipped to the frame.  Inside it the weight is
    exp(-(x'^2 + y'^2) / 2) where (x', y') is the pixel offset from the box
    center, divided by the unclipped margin-box half-extents when
    normalized=True (the default; raw pixel offsets otherwise).  Outside,
    every pixel gets (min weight on the margin-box boundary) - outside_drop,
    which may be negative; no clamping is applied.

    Raises EmptyIntersection when the box misses the frame entirely.
    """
    if frame_w < 1 or frame_h < 1:
        raise InputError(f"frame must be at least 1x1, got {frame_w}x{frame_h}")
    if box.w <= 0 or box.h <= 0:
        raise DegenerateBox(f"box extent must be positive, got {box.w}x{box.h}")
    if (box.cx + box.w / 2 < 0 or box.cx - box.w / 2 > frame_w - 1
            or box.cy + box.h / 2 < 0 or box.cy - box.h / 2 > frame_h - 1):
        raise EmptyIntersection("box does not overlap the frame")

    half_w = (box.w + margin_px) / 2
    half_h = (box.h + margin_px) / 2
    x0 = max(0, math.ceil(box.cx - half_w))
    x1 = min(frame_w - 1, math.floor(box.cx + half_w))
    y0 = max(0, math.ceil(box.cy - half_h))
    y1 = min(frame_h - 1, math.floor(box.cy + half_h))
    if x0 > x1 or y0 > y1:
        raise EmptyIntersection("margin box contains no pixel")

    dx = np.arange(x0, x1 + 1, dtype=np.float64) - box.cx
    dy = np.arange(y0, y1 + 1, dtype=np.float64) - box.cy
    if normalized:
        dx = dx / half_w
        dy = dy / half_h
    inside = np.exp(-(dx[np.newaxis, :] ** 2 + dy[:, np.newaxis] ** 2) / 2)

    ring = np.concatenate([inside[0], inside[-1], inside[:, 0], inside[:, -1]])
    g_min = float(ring.min())

    if x0 == 0 and y0 == 0 and x1 == frame_w - 1 and y1 == frame_h - 1:
        return WeightMask(inside, (x0, y0, x1, y1), None)
    outside = g_min - outside_drop
    values = np.full((frame_h, frame_w), outside)
    values[y0:y1 + 1, x0:x1 + 1] = inside
    return WeightMask(values, (x0, y0, x1, y1), outside)
