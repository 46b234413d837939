"""Pairwise temporal alignment of feature series.

Three methods share one result type: plain dynamic time warping, its
diagonal-penalty variant (off-diagonal cells get multiplicatively more
expensive, which keeps warp paths near the linear-time correspondence), and
a linear interpolation baseline that ignores the features entirely.

Index convention: warp paths are 1-based (i, j) pairs, i over the first
series (n frames), j over the second (k frames), starting at (1, 1) and
ending at (n, k) with steps from {(1,0), (0,1), (1,1)}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, InputError, InvalidPath
from .series import FeatureSeries

METHODS = ("dtw", "ddtw", "trivial")

DEFAULT_LAMBDA = 1.0
# Auto margin: this fraction of the cost-table diagonal length.
MARGIN_FRACTION = 0.1


@dataclass
class AlignmentConfig:
    """method in {dtw, ddtw, trivial}; margin None means auto (0.1 * diagonal)."""

    method: str = "ddtw"
    margin: float | None = None
    lam: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}, expected one of {METHODS}")
        if self.margin is not None and self.margin < 0:
            raise InputError(f"margin must be >= 0, got {self.margin}")
        if self.lam < 0:
            raise InputError(f"lambda must be >= 0, got {self.lam}")


@dataclass
class AlignmentResult:
    """A warp path with the cost it was optimal for.

    total_cost sums the (penalized, for ddtw) cost cells along the path;
    margin/lam echo the effective configuration and are None for methods
    that do not use them.
    """

    path: np.ndarray  # (L, 2) int64, 1-based
    total_cost: float
    method: str
    n: int
    k: int
    margin: float | None = None
    lam: float | None = None


def _as_matrix(x) -> np.ndarray:
    if isinstance(x, FeatureSeries):
        x = x.values
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    return x


def auto_margin(n: int, k: int) -> float:
    return MARGIN_FRACTION * math.sqrt(n * n + k * k)


def cost_matrix(x, y) -> np.ndarray:
    """(n, k) Euclidean distances; rows follow the first series."""
    x = _as_matrix(x)
    y = _as_matrix(y)
    if x.shape[1] != y.shape[1]:
        raise DimMismatch(f"feature widths differ: {x.shape[1]} vs {y.shape[1]}")
    diff = x[:, np.newaxis, :] - y[np.newaxis, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def diagonal_distance(i: int, j: int, n: int, k: int) -> float:
    """Distance from 1-based cell (i, j) to the line j = (k/n) * i.

    This is the perpendicular distance to the straight line through the
    origin with slope k/n, the idealized linear-time correspondence.
    """
    r = k / n
    return abs(r * i - j) / math.sqrt(r * r + 1.0)


def diagonal_distance_grid(n: int, k: int) -> np.ndarray:
    """(n, k) matrix of diagonal_distance over all 1-based cells."""
    r = k / n
    i = np.arange(1, n + 1, dtype=np.float64)[:, np.newaxis]
    j = np.arange(1, k + 1, dtype=np.float64)[np.newaxis, :]
    return np.abs(r * i - j) / math.sqrt(r * r + 1.0)


def penalize(cost: np.ndarray, margin: float, lam: float) -> np.ndarray:
    """Scale each cell by 1 + lam * (excess distance beyond the margin).

    Cells within the margin band are untouched; lam = 0 or margin = +inf
    reproduce the input bit-for-bit (multiplication by exactly 1.0).
    """
    cost = np.asarray(cost, dtype=np.float64)
    n, k = cost.shape
    d = diagonal_distance_grid(n, k)
    return cost * (1.0 + lam * np.maximum(d - margin, 0.0))


def dp_align(cost: np.ndarray) -> tuple[np.ndarray, float]:
    """Optimal warp path through a cost table by dynamic programming.

    Returns (path, total cost).  Backtracking breaks ties by preferring the
    diagonal predecessor, then the one that advances the first series, then
    the one that advances the second, so results are deterministic.
    """
    cost = np.asarray(cost, dtype=np.float64)
    if cost.ndim != 2 or cost.size == 0:
        raise InputError(f"cost table must be 2-D and non-empty, got shape {cost.shape}")
    n, k = cost.shape
    acc = np.empty((n, k))
    acc[0, 0] = cost[0, 0]
    for j in range(1, k):
        acc[0, j] = acc[0, j - 1] + cost[0, j]
    for i in range(1, n):
        acc[i, 0] = acc[i - 1, 0] + cost[i, 0]
        row = acc[i]
        prev = acc[i - 1]
        crow = cost[i]
        for j in range(1, k):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if row[j - 1] < best:
                best = row[j - 1]
            row[j] = crow[j] + best

    path = [(n, k)]
    i, j = n - 1, k - 1
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            best = acc[i - 1, j - 1]
            move = (-1, -1)
            if acc[i - 1, j] < best:
                best = acc[i - 1, j]
                move = (-1, 0)
            if acc[i, j - 1] < best:
                move = (0, -1)
            i += move[0]
            j += move[1]
        path.append((i + 1, j + 1))
    path.reverse()
    return np.array(path, dtype=np.int64), float(acc[n - 1, k - 1])


def trivial_path(n: int, k: int) -> np.ndarray:
    """Feature-free baseline: frame i maps to round(i * k / n), clamped to [1, k].

    Rounding is half-away-from-zero.  The anchor sequence is expanded into a
    valid warp path: second-index steps up to the first anchor, then between
    anchors a diagonal step first and second-index steps after.
    """
    if n < 1 or k < 1:
        raise InputError(f"lengths must be positive, got n={n} k={k}")
    targets = [min(k, max(1, math.floor(i * k / n + 0.5))) for i in range(1, n + 1)]
    path = [(1, 1)]
    for j in range(2, targets[0] + 1):
        path.append((1, j))
    for i in range(2, n + 1):
        prev_j = path[-1][1]
        if targets[i - 1] == prev_j:
            path.append((i, prev_j))
        else:
            path.append((i, prev_j + 1))
            for j in range(prev_j + 2, targets[i - 1] + 1):
                path.append((i, j))
    return np.array(path, dtype=np.int64)


def validate_path(path: np.ndarray, n: int, k: int) -> np.ndarray:
    """Check the warp-path contract; returns the path as an int64 array."""
    path = np.asarray(path, dtype=np.int64)
    if path.ndim != 2 or path.shape[1] != 2 or len(path) == 0:
        raise InvalidPath(f"path must be a non-empty (L, 2) array, got {path.shape}")
    if tuple(path[0]) != (1, 1):
        raise InvalidPath(f"path must start at (1, 1), got {tuple(path[0])}")
    if tuple(path[-1]) != (n, k):
        raise InvalidPath(f"path must end at ({n}, {k}), got {tuple(path[-1])}")
    deltas = np.diff(path, axis=0)
    ok = ((deltas[:, 0] >= 0) & (deltas[:, 1] >= 0)
          & (deltas[:, 0] <= 1) & (deltas[:, 1] <= 1)
          & (deltas.sum(axis=1) >= 1))
    if not ok.all():
        step = int(np.flatnonzero(~ok)[0])
        raise InvalidPath(f"illegal step {tuple(deltas[step])} after point {step + 1}")
    return path


def path_cost(cost: np.ndarray, path: np.ndarray) -> float:
    """Sum of cost cells along a 1-based path."""
    idx = np.asarray(path, dtype=np.int64) - 1
    return float(cost[idx[:, 0], idx[:, 1]].sum())


def align(x, y, config: AlignmentConfig | None = None) -> AlignmentResult:
    """Align two series (or raw (T, D) arrays) with the configured method."""
    if config is None:
        config = AlignmentConfig()
    x = _as_matrix(x)
    y = _as_matrix(y)
    n, k = len(x), len(y)
    if config.method == "trivial":
        path = trivial_path(n, k)
        total = path_cost(cost_matrix(x, y), path)
        return AlignmentResult(path, total, "trivial", n, k)
    cost = cost_matrix(x, y)
    if config.method == "dtw":
        path, total = dp_align(cost)
        return AlignmentResult(path, total, "dtw", n, k)
    margin = auto_margin(n, k) if config.margin is None else config.margin
    path, total = dp_align(penalize(cost, margin, config.lam))
    return AlignmentResult(path, total, "ddtw", n, k, margin=margin, lam=config.lam)
