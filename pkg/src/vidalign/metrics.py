"""Alignment quality metrics and phase classification.

Ground truth is a per-frame phase labeling; the reference correspondence is
the polyline through the first frame of each phase in both videos.  A
predicted warp path is scored by the normalized area it encloses against
that polyline and by the share of frames it maps to the correct phase.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (EmptyTrainSet, EndpointMismatch, InputError, InvalidAnnotation,
                     LengthMismatch, LengthTooShort, PhaseCountMismatch, TooFewVideos)
from .align import validate_path
from .rng import SplitMix64
from .series import FeatureSeries


@dataclass
class PhaseAnnotation:
    """Per-frame phase ids 1..P: non-decreasing, steps of at most 1, no gaps."""

    phases: np.ndarray
    video_id: str = ""

    def __post_init__(self):
        self.phases = np.asarray(self.phases, dtype=np.int64)
        if self.phases.ndim != 1 or len(self.phases) == 0:
            raise InvalidAnnotation("phases must be a non-empty 1-D sequence")
        if self.phases[0] != 1:
            raise InvalidAnnotation(f"first frame must be phase 1, got {self.phases[0]}")
        steps = np.diff(self.phases)
        if ((steps < 0) | (steps > 1)).any():
            bad = int(np.flatnonzero((steps < 0) | (steps > 1))[0])
            raise InvalidAnnotation(
                f"phase must stay or advance by 1; frame {bad + 2} jumps "
                f"{self.phases[bad]} -> {self.phases[bad + 1]}")

    @property
    def n_frames(self) -> int:
        return len(self.phases)

    @property
    def n_phases(self) -> int:
        return int(self.phases[-1])

    def first_frames(self) -> np.ndarray:
        """1-based first frame of each phase, length P."""
        firsts = np.empty(self.n_phases, dtype=np.int64)
        for p in range(1, self.n_phases + 1):
            firsts[p - 1] = int(np.flatnonzero(self.phases == p)[0]) + 1
        return firsts


@dataclass
class GroundTruthPath:
    """Reference correspondence polyline from (1,1) to (n,k).

    Interior anchors sit at the first frame of each phase after the first;
    anchors must strictly increase in both coordinates.
    """

    anchors: np.ndarray  # (P+1, 2) float64

    def __post_init__(self):
        self.anchors = np.asarray(self.anchors, dtype=np.float64)
        if self.anchors.ndim != 2 or self.anchors.shape[1] != 2 or len(self.anchors) < 2:
            raise InvalidAnnotation(f"anchors must be (>=2, 2), got {self.anchors.shape}")
        if tuple(self.anchors[0]) != (1.0, 1.0):
            raise InvalidAnnotation("ground-truth path must start at (1, 1)")
        if (np.diff(self.anchors, axis=0) <= 0).any():
            raise InvalidAnnotation(
                "anchors must strictly increase in both coordinates; "
                "degenerate phase boundaries are rejected, not repaired")

    @property
    def n(self) -> int:
        return int(self.anchors[-1, 0])

    @property
    def k(self) -> int:
        return int(self.anchors[-1, 1])


def ground_truth_path(a: PhaseAnnotation, b: PhaseAnnotation) -> GroundTruthPath:
    """Anchor the phase boundaries of two annotations against each other."""
    if a.n_phases != b.n_phases:
        raise PhaseCountMismatch(f"{a.n_phases} phases vs {b.n_phases}")
    first_a = a.first_frames()
    first_b = b.first_frames()
    anchors = [(1, 1)]
    for p in range(2, a.n_phases + 1):
        anchors.append((first_a[p - 1], first_b[p - 1]))
    anchors.append((a.n_frames, b.n_frames))
    return GroundTruthPath(np.array(anchors, dtype=np.float64))


def _shoelace_twice(points: np.ndarray) -> float:
    """Twice the signed area of a closed polygon (vertices in order)."""
    x = points[:, 0]
    y = points[:, 1]
    return float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def enclosed_area_error(path: np.ndarray, gt: GroundTruthPath,
                        n: int, k: int) -> float:
    """Normalized area between a predicted path and the ground-truth polyline.

    The two polylines are joined into one closed polygon (prediction
    forward, ground truth reversed) and its shoelace area is divided by
    (n-1)*(k-1), the full table area.  0 means exact agreement.  The
    predicted path is treated as a polyline through its vertices; it only
    has to span (1, 1) to (n, k), so sparse anchor polylines score the
    same as their step-expanded equivalents.
    """
    if n < 2 or k < 2:
        raise LengthTooShort(f"need n, k >= 2 for a normalizable area, got {n}, {k}")
    path = np.asarray(path, dtype=np.float64)
    if path.ndim != 2 or path.shape[1] != 2 or len(path) < 2:
        raise EndpointMismatch(f"path must be (>=2, 2) points, got {path.shape}")
    if tuple(path[0]) != (1.0, 1.0) or (path[-1][0], path[-1][1]) != (n, k):
        raise EndpointMismatch(
            f"path runs {tuple(path[0])} -> {tuple(path[-1])}, "
            f"expected (1, 1) -> ({n}, {k})")
    if gt.n != n or gt.k != k:
        raise EndpointMismatch(
            f"ground truth ends at ({gt.n}, {gt.k}), expected ({n}, {k})")
    polygon = np.vstack([path, gt.anchors[::-1]])
    return abs(_shoelace_twice(polygon)) / 2.0 / ((n - 1) * (k - 1))


def correct_phase_rate(path: np.ndarray, a: PhaseAnnotation,
                       b: PhaseAnnotation) -> float:
    """Fraction of first-video frames mapped to at least one same-phase frame."""
    path = validate_path(path, a.n_frames, b.n_frames)
    ok = np.zeros(a.n_frames, dtype=bool)
    pa = a.phases
    pb = b.phases
    for i, j in path:
        if pa[i - 1] == pb[j - 1]:
            ok[i - 1] = True
    return float(ok.sum()) / a.n_frames


def knn_predict(train_x: np.ndarray, train_y: np.ndarray,
                test_x: np.ndarray, k: int = 5) -> np.ndarray:
    """Euclidean k-nearest-neighbor labels with deterministic tie-breaking.

    Neighbor ties at equal distance resolve by training order (stable sort);
    vote ties resolve to the smaller label.
    """
    train_x = np.asarray(train_x, dtype=np.float64)
    test_x = np.asarray(test_x, dtype=np.float64)
    train_y = np.asarray(train_y, dtype=np.int64)
    if len(train_x) == 0:
        raise EmptyTrainSet("no training frames")
    if k < 1 or k > len(train_x):
        raise InputError(f"k must be in [1, {len(train_x)}], got {k}")
    out = np.empty(len(test_x), dtype=np.int64)
    for i, q in enumerate(test_x):
        d = np.sqrt(((train_x - q) ** 2).sum(axis=1))
        nearest = np.argsort(d, kind="stable")[:k]
        votes = np.bincount(train_y[nearest])
        out[i] = int(np.argmax(votes))  # first max = smallest label
    return out


def cross_validate(dataset: list[tuple[FeatureSeries, PhaseAnnotation]],
                   folds: int = 10, k: int = 5, seed: int = 0) -> float:
    """Video-level k-fold cross-validation of frame phase classification.

    Videos are sorted by id, shuffled with the seeded generator, dealt
    round-robin into folds; each fold is tested against a classifier trained
    on all other folds.  Returns pooled per-frame accuracy.
    """
    if len(dataset) < folds:
        raise TooFewVideos(f"{len(dataset)} videos for {folds} folds")
    if folds < 2:
        raise InputError(f"need at least 2 folds, got {folds}")
    ids = [s.video_id for s, _ in dataset]
    if len(set(ids)) != len(ids):
        raise InputError("video ids must be unique for fold assignment")
    for s, ann in dataset:
        if s.n_frames != ann.n_frames:
            raise LengthMismatch(
                f"{s.video_id}: series has {s.n_frames} frames, "
                f"annotation has {ann.n_frames}")

    order = sorted(range(len(dataset)), key=lambda idx: ids[idx])
    SplitMix64(seed).shuffle(order)
    fold_of = {}
    for pos, idx in enumerate(order):
        fold_of[idx] = pos % folds

    correct = 0
    total = 0
    for f in range(folds):
        train_x, train_y, test_x, test_y = [], [], [], []
        for idx, (s, ann) in enumerate(dataset):
            if fold_of[idx] == f:
                test_x.append(s.values)
                test_y.append(ann.phases)
            else:
                train_x.append(s.values)
                train_y.append(ann.phases)
        if not test_x:
            continue
        pred = knn_predict(np.vstack(train_x), np.concatenate(train_y),
                           np.vstack(test_x), k)
        truth = np.concatenate(test_y)
        correct += int((pred == truth).sum())
        total += len(truth)
    return correct / total


@dataclass
class EvalReport:
    """Scores for one aligned pair plus the configuration that produced them."""

    eae: float | None = None
    correct_phase_rate: float | None = None
    classification_accuracy: float | None = None
    config: dict | None = None
