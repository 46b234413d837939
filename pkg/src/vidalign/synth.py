"""Synthetic multi-phase series with known ground truth.

Each phase has a smooth per-dimension quadratic profile driven by a latent
progress variable that runs 0..1 inside the phase.  Two videos built from
the same profiles but different phase durations are true temporal warps of
each other, so alignment quality can be scored against an exact reference.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, TooShort
from .metrics import GroundTruthPath, PhaseAnnotation, ground_truth_path
from .rng import SplitMix64, derive_seed
from .series import FeatureSeries

# Profile scales: inter-phase offset vs within-phase drift amplitude.
_BASE_SCALE = 4.0
_DRIFT_SCALE = 1.0

WAIT_STRATEGIES = ("cycle", "hold")


@dataclass
class SynthSpec:
    """Shape of one synthetic pair.

    seed fixes the phase profiles; the pair generator takes a separate seed
    for the additive noise so one profile can yield many noisy pairs.
    """

    phase_count: int
    durations_a: tuple[int, ...]
    durations_b: tuple[int, ...]
    feature_dim: int = 166
    noise_std: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.phase_count < 1:
            raise InputError(f"need at least 1 phase, got {self.phase_count}")
        for name, durs in (("a", self.durations_a), ("b", self.durations_b)):
            if len(durs) != self.phase_count:
                raise InputError(
                    f"durations_{name} has {len(durs)} entries for "
                    f"{self.phase_count} phases")
            if any(d < 1 for d in durs):
                raise InputError(f"durations_{name} must be positive, got {durs}")
        if self.feature_dim < 1:
            raise InputError(f"feature_dim must be positive, got {self.feature_dim}")
        if self.noise_std < 0:
            raise InputError(f"noise_std must be >= 0, got {self.noise_std}")


def _profiles(spec: SynthSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rng = SplitMix64(spec.seed)
    base = rng.normal_matrix(spec.phase_count, spec.feature_dim) * _BASE_SCALE
    lin = rng.normal_matrix(spec.phase_count, spec.feature_dim) * _DRIFT_SCALE
    quad = rng.normal_matrix(spec.phase_count, spec.feature_dim) * _DRIFT_SCALE
    return base, lin, quad


def _render(durations, base, lin, quad) -> tuple[np.ndarray, np.ndarray]:
    """Noise-free frames and phase labels for one video."""
    rows = []
    labels = []
    for p, d in enumerate(durations):
        u = np.zeros(d) if d == 1 else np.arange(d, dtype=np.float64) / (d - 1)
        rows.append(base[p] + np.outer(u, lin[p]) + np.outer(u * u, quad[p]))
        labels.extend([p + 1] * d)
    return np.vstack(rows), np.array(labels, dtype=np.int64)


def generate_pair(spec: SynthSpec, warp_seed: int,
                  video_id_a: str = "", video_id_b: str = ""):
    """Two warped renderings of the same profiles plus their ground truth.

    Returns (series_a, series_b, annotation_a, annotation_b, gt_path).
    With zero noise and equal durations the two series are identical.
    """
    base, lin, quad = _profiles(spec)
    ids = (video_id_a or f"synth-{spec.seed}-{warp_seed}-a",
           video_id_b or f"synth-{spec.seed}-{warp_seed}-b")
    out = []
    anns = []
    for which, durations in enumerate((spec.durations_a, spec.durations_b)):
        values, labels = _render(durations, base, lin, quad)
        if spec.noise_std > 0:
            noise_rng = SplitMix64(derive_seed(warp_seed, which))
            values = values + spec.noise_std * noise_rng.normal_matrix(*values.shape)
        out.append(FeatureSeries(values, ids[which]))
        anns.append(PhaseAnnotation(labels, ids[which]))
    return out[0], out[1], anns[0], anns[1], ground_truth_path(anns[0], anns[1])


def add_wait_phase(series: FeatureSeries, annotation: PhaseAnnotation,
                   strategy: str = "cycle"):
    """Prepend an idle stretch of ceil(T/2) frames labeled phase 1.

    "cycle" repeats frames 1, 2, 3 cyclically; "hold" repeats frame 1.
    Returns the extended (series, annotation).
    """
    if strategy not in WAIT_STRATEGIES:
        raise InputError(f"unknown strategy {strategy!r}, expected one of {WAIT_STRATEGIES}")
    t = series.n_frames
    if t < 3:
        raise TooShort(f"wait phase needs at least 3 frames, got {t}")
    if annotation.n_frames != t:
        raise InputError(
            f"annotation has {annotation.n_frames} frames, series has {t}")
    pre = math.ceil(t / 2)
    if strategy == "cycle":
        idx = np.arange(pre) % 3
    else:
        idx = np.zeros(pre, dtype=np.int64)
    values = np.vstack([series.values[idx], series.values])
    phases = np.concatenate([np.ones(pre, dtype=np.int64), annotation.phases])
    return (FeatureSeries(values, series.video_id),
            PhaseAnnotation(phases, annotation.video_id))


def carve_corridor(cost: np.ndarray, pause: int, value: float,
                   entry_frac: float = 0.2, exit_frac: float = 0.8) -> np.ndarray:
    """Cut a cheap monotone detour into a copy of a cost table.

    The detour leaves the main diagonal at entry_frac, stalls the second
    index for `pause` cells, runs diagonally, then climbs back to the main
    diagonal at exit_frac; every visited cell is set to `value`.  This
    simulates a spuriously cheap off-diagonal match that a feature-only
    warp will chase.
    """
    cost = np.array(cost, dtype=np.float64)
    n, k = cost.shape
    if n < 8 or k < 8:
        raise InputError(f"table too small to carve, got {n}x{k}")
    if pause < 1:
        raise InputError(f"pause must be positive, got {pause}")

    def diag_j(i):
        return int(round(i * (k - 1) / (n - 1)))

    i0 = int(round(entry_frac * (n - 1)))
    i1 = int(round(exit_frac * (n - 1)))
    j = diag_j(i0)
    cells = [(i0, j)]
    i = i0
    for _ in range(pause):  # stall: advance i only
        if i + 1 > i1:
            break
        i += 1
        cells.append((i, j))
    while i < i1 and j < diag_j(i1):  # ride parallel to the diagonal
        i += 1
        j += 1
        cells.append((i, j))
    while j < diag_j(i1):  # climb back up to the diagonal
        j += 1
        cells.append((i, j))
    for ci, cj in cells:
        cost[ci, cj] = value
    return cost
