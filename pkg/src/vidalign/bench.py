"""Desk-scale benchmark suites comparing alignment methods on synthetic pairs.

Two stress patterns: a long idle prefix on one video (breaks the linear
baseline) and a spuriously cheap off-diagonal corridor in the cost table
(lures plain warping away from the true correspondence).  Each suite
returns one row per (pair, method) with EAE and correct-phase rate.
"""
from __future__ import annotations

import numpy as np

from .align import (AlignmentConfig, AlignmentResult, align, auto_margin,
                    cost_matrix, dp_align, penalize)
from .metrics import correct_phase_rate, enclosed_area_error, ground_truth_path
from .rng import SplitMix64, derive_seed
from .synth import SynthSpec, add_wait_phase, carve_corridor, generate_pair

SUITES = ("wait", "corridor")

# Suite shape: 3 phases, 8..16 frames each, mild noise on 166-wide features.
_PHASES = 3
_DUR_LO, _DUR_HI = 8, 16
_NOISE = 0.1
_DIM = 166
# Corridor carving: cheap cells at this fraction of the true-match cost,
# stalled for 30..45% of the length.
_CORRIDOR_COST_FRAC = 0.35
_PAUSE_LO_FRAC, _PAUSE_HI_FRAC = 0.30, 0.45


def _row(suite, pair, method, result, gt, ann_a, ann_b):
    return {
        "suite": suite,
        "pair": pair,
        "method": method,
        "n": result.n,
        "k": result.k,
        "eae": enclosed_area_error(result.path, gt, result.n, result.k),
        "correct_phase_rate": correct_phase_rate(result.path, ann_a, ann_b),
    }


def run_wait_suite(n_pairs: int, seed: int,
                   margin: float | None = None, lam: float = 1.0) -> list[dict]:
    """Idle-prefix stress: diagonal-penalty warping vs the linear baseline."""
    rows = []
    for pair in range(n_pairs):
        pair_seed = derive_seed(seed, pair)
        rng = SplitMix64(pair_seed)
        dur_a = tuple(rng.randint(_DUR_LO, _DUR_HI) for _ in range(_PHASES))
        dur_b = tuple(rng.randint(_DUR_LO, _DUR_HI) for _ in range(_PHASES))
        spec = SynthSpec(_PHASES, dur_a, dur_b, feature_dim=_DIM,
                         noise_std=_NOISE, seed=derive_seed(pair_seed, 1))
        a, b, ann_a, ann_b, _ = generate_pair(spec, derive_seed(pair_seed, 2))
        a, ann_a = add_wait_phase(a, ann_a)
        gt = ground_truth_path(ann_a, ann_b)
        for method in ("ddtw", "trivial"):
            result = align(a, b, AlignmentConfig(method, margin, lam))
            rows.append(_row("wait", pair, method, result, gt, ann_a, ann_b))
    return rows


def run_corridor_suite(n_pairs: int, seed: int,
                       margin: float | None = None, lam: float = 1.0) -> list[dict]:
    """Cheap-corridor stress: diagonal-penalty warping vs plain warping.

    Durations are equal on both sides so the true correspondence is the
    main diagonal; the carved corridor is priced below the true-match cost
    to bait the unpenalized optimum off it.
    """
    rows = []
    for pair in range(n_pairs):
        pair_seed = derive_seed(seed, pair)
        rng = SplitMix64(pair_seed)
        durs = tuple(rng.randint(_DUR_LO, _DUR_HI) for _ in range(_PHASES))
        spec = SynthSpec(_PHASES, durs, durs, feature_dim=_DIM,
                         noise_std=_NOISE, seed=derive_seed(pair_seed, 1))
        a, b, ann_a, ann_b, gt = generate_pair(spec, derive_seed(pair_seed, 2))
        n = k = a.n_frames

        cost = cost_matrix(a, b)
        honest = float(np.mean(np.diag(cost)))
        pause = rng.randint(int(_PAUSE_LO_FRAC * n), max(int(_PAUSE_LO_FRAC * n) + 1,
                                                         int(_PAUSE_HI_FRAC * n)))
        carved = carve_corridor(cost, pause, _CORRIDOR_COST_FRAC * honest)

        eff_margin = auto_margin(n, k) if margin is None else margin
        for method, table in (("dtw", carved),
                              ("ddtw", penalize(carved, eff_margin, lam))):
            path, total = dp_align(table)
            result = AlignmentResult(path, total, method, n, k)
            rows.append(_row("corridor", pair, method, result, gt, ann_a, ann_b))
    return rows


def summarize(rows: list[dict]) -> list[dict]:
    """Per (suite, method) medians over pairs, in first-seen order."""
    keys = []
    groups = {}
    for r in rows:
        key = (r["suite"], r["method"])
        if key not in groups:
            groups[key] = []
            keys.append(key)
        groups[key].append(r)
    out = []
    for suite, method in keys:
        g = groups[(suite, method)]
        out.append({
            "suite": suite,
            "method": method,
            "pairs": len(g),
            "median_eae": float(np.median([r["eae"] for r in g])),
            "median_correct_phase_rate": float(
                np.median([r["correct_phase_rate"] for r in g])),
        })
    return out
