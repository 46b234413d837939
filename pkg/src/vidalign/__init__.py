"""Temporal alignment of action videos modeled as multivariate time series.

Pipeline: per-frame subject features (box + pose + masked global embedding)
-> smoothed, z-normalized (T, 166) series -> pairwise warp-path alignment
with an optional diagonal penalty -> area/phase quality metrics, with a
synthetic generator for controlled evaluation.
"""

from .align import (AlignmentConfig, AlignmentResult, align, auto_margin,
                    cost_matrix, diagonal_distance, dp_align, penalize,
                    trivial_path, validate_path)
from .errors import InputError, VidalignError
from .features import (Box, LocalFeatures, SubjectTrack, dynamic_features,
                       interpolate_track, local_features, static_box_features,
                       static_pose_features)
from .mask import WeightMask, gaussian_mask
from .metrics import (EvalReport, GroundTruthPath, PhaseAnnotation,
                      correct_phase_rate, cross_validate, enclosed_area_error,
                      ground_truth_path, knn_predict)
from .series import (DIM_LAYOUT, GLOBAL_DIM, SERIES_DIM, FeatureSeries,
                     assemble, build_series, normalize, smooth)
from .synth import SynthSpec, add_wait_phase, carve_corridor, generate_pair

__version__ = "0.1.0"

__all__ = [
    "AlignmentConfig", "AlignmentResult", "align", "auto_margin",
    "cost_matrix", "diagonal_distance", "dp_align", "penalize",
    "trivial_path", "validate_path",
    "InputError", "VidalignError",
    "Box", "LocalFeatures", "SubjectTrack", "dynamic_features",
    "interpolate_track", "local_features", "static_box_features",
    "static_pose_features",
    "WeightMask", "gaussian_mask",
    "EvalReport", "GroundTruthPath", "PhaseAnnotation", "correct_phase_rate",
    "cross_validate", "enclosed_area_error", "ground_truth_path", "knn_predict",
    "DIM_LAYOUT", "GLOBAL_DIM", "SERIES_DIM", "FeatureSeries", "assemble",
    "build_series", "normalize", "smooth",
    "SynthSpec", "add_wait_phase", "carve_corridor", "generate_pair",
    "__version__",
]
