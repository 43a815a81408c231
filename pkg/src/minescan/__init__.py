"""Object recognition pipeline for small color scenes.

Stages: PPM raster I/O, 3x3 noise filtering, RGB to HSI conversion,
color/position clustering with automatic seeding, region-of-interest
extraction, and a backpropagation-trained classifier over hue/saturation
feature vectors.
"""

from .color import (AGGREGATES, N_FEATURES, FeatureParams, hs_feature,
                    hs_plane, hsi_planes, image_to_features, normalize_rgb,
                    rgb_to_hsi)
from .config import Config, ConfigError, load_config, parse_config, render_config
from .filters import (FILTER_KINDS, GAUSSIAN_MASK, MEAN_MASK, Mask3,
                      apply_mask3, filter_rgb, gaussian_filter, mean_filter,
                      median_filter)
from .mlp import (MODEL_MAGIC, ModelFormatError, Network, Sample, TrainParams,
                  TrainingReport, apply_update, backward, forward,
                  gradient_check, init_network, load_model, sample_mse,
                  save_model, train, train_epoch)
from .pipeline import (Detection, PipelineError, annotate, build_training_set,
                       classify_scene, correlation_factor, format_report)
from .raster import RasterError, load_ppm, merge_channels, save_ppm, split_channels
from .roi import BlankImageError, Rect, crop, find_roi, scale_to_64
from .scenes import (Occluder, SceneObject, SceneSpec, SceneSpecError,
                     gen_synthetic_scene, paper_suite_config, paper_suite_specs)
from .segment import (SegParams, SegmentResult, assign_pixels, distance5,
                      extract_objects, kmeans_segment, scs_seeds,
                      update_centroids)

__version__ = "0.1.0"

__all__ = [
    "AGGREGATES", "N_FEATURES", "FeatureParams", "hs_feature", "hs_plane",
    "hsi_planes", "image_to_features", "normalize_rgb", "rgb_to_hsi",
    "Config", "ConfigError", "load_config", "parse_config", "render_config",
    "FILTER_KINDS", "GAUSSIAN_MASK", "MEAN_MASK", "Mask3", "apply_mask3",
    "filter_rgb", "gaussian_filter", "mean_filter", "median_filter",
    "MODEL_MAGIC", "ModelFormatError", "Network", "Sample", "TrainParams",
    "TrainingReport", "apply_update", "backward", "forward", "gradient_check",
    "init_network", "load_model", "sample_mse", "save_model", "train",
    "train_epoch",
    "Detection", "PipelineError", "annotate", "build_training_set",
    "classify_scene", "correlation_factor", "format_report",
    "RasterError", "load_ppm", "merge_channels", "save_ppm", "split_channels",
    "BlankImageError", "Rect", "crop", "find_roi", "scale_to_64",
    "Occluder", "SceneObject", "SceneSpec", "SceneSpecError",
    "gen_synthetic_scene", "paper_suite_config", "paper_suite_specs",
    "SegParams", "SegmentResult", "assign_pixels", "distance5",
    "extract_objects", "kmeans_segment", "scs_seeds", "update_centroids",
    "__version__",
]
