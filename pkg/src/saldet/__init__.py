"""Salient object detection toolkit with explicit center-bias modeling.

Submodules:
  dataset         image/mask ingestion and sRGB -> CIE Lab conversion
  segmentation    graph-based region partition and per-region statistics
  region_saliency region contrast saliency and its locally debiased variant
  pixel_saliency  maximum symmetric surround saliency
  centerbias      Gaussian center prior and combination schemes
  evaluation      threshold-sweep measures (F scores, PR/ROC areas, hit-rate)
  stats           centroid distribution analysis and significance tests
  cli             batch pipeline front-end
"""

from .centerbias import (
    CombinationScheme,
    GaussianCenterModel,
    combine,
    default_center_model,
    gaussian_center_map,
    region_center_prior,
)
from .dataset import DatasetIndex, index_dataset, load_pair, rgb_to_lab
from .evaluation import EvalReport, aggregate_dataset, evaluate_image, sweep_confusion
from .maps import load_map_png, max_normalize, save_map_png
from .pixel_saliency import msss
from .region_saliency import (
    ColorPalette,
    build_palette,
    region_contrast,
    spatial_weights,
    weight_sum_field,
)
from .segmentation import Segmentation, felzenszwalb_segment, region_stats
from .stats import (
    mask_centroid,
    ppcc,
    ppcc_test,
    qq_pairs,
    to_polar,
    two_sample_t_test,
)

__version__ = "0.1.0"

__all__ = [
    "CombinationScheme",
    "ColorPalette",
    "DatasetIndex",
    "EvalReport",
    "GaussianCenterModel",
    "Segmentation",
    "aggregate_dataset",
    "build_palette",
    "combine",
    "default_center_model",
    "evaluate_image",
    "felzenszwalb_segment",
    "gaussian_center_map",
    "index_dataset",
    "load_map_png",
    "load_pair",
    "mask_centroid",
    "max_normalize",
    "msss",
    "ppcc",
    "ppcc_test",
    "qq_pairs",
    "region_center_prior",
    "region_contrast",
    "region_stats",
    "rgb_to_lab",
    "save_map_png",
    "spatial_weights",
    "sweep_confusion",
    "to_polar",
    "two_sample_t_test",
    "weight_sum_field",
]
