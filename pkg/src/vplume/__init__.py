"""Adaptive low-light image enhancement.

The enhancement chain decomposes an image's brightness channel into
bright/dark energy and area statistics, derives adaptive gains from
them, estimates illumination and reflectance, and iterates the cycle
until a comparator threshold is met.  Per-pixel kernels run on a
compiled core when built, with a numpy fallback (see vplume.kernels).
"""

from .estimation import (
    IlluminationResult,
    ReflectanceResult,
    estimate_illumination,
    reflectance,
    regulator_one,
    regulator_two,
)
from .image_core import box_filter, hsi_to_rgb, intensity, rgb_to_hsi
from .image_io import ImageFormatError, load_image, save_image
from .kernels import backend_name
from .metrics import MetricReport, exposure_stats, full_report, psnr, ssim
from .pipeline import CycleRecord, CycleTrace, EnhanceConfig, enhance, enhance_once, preprocess
from .vp_model import (
    DegenerateInputError,
    Gains,
    VpStats,
    adaptive_threshold,
    beta,
    gains,
    gamma,
    split_bright_dark,
    vp_stats,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateInputError",
    "CycleRecord",
    "CycleTrace",
    "EnhanceConfig",
    "Gains",
    "IlluminationResult",
    "ImageFormatError",
    "MetricReport",
    "ReflectanceResult",
    "VpStats",
    "adaptive_threshold",
    "backend_name",
    "beta",
    "box_filter",
    "enhance",
    "enhance_once",
    "estimate_illumination",
    "exposure_stats",
    "full_report",
    "gains",
    "gamma",
    "hsi_to_rgb",
    "intensity",
    "load_image",
    "preprocess",
    "psnr",
    "reflectance",
    "regulator_one",
    "regulator_two",
    "rgb_to_hsi",
    "save_image",
    "split_bright_dark",
    "ssim",
    "vp_stats",
]
