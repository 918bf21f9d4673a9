"""Full-reference quality metrics and exposure statistics.

PSNR and SSIM operate on unit-range float images.  SSIM is the standard
single-scale index: 11x11 Gaussian window (sigma 1.5), C1 = 0.01^2,
C2 = 0.03^2, local map over fully-interior windows, scalar score as the
map mean.  RGB inputs are reduced to the brightness channel first.
"""

import math
from dataclasses import dataclass

import numpy as np

from .image_core import as_channel, as_rgb, intensity
from .vp_model import DegenerateInputError, resolve_tau

PSNR_CAP_DB = 99.0
SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
SSIM_C1 = 0.01**2
SSIM_C2 = 0.03**2

CSV_COLUMNS = ("file", "psnr", "ssim", "mean_brightness", "saturated_fraction", "dark_fraction")

SATURATION_LEVEL = 254.0 / 255.0


@dataclass
class MetricReport:
    psnr: float
    ssim: float
    mean_brightness: float
    saturated_fraction: float
    dark_fraction: float

    def to_csv_row(self, file: str) -> list:
        return [
            file,
            repr(self.psnr),
            repr(self.ssim),
            repr(self.mean_brightness),
            repr(self.saturated_fraction),
            repr(self.dark_fraction),
        ]

    def to_json_obj(self) -> dict:
        return {
            "psnr": self.psnr,
            "ssim": self.ssim,
            "mean_brightness": self.mean_brightness,
            "saturated_fraction": self.saturated_fraction,
            "dark_fraction": self.dark_fraction,
        }


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB over all channels, unit peak.

    Identical images would be infinite; the value is capped at 99 dB so
    reports stay finite.  Exactly symmetric in its arguments.
    """
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"image shapes differ: {x.shape} vs {y.shape}")
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return PSNR_CAP_DB
    return min(PSNR_CAP_DB, 10.0 * math.log10(1.0 / mse))


def _gaussian_taps() -> np.ndarray:
    offsets = np.arange(SSIM_WINDOW, dtype=np.float64) - (SSIM_WINDOW - 1) / 2.0
    taps = np.exp(-(offsets**2) / (2.0 * SSIM_SIGMA**2))
    return taps / taps.sum()


def _window_filter(img: np.ndarray, taps: np.ndarray) -> np.ndarray:
    """Separable Gaussian-weighted means over fully-interior windows."""
    k = taps.size
    h, w = img.shape
    cols = np.zeros((h, w - k + 1), dtype=np.float64)
    for t in range(k):
        cols += taps[t] * img[:, t : t + w - k + 1]
    out = np.zeros((h - k + 1, w - k + 1), dtype=np.float64)
    for t in range(k):
        out += taps[t] * cols[t : t + h - k + 1, :]
    return out


def _to_gray(img) -> np.ndarray:
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim == 3:
        return intensity(arr)
    return as_channel(arr)


def ssim(a, b) -> float:
    """Structural similarity between two images (gray or RGB)."""
    x = _to_gray(a)
    y = _to_gray(b)
    if x.shape != y.shape:
        raise ValueError(f"image shapes differ: {x.shape} vs {y.shape}")
    if x.shape[0] < SSIM_WINDOW or x.shape[1] < SSIM_WINDOW:
        raise ValueError(f"images must be at least {SSIM_WINDOW}x{SSIM_WINDOW}, got {x.shape}")

    taps = _gaussian_taps()
    mu_x = _window_filter(x, taps)
    mu_y = _window_filter(y, taps)
    var_x = _window_filter(x * x, taps) - mu_x * mu_x
    var_y = _window_filter(y * y, taps) - mu_y * mu_y
    cov = _window_filter(x * y, taps) - mu_x * mu_y

    num = (2.0 * mu_x * mu_y + SSIM_C1) * (2.0 * cov + SSIM_C2)
    den = (mu_x * mu_x + mu_y * mu_y + SSIM_C1) * (var_x + var_y + SSIM_C2)
    return float(np.mean(num / den))


def exposure_stats(img, tau_policy="mean") -> dict:
    """No-reference exposure summary of an RGB image.

    mean_brightness    -- mean of the brightness channel
    saturated_fraction -- pixels with any channel at or above 254/255
    dark_fraction      -- pixels with brightness at or below tau
                          (tau = 0 for an all-black image)
    """
    arr = as_rgb(img)
    bright = intensity(arr)
    try:
        tau = resolve_tau(np.ascontiguousarray(bright), tau_policy)
    except DegenerateInputError:
        tau = 0.0
    saturated = np.any(arr >= SATURATION_LEVEL, axis=2)
    return {
        "mean_brightness": float(bright.mean()),
        "saturated_fraction": float(np.count_nonzero(saturated)) / saturated.size,
        "dark_fraction": float(np.count_nonzero(bright <= tau)) / bright.size,
    }


def full_report(output, reference, tau_policy="mean") -> MetricReport:
    """PSNR/SSIM of output against reference plus output exposure stats."""
    stats = exposure_stats(output, tau_policy)
    return MetricReport(
        psnr=psnr(output, reference),
        ssim=ssim(output, reference),
        **stats,
    )
