"""Image containers, color conversion and spatial filtering.

Images are plain numpy float64 arrays in the unit interval:

* channel image  -- shape ``(h, w)``; luminance-like samples, nominally
  [0, 1] (pipeline intermediates may exceed 1)
* RGB image      -- shape ``(h, w, 3)``, every channel in [0, 1]
* HSI image      -- shape ``(h, w, 3)``: hue in degrees [0, 360),
  saturation and intensity in [0, 1]

The conversion and filtering entry points below validate shapes, then
delegate the per-pixel work to :mod:`vplume.kernels`.
"""

import numpy as np

from . import kernels


def as_channel(img) -> np.ndarray:
    """Coerce to a contiguous float64 (h, w) array."""
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"channel image must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"channel image must be at least 1x1, got shape {arr.shape}")
    return arr


def as_rgb(img) -> np.ndarray:
    """Coerce to a contiguous float64 (h, w, 3) array."""
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"RGB image must have shape (h, w, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"RGB image must be at least 1x1, got shape {arr.shape}")
    return arr


def validate_channel(img) -> np.ndarray:
    """:func:`as_channel` plus a finiteness check."""
    arr = as_channel(img)
    if not np.isfinite(arr).all():
        raise ValueError("channel image contains NaN or infinite samples")
    return arr


def validate_rgb(img) -> np.ndarray:
    """:func:`as_rgb` plus finiteness and [0, 1] range checks."""
    arr = as_rgb(img)
    if not np.isfinite(arr).all():
        raise ValueError("RGB image contains NaN or infinite samples")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("RGB channels must lie in [0, 1]")
    return arr


def rgb_to_hsi(img) -> np.ndarray:
    """Convert RGB to HSI (arccos hue formulation).

    Intensity is the channel mean (r+g+b)/3.  Achromatic pixels
    (r=g=b, including black) get hue 0 and saturation 0.
    """
    return kernels.rgb_to_hsi(as_rgb(img))


def hsi_to_rgb(img) -> np.ndarray:
    """Convert HSI back to RGB via the three 120-degree sectors.

    Output channels are clipped to [0, 1]: an intensity raised past the
    gamut boundary (as the enhancement reconstruction can do) would
    otherwise produce channels above 1.
    """
    return kernels.hsi_to_rgb(as_rgb(img))


def box_filter(img, kernel: int) -> np.ndarray:
    """Mean filter with an odd square window and replicated borders.

    kernel=1 is the identity.  Output values never leave the input's
    [min, max] range, and a constant image is reproduced exactly.
    """
    if not isinstance(kernel, (int, np.integer)):
        raise TypeError(f"kernel side must be an integer, got {type(kernel).__name__}")
    if kernel < 1 or kernel % 2 == 0:
        raise ValueError(f"kernel side must be odd and positive, got {kernel}")
    return kernels.box_filter(as_channel(img), int(kernel))


def intensity(img) -> np.ndarray:
    """Brightness channel of an RGB image: (r + g + b) / 3."""
    arr = as_rgb(img)
    return (arr[:, :, 0] + arr[:, :, 1] + arr[:, :, 2]) / 3.0
