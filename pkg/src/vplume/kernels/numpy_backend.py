"""Vectorized numpy implementations of the per-pixel kernels.

This is the fallback backend and the reference the compiled core is
checked against.  Every function here has a signature-identical twin in
``_native.pyx``; ``vplume.kernels`` picks one set at import time.

All image arguments are float64 arrays: 2-D ``(h, w)`` for single
channels, 3-D ``(h, w, 3)`` for RGB and HSI.  Hue is in degrees.
"""

import numpy as np

NAME = "numpy"


def box_filter(img: np.ndarray, kernel: int) -> np.ndarray:
    """Mean filter with edge replication, via a padded integral image.

    The result is clamped into [img.min(), img.max()] so that rounding in
    the summed-area arithmetic can never push a mean outside the input
    range (a mean of constants must reproduce the constant exactly).
    """
    if kernel == 1:
        return img.copy()
    r = kernel // 2
    padded = np.pad(img, r, mode="edge")
    tab = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.float64)
    np.cumsum(padded, axis=0, out=tab[1:, 1:])
    np.cumsum(tab[1:, 1:], axis=1, out=tab[1:, 1:])
    k = kernel
    sums = tab[k:, k:] - tab[:-k, k:] - tab[k:, :-k] + tab[:-k, :-k]
    out = sums / float(k * k)
    np.clip(out, img.min(), img.max(), out=out)
    return out


def rgb_to_hsi(rgb: np.ndarray) -> np.ndarray:
    """RGB -> (hue degrees [0,360), saturation [0,1], intensity [0,1])."""
    r = rgb[:, :, 0]
    g = rgb[:, :, 1]
    b = rgb[:, :, 2]
    total = r + g + b
    i = total / 3.0

    s = np.zeros_like(i)
    pos = total > 0.0
    np.divide(3.0 * np.minimum(np.minimum(r, g), b), total, out=s, where=pos)
    s = np.where(pos, 1.0 - s, 0.0)
    np.clip(s, 0.0, 1.0, out=s)

    num = 0.5 * ((r - g) + (r - b))
    den = np.sqrt((r - g) ** 2 + (r - b) * (g - b))
    chromatic = (den > 0.0) & (s > 0.0)
    cosang = np.divide(num, den, out=np.zeros_like(num), where=chromatic)
    theta = np.degrees(np.arccos(np.clip(cosang, -1.0, 1.0)))
    h = np.where(b > g, 360.0 - theta, theta)
    h = np.where(chromatic, h, 0.0)
    h = np.where(h >= 360.0, 0.0, h)

    return np.stack([h, s, i], axis=2)


def hsi_to_rgb(hsi: np.ndarray) -> np.ndarray:
    """Inverse of :func:`rgb_to_hsi` (three 120-degree sectors), gamut-clipped."""
    h = np.mod(hsi[:, :, 0], 360.0)
    s = hsi[:, :, 1]
    i = hsi[:, :, 2]

    r = np.empty_like(i)
    g = np.empty_like(i)
    b = np.empty_like(i)

    third = np.pi / 3.0  # 60 degrees
    for lo, first, second, last in ((0.0, b, r, g), (120.0, r, g, b), (240.0, g, b, r)):
        sect = (h >= lo) & (h < lo + 120.0)
        hr = np.radians(h[sect] - lo)
        ss = s[sect]
        ii = i[sect]
        lead = ii * (1.0 - ss)
        mid = ii * (1.0 + ss * np.cos(hr) / np.cos(third - hr))
        first[sect] = lead
        second[sect] = mid
        last[sect] = 3.0 * ii - lead - mid

    rgb = np.stack([r, g, b], axis=2)
    np.clip(rgb, 0.0, 1.0, out=rgb)
    return rgb


def nonzero_sum_count(img: np.ndarray) -> tuple[float, int]:
    """Sum and count of the strictly positive samples."""
    mask = img > 0.0
    return float(img.sum(where=mask)), int(np.count_nonzero(mask))


def bright_dark_stats(img: np.ndarray, tau: float) -> tuple[float, float, int, int, int]:
    """One-pass split statistics: (phi1, phi2, count1, count2, zero_count).

    phi1/count1 cover samples strictly above tau, phi2/count2 the samples
    in (0, tau]; exact zeros land in zero_count only.
    """
    bright = img > tau
    positive = img > 0.0
    dark = positive & ~bright
    phi1 = float(img.sum(where=bright))
    phi2 = float(img.sum(where=dark))
    n1 = int(np.count_nonzero(bright))
    n2 = int(np.count_nonzero(dark))
    nzero = img.size - int(np.count_nonzero(positive))
    return phi1, phi2, n1, n2, nzero


def weighted_intensity(ib: np.ndarray, peak: float) -> np.ndarray:
    """(1 + ln(1 + e^(peak - ib)))^4 * ib, the boosted pre-filter surface."""
    w = (1.0 + np.log1p(np.exp(peak - ib))) ** 4
    return w * ib


def illumination_map(a: np.ndarray, amax: float, beta_sq: float, theta: float) -> np.ndarray:
    """2 - |log10(10 - 9*(amax - a)/amax)|^beta_sq + theta, elementwise."""
    ratio = (amax - a) / amax
    term = np.abs(np.log10(10.0 - 9.0 * ratio))
    return 2.0 - term**beta_sq + theta


def power_map(img: np.ndarray, exponent: float) -> np.ndarray:
    """img ** exponent, elementwise."""
    return img**exponent
