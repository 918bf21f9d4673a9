"""Illumination and reflectance estimation.

Illumination runs through two regulators.  The first lifts dark regions:
every sample is boosted by (1 + ln(1 + e^(peak - v)))^4 (largest where
the channel is darkest) and the boosted surface is mean-filtered into A.
The second maps A onto the illumination gain

    m_e = 2 - |log10(10 - 9*(max(A) - A)/max(A))|^(beta^2) + theta
    theta = |max(A) - max(A)^beta|

so the brightest sample lands at 1 + theta and the darkest at 2 + theta
(base-10 log pins the bracket to [0, 1]).  theta is computed on the raw,
unnormalized A; normalizing first would force it to zero.

Reflectance raises the original brightness channel to a single global
exponent u >= 1, which can only attenuate unit-interval samples and so
protects bright regions from over-saturation.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .image_core import as_channel, box_filter
from .vp_model import DegenerateInputError


@dataclass
class IlluminationResult:
    a: np.ndarray  # first-regulator surface, >= 0, may exceed 1
    m_e: np.ndarray  # illumination map, in [1 + theta, 2 + theta]
    theta: float  # bright-area correction factor, >= 0


@dataclass
class ReflectanceResult:
    n_e: np.ndarray  # reflectance map, pointwise <= input channel
    u: float  # global exponent, >= 1


def regulator_one(ib, kernel: int) -> np.ndarray:
    """Boost-then-smooth: mean filter of the weighted brightness surface."""
    arr = as_channel(ib)
    peak = float(arr.max())
    return box_filter(kernels.weighted_intensity(arr, peak), kernel)


def regulator_two(a, beta: float) -> tuple[np.ndarray, float]:
    """Map the first-regulator surface to the illumination gain m_e.

    Returns (m_e, theta).  Requires max(a) > 0; beta must be positive.
    """
    if not math.isfinite(beta) or beta <= 0.0:
        raise ValueError(f"beta must be finite and positive, got {beta}")
    arr = as_channel(a)
    amax = float(arr.max())
    if amax <= 0.0:
        raise DegenerateInputError("illumination surface is identically zero")
    # max(a^beta) == max(a)^beta for non-negative a, so theta needs no
    # elementwise power
    theta = abs(amax - amax**beta)
    m_e = kernels.illumination_map(arr, amax, beta * beta, theta)
    return m_e, theta


def estimate_illumination(ib, beta: float, kernel: int) -> IlluminationResult:
    """Both regulators chained over a brightness channel."""
    a = regulator_one(ib, kernel)
    m_e, theta = regulator_two(a, beta)
    return IlluminationResult(a=a, m_e=m_e, theta=theta)


def reflectance(ic, ib, beta: float, gamma: float) -> tuple[np.ndarray, float]:
    """Reflectance map n_e = ic^u with u = [mean((ib^beta + 1)^gamma)]^(1/beta).

    u is clamped to >= 1, so n_e <= ic holds pointwise for unit-interval
    input.  Returns (n_e, u).
    """
    if not math.isfinite(beta) or beta <= 0.0:
        raise ValueError(f"beta must be finite and positive, got {beta}")
    if not math.isfinite(gamma) or not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")
    ic_arr = as_channel(ic)
    ib_arr = as_channel(ib)
    if ic_arr.shape != ib_arr.shape:
        raise ValueError(f"channel shapes differ: {ic_arr.shape} vs {ib_arr.shape}")
    inner = kernels.power_map(ib_arr, beta)
    inner += 1.0
    bracket = float(np.mean(kernels.power_map(inner, gamma)))
    u = max(1.0, bracket ** (1.0 / beta))
    return kernels.power_map(ic_arr, u), u


def estimate_reflectance(ic, ib, beta: float, gamma: float) -> ReflectanceResult:
    n_e, u = reflectance(ic, ib, beta, gamma)
    return ReflectanceResult(n_e=n_e, u=u)
