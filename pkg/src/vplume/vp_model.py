"""Perception statistics of a brightness channel.

A smoothed brightness channel is split at a threshold tau into bright
samples (above tau) and dark samples (positive, at or below tau); exact
zeros count as interference and join neither side.  From the split come
four normalized quantities

    p1, p2 -- bright/dark energy: sum of samples over (pixels - zeros)
    q1, q2 -- bright/dark area ratio: sample count over (pixels - zeros)

which drive two adaptive gains:

    beta  = sqrt(exp(sqrt(ln(1/p2)) - ln(1/q2)))     (dark imbalance)
    gamma = p1 if q1 > q2 else p2                    (energy of the
                                                      dominant side)

and the cycle threshold t = floor((beta^2)^sqrt(beta)), floored at 1.

p and q are clamped into [epsilon, 1] before use so the logarithms stay
finite on degenerate splits (all-bright or all-dark channels).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .image_core import as_channel

DEFAULT_EPSILON = 1e-6


class DegenerateInputError(ValueError):
    """The brightness channel has no positive samples to work with."""


@dataclass
class VpStats:
    """Split statistics of one brightness channel."""

    phi1: float  # sum of bright samples
    phi2: float  # sum of dark samples
    count1: int  # bright pixel count
    count2: int  # dark pixel count
    zero_count: int  # exact-zero pixel count
    p1: float  # bright energy, clamped to [epsilon, 1]
    p2: float  # dark energy, clamped
    q1: float  # bright area ratio, clamped
    q2: float  # dark area ratio, clamped
    threshold_tau: float


@dataclass
class Gains:
    """Adaptive gains derived from VpStats."""

    beta: float
    gamma: float
    t: int


def resolve_tau(ib: np.ndarray, policy="mean") -> float:
    """Bright/dark split point: mean of positive samples, or a fixed value.

    Raises DegenerateInputError when the channel has no positive sample
    (the adaptive mean is undefined and the statistics would be, too).
    """
    total, count = kernels.nonzero_sum_count(ib)
    if count == 0:
        raise DegenerateInputError("brightness channel is identically zero")
    if isinstance(policy, str):
        if policy != "mean":
            raise ValueError(f"unknown tau policy {policy!r}")
        return total / count
    tau = float(policy)
    if not math.isfinite(tau) or tau < 0.0:
        raise ValueError(f"fixed tau must be finite and non-negative, got {tau}")
    return tau


def split_bright_dark(ib, policy="mean") -> tuple[np.ndarray, np.ndarray, float]:
    """Partition a brightness channel into bright/dark sample maps.

    Returns (h_b, h_d, tau): h_b keeps samples strictly above tau,
    h_d keeps positive samples at or below tau, zeros stay zero in both.
    h_b + h_d reproduces the channel on its positive pixels.
    """
    arr = as_channel(ib)
    tau = resolve_tau(arr, policy)
    h_b = np.where(arr > tau, arr, 0.0)
    h_d = np.where((arr > 0.0) & (arr <= tau), arr, 0.0)
    return h_b, h_d, tau


def vp_stats(ib, policy="mean", epsilon: float = DEFAULT_EPSILON) -> VpStats:
    """Quantify a brightness channel's bright/dark energy and area ratios."""
    arr = as_channel(ib)
    tau = resolve_tau(arr, policy)
    phi1, phi2, count1, count2, zero_count = kernels.bright_dark_stats(arr, tau)
    denom = arr.size - zero_count
    if denom == 0:
        raise DegenerateInputError("brightness channel is identically zero")

    def clamp(v: float) -> float:
        return min(1.0, max(epsilon, v))

    return VpStats(
        phi1=phi1,
        phi2=phi2,
        count1=count1,
        count2=count2,
        zero_count=zero_count,
        p1=clamp(phi1 / denom),
        p2=clamp(phi2 / denom),
        q1=clamp(count1 / denom),
        q2=clamp(count2 / denom),
        threshold_tau=tau,
    )


def beta(stats: VpStats) -> float:
    """Dark-imbalance gain; natural logarithms, finite by the clamp."""
    return math.sqrt(math.exp(math.sqrt(math.log(1.0 / stats.p2)) - math.log(1.0 / stats.q2)))


def gamma(stats: VpStats) -> float:
    """Energy of the side with the larger area ratio (ties go dark)."""
    return stats.p1 if stats.q1 > stats.q2 else stats.p2


def adaptive_threshold(beta_value: float) -> int:
    """Cycle target t = floor((beta^2)^sqrt(beta)), never below 1."""
    if not math.isfinite(beta_value) or beta_value <= 0.0:
        raise ValueError(f"beta must be finite and positive, got {beta_value}")
    return max(1, math.floor((beta_value * beta_value) ** math.sqrt(beta_value)))


def gains(stats: VpStats) -> Gains:
    """beta, gamma and the cycle threshold t for one channel's statistics."""
    b = beta(stats)
    return Gains(beta=b, gamma=gamma(stats), t=adaptive_threshold(b))
