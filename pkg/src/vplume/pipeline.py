"""End-to-end enhancement: preprocessing, per-cycle reconstruction and
the cycle/comparator loop that picks the output.

Each cycle converts the working image to HSI, smooths the brightness
channel, quantifies its bright/dark statistics, estimates illumination
and reflectance, reconstructs the brightness channel as their clipped
product, and converts back to RGB with hue and saturation untouched.
After every cycle the threshold t is recomputed from that cycle's beta;
the loop stops as soon as the cycle count reaches t (or a configured
cap/forced count) and the current intermediate image becomes the output.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from . import estimation, vp_model
from .image_core import as_channel, box_filter, hsi_to_rgb, rgb_to_hsi, validate_rgb

EQ2_MODES = ("literal", "prose")
STOP_COMPARATOR = "comparator"
STOP_CAP = "cap"
STOP_FORCED = "forced"

# interpretation choices baked into this implementation, restated in
# every trace so downstream analysis can tell which variant produced it
CONVENTIONS = {
    "beta_log_base": "e",
    "illumination_log_base": 10,
    "theta_from_raw_a": True,
}


@dataclass
class EnhanceConfig:
    """Every tunable the enhancement chain leaves open.

    kernel      -- mean-filter side (odd, >= 1)
    epsilon     -- floor applied to the normalized statistics
    k_max       -- hard cycle cap
    tau_policy  -- "mean" (mean of positive samples) or a fixed float
    force_k     -- run exactly this many cycles, ignoring the comparator
    eq2_mode    -- smooth-channel reading: "literal" (smooth - detail)
                   or "prose" (original - detail)
    """

    kernel: int = 3
    epsilon: float = vp_model.DEFAULT_EPSILON
    k_max: int = 8
    tau_policy: object = "mean"
    force_k: int | None = None
    eq2_mode: str = "literal"

    def __post_init__(self):
        if self.kernel < 1 or self.kernel % 2 == 0:
            raise ValueError(f"kernel must be odd and positive, got {self.kernel}")
        if not 0.0 < self.epsilon <= 1e-2:
            raise ValueError(f"epsilon must lie in (0, 1e-2], got {self.epsilon}")
        if self.k_max < 1:
            raise ValueError(f"k_max must be at least 1, got {self.k_max}")
        if self.force_k is not None and not 1 <= self.force_k <= self.k_max:
            raise ValueError(
                f"force_k must lie in [1, k_max={self.k_max}], got {self.force_k}"
            )
        if isinstance(self.tau_policy, str):
            if self.tau_policy != "mean":
                raise ValueError(f"tau_policy must be 'mean' or a float, got {self.tau_policy!r}")
        else:
            self.tau_policy = float(self.tau_policy)
        if self.eq2_mode not in EQ2_MODES:
            raise ValueError(f"eq2_mode must be one of {EQ2_MODES}, got {self.eq2_mode!r}")


@dataclass
class CycleRecord:
    """Diagnostics of one executed cycle."""

    k: int
    t: int
    beta: float
    gamma: float
    theta: float
    u: float
    tau: float
    stats: vp_model.VpStats
    channels: dict  # {"i_c": {"mean","min","max"}, "i_b": ..., ...}

    def to_json_obj(self) -> dict:
        s = self.stats
        return {
            "k": self.k,
            "t": self.t,
            "beta": self.beta,
            "gamma": self.gamma,
            "theta": self.theta,
            "u": self.u,
            "tau": self.tau,
            "stats": {
                "phi1": s.phi1,
                "phi2": s.phi2,
                "count1": s.count1,
                "count2": s.count2,
                "zero_count": s.zero_count,
                "p1": s.p1,
                "p2": s.p2,
                "q1": s.q1,
                "q2": s.q2,
                **self.channels,
            },
        }


@dataclass
class CycleTrace:
    """Per-cycle records plus the reason the loop stopped."""

    records: list = field(default_factory=list)
    stop_reason: str = ""

    @property
    def cycles(self) -> int:
        return len(self.records)

    def to_json_obj(self) -> dict:
        return {
            "stop_reason": self.stop_reason,
            "cycles": self.cycles,
            "conventions": dict(CONVENTIONS),
            "records": [r.to_json_obj() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)


def preprocess(ic, kernel: int, mode: str = "literal") -> tuple[np.ndarray, np.ndarray]:
    """Split a brightness channel into smooth and detail parts.

    detail = positive part of (channel - mean-filtered channel).  The
    smooth channel is clamp(filtered - detail, 0, 1) in "literal" mode,
    or clamp(channel - detail, 0, 1) in "prose" mode.  Returns
    (smooth, detail).
    """
    if mode not in EQ2_MODES:
        raise ValueError(f"mode must be one of {EQ2_MODES}, got {mode!r}")
    arr = as_channel(ic)
    filtered = box_filter(arr, kernel)
    detail = np.maximum(arr - filtered, 0.0)
    base = filtered if mode == "literal" else arr
    smooth = np.clip(base - detail, 0.0, 1.0)
    return smooth, detail


def _channel_summary(arr: np.ndarray) -> dict:
    return {"mean": float(arr.mean()), "min": float(arr.min()), "max": float(arr.max())}


def enhance_once(img, cfg: EnhanceConfig | None = None) -> tuple[np.ndarray, CycleRecord]:
    """One enhancement cycle.  Returns (enhanced RGB, cycle record).

    The record's k and t fields are 0; the cycle loop assigns them.
    Raises DegenerateInputError when the brightness channel is
    identically zero.
    """
    cfg = cfg or EnhanceConfig()
    rgb = validate_rgb(img)
    hsi = rgb_to_hsi(rgb)
    i_c = np.ascontiguousarray(hsi[:, :, 2])

    i_b, _ = preprocess(i_c, cfg.kernel, cfg.eq2_mode)
    stats = vp_model.vp_stats(i_b, cfg.tau_policy, cfg.epsilon)
    beta = vp_model.beta(stats)
    gamma = vp_model.gamma(stats)

    illum = estimation.estimate_illumination(i_b, beta, cfg.kernel)
    n_e, u = estimation.reflectance(i_c, i_b, beta, gamma)
    i_e = np.clip(n_e * illum.m_e, 0.0, 1.0)

    hsi[:, :, 2] = i_e
    f_e = hsi_to_rgb(hsi)

    record = CycleRecord(
        k=0,
        t=0,
        beta=beta,
        gamma=gamma,
        theta=illum.theta,
        u=u,
        tau=stats.threshold_tau,
        stats=stats,
        channels={
            "i_c": _channel_summary(i_c),
            "i_b": _channel_summary(i_b),
            "m_e": _channel_summary(illum.m_e),
            "n_e": _channel_summary(n_e),
            "i_e": _channel_summary(i_e),
        },
    )
    return f_e, record


def enhance(img, cfg: EnhanceConfig | None = None) -> tuple[np.ndarray, CycleTrace]:
    """Full cycle loop.  Returns (output RGB, trace).

    Stops when the cycle count reaches the threshold recomputed from the
    current cycle's beta (covers the threshold dropping below the count
    between cycles), at the k_max cap, or at force_k exactly.
    """
    cfg = cfg or EnhanceConfig()
    trace = CycleTrace()
    working = img
    f_e = None
    for k in range(1, cfg.k_max + 1):
        f_e, record = enhance_once(working, cfg)
        record.k = k
        record.t = vp_model.adaptive_threshold(record.beta)
        trace.records.append(record)
        if cfg.force_k is not None:
            if k == cfg.force_k:
                trace.stop_reason = STOP_FORCED
                break
        elif k >= record.t:
            trace.stop_reason = STOP_COMPARATOR
            break
        if k == cfg.k_max:
            trace.stop_reason = STOP_CAP
            break
        working = f_e
    return f_e, trace
