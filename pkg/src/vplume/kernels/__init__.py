"""Hot-kernel dispatch.

The per-pixel workhorses exist twice: a compiled Cython core
(``_native``) and a vectorized numpy fallback (``numpy_backend``),
signature-identical.  When the compiled core is available, the kernels
with per-pixel branching or sliding state (mean filter, HSI conversions,
split reductions) come from it; the pure elementwise transcendental maps
stay on numpy, whose SIMD libm loops measure faster than scalar calls
(see benchmarks/bench_backends.py for the numbers behind the split).

``VPLUME_BACKEND`` overrides the choice:

    VPLUME_BACKEND=numpy    force the fallback for everything
    VPLUME_BACKEND=native   require the compiled core (ImportError if absent)

Both backends are deterministic and agree to ~1e-12; they are not
guaranteed bit-identical to each other.
"""

import os

from . import numpy_backend

# kernels the compiled core measurably wins; the remaining elementwise
# maps (weighted_intensity, illumination_map, power_map) are faster in
# numpy on every size benchmarked
_COMPILED_WINS = (
    "box_filter",
    "rgb_to_hsi",
    "hsi_to_rgb",
    "nonzero_sum_count",
    "bright_dark_stats",
)

_choice = os.environ.get("VPLUME_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "native", "numpy"):
    raise ValueError(f"VPLUME_BACKEND must be auto, native or numpy, not {_choice!r}")

if _choice == "numpy":
    _native = None
else:
    try:
        from . import _native
    except ImportError:
        if _choice == "native":
            raise ImportError(
                "VPLUME_BACKEND=native but the vplume._native extension is not built"
            ) from None
        _native = None

BACKEND = "native" if _native is not None else "numpy"


def _pick(name: str):
    if _native is not None and name in _COMPILED_WINS:
        return getattr(_native, name)
    return getattr(numpy_backend, name)


box_filter = _pick("box_filter")
rgb_to_hsi = _pick("rgb_to_hsi")
hsi_to_rgb = _pick("hsi_to_rgb")
nonzero_sum_count = _pick("nonzero_sum_count")
bright_dark_stats = _pick("bright_dark_stats")
weighted_intensity = _pick("weighted_intensity")
illumination_map = _pick("illumination_map")
power_map = _pick("power_map")


def backend_name() -> str:
    """Kernel backend in use: 'native' (compiled core active) or 'numpy'."""
    return BACKEND
