#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the numpy fallback.

    python benchmarks/bench_backends.py [--sizes 200x100,500x250,...]

Times each hot kernel and one full enhancement cycle per backend and
prints a table with the speedup.  The full-cycle rows correspond to the
published per-frame timing scale (K=1).
"""

import argparse
import time

import numpy as np

import vplume.kernels.numpy_backend as np_backend

try:
    import vplume.kernels._native as native
except ImportError:
    native = None

from vplume.pipeline import EnhanceConfig, enhance


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def kernel_cases(rng, h, w):
    channel = rng.random((h, w))
    sparse = channel.copy()
    sparse[sparse < 0.3] = 0.0
    rgb = rng.random((h, w, 3))
    hsi = np_backend.rgb_to_hsi(rgb)
    surface = channel * 6.0
    amax = float(surface.max())
    peak = float(channel.max())
    return [
        ("box_filter k=3", lambda be: be.box_filter(channel, 3)),
        ("box_filter k=9", lambda be: be.box_filter(channel, 9)),
        ("rgb_to_hsi", lambda be: be.rgb_to_hsi(rgb)),
        ("hsi_to_rgb", lambda be: be.hsi_to_rgb(hsi)),
        ("bright_dark_stats", lambda be: be.bright_dark_stats(sparse, 0.4)),
        ("weighted_intensity", lambda be: be.weighted_intensity(channel, peak)),
        ("illumination_map", lambda be: be.illumination_map(surface, amax, 2.25, 0.5)),
        ("power_map", lambda be: be.power_map(channel, 1.37)),
    ]


def parse_sizes(text):
    sizes = []
    for token in text.split(","):
        w, h = token.lower().split("x")
        sizes.append((int(h), int(w)))
    return sizes


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--sizes", default="200x100,500x400,1000x500",
        help="comma-separated WxH sizes (default 200x100,500x400,1000x500)",
    )
    args = parser.parse_args()

    if native is None:
        print("compiled core not built; showing numpy timings only\n")

    rng = np.random.default_rng(0)
    for h, w in parse_sizes(args.sizes):
        print(f"== {w}x{h} ==")
        print(f"{'kernel':<20} {'numpy':>10} {'native':>10} {'speedup':>8}")
        for name, call in kernel_cases(rng, h, w):
            t_np = timeit(lambda: call(np_backend))
            if native is not None:
                t_nat = timeit(lambda: call(native))
                print(f"{name:<20} {t_np * 1e3:>8.2f}ms {t_nat * 1e3:>8.2f}ms {t_np / t_nat:>7.1f}x")
            else:
                print(f"{name:<20} {t_np * 1e3:>8.2f}ms {'-':>10} {'-':>8}")

        frame = rng.random((h, w, 3)) * 0.35
        cfg = EnhanceConfig(force_k=1)
        import vplume.kernels as dispatch

        kernel_names = (
            "box_filter", "rgb_to_hsi", "hsi_to_rgb", "nonzero_sum_count",
            "bright_dark_stats", "weighted_intensity", "illumination_map",
            "power_map",
        )
        saved = {name: getattr(dispatch, name) for name in kernel_names}
        try:
            for label, backend in (("all numpy", np_backend), ("all native", native)):
                if backend is None:
                    continue
                for name in kernel_names:
                    setattr(dispatch, name, getattr(backend, name))
                t = timeit(lambda: enhance(frame, cfg), repeats=3)
                print(f"{'full cycle, ' + label:<20} {t * 1e3:>8.1f}ms")
        finally:
            for name, fn in saved.items():
                setattr(dispatch, name, fn)
        t = timeit(lambda: enhance(frame, cfg), repeats=3)
        print(f"{'full cycle, as-routed':<20} {t * 1e3:>8.1f}ms   (import-time routing)")
        print()


if __name__ == "__main__":
    main()
