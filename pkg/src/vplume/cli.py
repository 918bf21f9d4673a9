"""Batch enhancement front-end.

    vplume -i 'shots/*.png' -o out --trace --ref ground_truth --timing

Each input is loaded, enhanced and written to <out>/<stem>_vp.<ext>.
--trace adds <stem>_trace.json per input; --ref <dir> computes
full-reference metrics against the same-named file there and appends a
row to <out>/report.csv; --timing writes <out>/timing.csv with the
wall-clock seconds spent inside the enhancement loop (file I/O
excluded).

A failing input is reported and skipped.  Exit codes: 0 all inputs
enhanced, 1 some failed, 2 usage error (bad flags, no inputs matched,
unusable output directory).

Inputs are processed concurrently; VPLUME_THREADS overrides the worker
count (default: available parallelism).  Reports keep input order
regardless of completion order, and reruns of the same manifest are
byte-identical.
"""

import argparse
import csv
import glob
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import metrics
from .image_io import load_image, save_image
from .pipeline import EnhanceConfig, enhance

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2


@dataclass
class RunManifest:
    """Everything one batch run needs."""

    inputs: list
    output_dir: Path
    config: EnhanceConfig
    emit_trace: bool = False
    reference_dir: Path | None = None
    timing: bool = False
    workers: int = 1


def _tau_flag(value: str):
    if value == "mean":
        return "mean"
    try:
        return float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--tau expects 'mean' or a float, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vplume",
        description="Adaptive low-light image enhancement (batch).",
    )
    parser.add_argument(
        "-i", "--input", action="append", required=True, metavar="GLOB",
        help="input file or glob; repeatable",
    )
    parser.add_argument("-o", "--out", required=True, metavar="DIR", help="output directory")
    parser.add_argument("--kernel", type=int, default=3, help="mean-filter side, odd (default 3)")
    parser.add_argument("--k-max", type=int, default=8, help="cycle cap (default 8)")
    parser.add_argument(
        "--force-cycles", type=int, default=None, metavar="K",
        help="run exactly K cycles, ignoring the comparator",
    )
    parser.add_argument(
        "--tau", type=_tau_flag, default="mean",
        help="bright/dark split: 'mean' or a fixed float (default mean)",
    )
    parser.add_argument(
        "--eq2-mode", choices=("literal", "prose"), default="literal",
        help="smooth-channel reading (default literal)",
    )
    parser.add_argument("--trace", action="store_true", help="write per-input cycle trace JSON")
    parser.add_argument(
        "--ref", metavar="DIR", default=None,
        help="reference directory for full-reference metrics (report.csv)",
    )
    parser.add_argument("--timing", action="store_true", help="write per-input timing.csv")
    return parser


def _worker_count() -> int:
    env = os.environ.get("VPLUME_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"VPLUME_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise ValueError(f"VPLUME_THREADS must be at least 1, got {n}")
        return n
    return os.cpu_count() or 1


def _process_one(path: Path, manifest: RunManifest) -> dict:
    result = {"file": path.name, "ok": False}
    try:
        img = load_image(path)
        start = time.perf_counter()
        out_img, trace = enhance(img, manifest.config)
        result["seconds"] = time.perf_counter() - start
        result["cycles"] = trace.cycles
        result["width"] = img.shape[1]
        result["height"] = img.shape[0]

        out_path = manifest.output_dir / f"{path.stem}_vp{path.suffix}"
        save_image(out_img, out_path)
        result["out_path"] = out_path

        if manifest.emit_trace:
            trace_path = manifest.output_dir / f"{path.stem}_trace.json"
            trace_path.write_text(trace.to_json() + "\n")

        if manifest.reference_dir is not None:
            ref_path = manifest.reference_dir / path.name
            if ref_path.is_file():
                reference = load_image(ref_path)
                result["report"] = metrics.full_report(
                    out_img, reference, manifest.config.tau_policy
                )
        result["ok"] = True
    except Exception as exc:
        result["error"] = f"{type(exc).__name__}: {exc}"
    return result


def run(manifest: RunManifest) -> int:
    """Enhance every input in the manifest; returns the exit status."""
    if not manifest.inputs:
        print("vplume: no inputs matched", file=sys.stderr)
        return EXIT_USAGE
    manifest.output_dir.mkdir(parents=True, exist_ok=True)
    if not os.access(manifest.output_dir, os.W_OK):
        print(f"vplume: output directory {manifest.output_dir} is not writable", file=sys.stderr)
        return EXIT_USAGE

    paths = [Path(p) for p in manifest.inputs]
    if manifest.workers > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=manifest.workers) as pool:
            results = list(pool.map(lambda p: _process_one(p, manifest), paths))
    else:
        results = [_process_one(p, manifest) for p in paths]

    failed = 0
    for res in results:
        if not res["ok"]:
            failed += 1
            print(f"vplume: {res['file']}: {res['error']}", file=sys.stderr)

    if manifest.reference_dir is not None:
        with open(manifest.output_dir / "report.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(metrics.CSV_COLUMNS)
            for res in results:
                if res.get("report") is not None:
                    writer.writerow(res["report"].to_csv_row(res["file"]))

    if manifest.timing:
        with open(manifest.output_dir / "timing.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["file", "width", "height", "cycles", "seconds"])
            for res in results:
                if res["ok"]:
                    writer.writerow(
                        [res["file"], res["width"], res["height"], res["cycles"],
                         f"{res['seconds']:.6f}"]
                    )

    return EXIT_PARTIAL if failed else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    inputs = []
    for pattern in args.input:
        inputs.extend(sorted(glob.glob(pattern)))
    if not inputs:
        print("vplume: no inputs matched", file=sys.stderr)
        return EXIT_USAGE

    try:
        config = EnhanceConfig(
            kernel=args.kernel,
            k_max=args.k_max,
            tau_policy=args.tau,
            force_k=args.force_cycles,
            eq2_mode=args.eq2_mode,
        )
        workers = _worker_count()
    except ValueError as exc:
        print(f"vplume: {exc}", file=sys.stderr)
        return EXIT_USAGE

    manifest = RunManifest(
        inputs=inputs,
        output_dir=Path(args.out),
        config=config,
        emit_trace=args.trace,
        reference_dir=Path(args.ref) if args.ref else None,
        timing=args.timing,
        workers=workers,
    )
    return run(manifest)


if __name__ == "__main__":
    sys.exit(main())
