"""Command-line interface.

Subcommands: build, mask, align, eval, classify, synth, benchmark.
Exit codes: 0 on success, 1 on computational failure, 2 on invalid input
or schema violations.  All outputs are written atomically and contain no
timestamps, so a rerun with identical inputs is byte-identical.  Commands
that produce reports also render a PNG figure next to the delimited output
unless --no-figures is given.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import os
import re
import sys

import numpy as np

from . import bench, formats, plots
from .align import AlignmentConfig, align, cost_matrix
from .errors import FormatError, InputError, LengthMismatch, VidalignError
from .features import Box
from .mask import gaussian_mask
from .metrics import (EvalReport, correct_phase_rate, cross_validate,
                      enclosed_area_error, ground_truth_path)
from .rng import SplitMix64, derive_seed
from .series import build_series
from .synth import SynthSpec, add_wait_phase, generate_pair


def _margin_arg(text: str):
    if text == "auto":
        return None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"margin must be 'auto' or a number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"margin must be >= 0, got {value}")
    return value


def _safe_name(video_id: str) -> str:
    return re.sub(r"[^-._a-zA-Z0-9]", "_", video_id) or "_"


def _write_lines(path, lines):
    formats.atomic_write_text(path, "\n".join(lines) + "\n")


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, columns, rows):
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in columns))
    _write_lines(path, lines)


def _figure_path(out_path: str) -> str:
    return os.path.splitext(out_path)[0] + ".png"


# ---------------------------------------------------------------- build

def _build_one(entry, out_dir, fmt, window):
    track = formats.read_track(entry["trackPath"])
    global_feats, _ = formats.read_matrix(entry["globalPath"])
    series = build_series(track, global_feats, entry["videoId"], window)
    ext = "bin" if fmt == "bin" else "csv"
    out = os.path.join(out_dir, f"{_safe_name(entry['videoId'])}.series.{ext}")
    formats.write_series(out, series, fmt)
    return (f"{entry['videoId']}: frames={track.n_frames} "
            f"missing_boxes={track.missing_boxes} "
            f"missing_poses={track.missing_poses} -> {os.path.basename(out)}")


def cmd_build(args) -> int:
    entries = formats.read_manifest(args.manifest)
    names = [_safe_name(e["videoId"]) for e in entries]
    if len(set(names)) != len(names):
        raise InputError("video ids collide after filename sanitization")
    os.makedirs(args.out_dir, exist_ok=True)
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            lines = list(pool.map(_build_one, entries,
                                  [args.out_dir] * len(entries),
                                  [args.format] * len(entries),
                                  [args.window] * len(entries)))
    else:
        lines = [_build_one(e, args.out_dir, args.format, args.window)
                 for e in entries]
    for line in lines:
        print(line)
    _write_lines(os.path.join(args.out_dir, "build.log"), lines)
    return 0


# ---------------------------------------------------------------- mask

def cmd_mask(args) -> int:
    try:
        w, h = (int(v) for v in args.frame_size.lower().split("x"))
        cx, cy, bw, bh = (float(v) for v in args.box.split(","))
    except ValueError:
        raise InputError("expected --frame-size WxH and --box cx,cy,w,h") from None
    result = gaussian_mask(w, h, Box(cx, cy, bw, bh), margin_px=args.margin_px,
                           outside_drop=args.drop, normalized=not args.raw_offsets)
    if args.text:
        formats.write_mask_text(args.out, result.values)
    else:
        formats.write_mask(args.out, result.values)
    x0, y0, x1, y1 = result.mbox
    outside = "none" if result.outside_value is None else repr(result.outside_value)
    print(f"mask {h}x{w} mbox=({x0},{y0})..({x1},{y1}) outside={outside} "
          f"-> {args.out}")
    return 0


# ---------------------------------------------------------------- align

def _align_report(result, id_a, id_b) -> EvalReport:
    return EvalReport(config={
        "command": "align", "method": result.method,
        "margin": result.margin, "lambda": result.lam,
        "n": result.n, "k": result.k, "total_cost": result.total_cost,
        "video_a": id_a, "video_b": id_b,
    })


def _align_pair(series_a_path, series_b_path, config, out_path):
    a = formats.read_series(series_a_path)
    b = formats.read_series(series_b_path)
    result = align(a, b, config)
    formats.write_alignment(out_path, result)
    return a, b, result


def cmd_align(args) -> int:
    config = AlignmentConfig(args.method, args.margin, getattr(args, "lambda"))
    if args.batch:
        if not args.out_dir:
            raise InputError("--batch requires --out-dir")
        pairs = []
        for idx, raw in enumerate(formats.read_lines(args.batch), start=1):
            if not raw.strip() or raw.startswith("#"):
                continue
            parts = raw.split(",")
            if len(parts) != 2:
                raise FormatError(f"expected 'seriesA,seriesB', got {raw!r}",
                                  args.batch, idx)
            pairs.append((parts[0], parts[1]))
        if not pairs:
            raise InputError(f"{args.batch}: no pairs listed")
        os.makedirs(args.out_dir, exist_ok=True)
        rows = []
        for idx, (pa, pb) in enumerate(pairs):
            out = os.path.join(args.out_dir, f"pair{idx:04d}.path.txt")
            a, b, result = _align_pair(pa, pb, config, out)
            rows.append({
                "pair": idx, "video_a": a.video_id, "video_b": b.video_id,
                "method": result.method, "n": result.n, "k": result.k,
                "margin": "" if result.margin is None else result.margin,
                "lambda": "" if result.lam is None else result.lam,
                "total_cost": result.total_cost,
                "path_file": os.path.basename(out),
            })
        _write_csv(os.path.join(args.out_dir, "summary.csv"),
                   ["pair", "video_a", "video_b", "method", "n", "k",
                    "margin", "lambda", "total_cost", "path_file"], rows)
        print(f"aligned {len(rows)} pairs -> {args.out_dir}")
        return 0

    if not args.series or len(args.series) != 2:
        raise InputError("align needs exactly two series files (or --batch)")
    if not args.out:
        raise InputError("--out is required without --batch")
    a, b, result = _align_pair(args.series[0], args.series[1], config, args.out)
    report_path = args.report or os.path.splitext(args.out)[0] + ".report.json"
    formats.write_report(report_path, _align_report(result, a.video_id, b.video_id))
    if not args.no_figures:
        plots.save_alignment_figure(_figure_path(args.out),
                                    cost_matrix(a, b), result)
    print(f"{result.method} n={result.n} k={result.k} "
          f"total_cost={result.total_cost!r} -> {args.out}")
    return 0


# ---------------------------------------------------------------- eval

def cmd_eval(args) -> int:
    result = formats.read_alignment(args.alignment)
    annotations = formats.read_annotations(args.annotations)
    for vid in (args.video_a, args.video_b):
        if vid not in annotations:
            raise InputError(f"{args.annotations}: no annotation for {vid!r}")
    ann_a = annotations[args.video_a]
    ann_b = annotations[args.video_b]
    if ann_a.n_frames != result.n or ann_b.n_frames != result.k:
        raise LengthMismatch(
            f"alignment is {result.n}x{result.k} but annotations are "
            f"{ann_a.n_frames}x{ann_b.n_frames}")
    gt = ground_truth_path(ann_a, ann_b)
    eae = enclosed_area_error(result.path, gt, result.n, result.k)
    cpr = correct_phase_rate(result.path, ann_a, ann_b)
    report = EvalReport(eae=eae, correct_phase_rate=cpr, config={
        "command": "eval", "method": result.method, "margin": result.margin,
        "lambda": result.lam, "n": result.n, "k": result.k,
        "video_a": args.video_a, "video_b": args.video_b,
    })
    formats.write_report(args.out, report)
    if not args.no_figures:
        plots.save_eae_figure(_figure_path(args.out), result.path, gt,
                              result.n, result.k, eae)
    print(f"eae={eae!r} correct_phase_rate={cpr!r} -> {args.out}")
    return 0


# ---------------------------------------------------------------- classify

def cmd_classify(args) -> int:
    annotations = formats.read_annotations(args.annotations)
    dataset = []
    for series_path in args.series:
        series = formats.read_series(series_path)
        if series.video_id not in annotations:
            raise InputError(f"{args.annotations}: no annotation for "
                             f"{series.video_id!r} ({series_path})")
        dataset.append((series, annotations[series.video_id]))
    accuracy = cross_validate(dataset, folds=args.folds, k=args.k, seed=args.seed)
    report = EvalReport(classification_accuracy=accuracy, config={
        "command": "classify", "folds": args.folds, "k": args.k,
        "seed": args.seed, "videos": len(dataset),
    })
    formats.write_report(args.out, report)
    print(f"accuracy={accuracy!r} over {len(dataset)} videos -> {args.out}")
    return 0


# ---------------------------------------------------------------- synth

def cmd_synth(args) -> int:
    try:
        lo, hi = (int(v) for v in args.duration_range.split(","))
    except ValueError:
        raise InputError("expected --duration-range LO,HI") from None
    if lo < 1 or hi < lo:
        raise InputError(f"bad duration range [{lo}, {hi}]")
    os.makedirs(args.out_dir, exist_ok=True)
    ext = "bin" if args.format == "bin" else "csv"
    annotations = []
    log = []
    pair_rows = []
    for pair in range(args.pairs):
        pair_seed = derive_seed(args.seed, pair)
        rng = SplitMix64(pair_seed)
        dur_a = tuple(rng.randint(lo, hi) for _ in range(args.phases))
        dur_b = tuple(rng.randint(lo, hi) for _ in range(args.phases))
        spec = SynthSpec(args.phases, dur_a, dur_b, feature_dim=args.dim,
                         noise_std=args.noise, seed=derive_seed(pair_seed, 1))
        a, b, ann_a, ann_b, gt = generate_pair(
            spec, derive_seed(pair_seed, 2),
            video_id_a=f"pair{pair:04d}a", video_id_b=f"pair{pair:04d}b")
        if args.wait_phase:
            a, ann_a = add_wait_phase(a, ann_a, args.wait_strategy)
            gt = ground_truth_path(ann_a, ann_b)
        path_a = os.path.join(args.out_dir, f"pair{pair:04d}_a.series.{ext}")
        path_b = os.path.join(args.out_dir, f"pair{pair:04d}_b.series.{ext}")
        formats.write_series(path_a, a, args.format)
        formats.write_series(path_b, b, args.format)
        formats.write_anchors(os.path.join(args.out_dir, f"pair{pair:04d}_gt.json"),
                              gt, a.video_id, b.video_id)
        annotations.extend([ann_a, ann_b])
        pair_rows.append((os.path.basename(path_a), os.path.basename(path_b)))
        log.append(f"pair{pair:04d}: n={a.n_frames} k={b.n_frames} "
                   f"durations_a={list(dur_a)} durations_b={list(dur_b)}")
    formats.write_annotations(os.path.join(args.out_dir, "annotations.jsonl"),
                              annotations)
    _write_lines(os.path.join(args.out_dir, "pairs.csv"),
                 [f"{a},{b}" for a, b in pair_rows])
    _write_lines(os.path.join(args.out_dir, "synth.log"), log)
    for line in log:
        print(line)
    return 0


# ---------------------------------------------------------------- benchmark

def cmd_benchmark(args) -> int:
    suites = bench.SUITES if args.suite == "all" else (args.suite,)
    rows = []
    for suite in suites:
        if suite == "wait":
            rows.extend(bench.run_wait_suite(args.pairs, args.seed,
                                             args.margin, getattr(args, "lambda")))
        else:
            rows.extend(bench.run_corridor_suite(args.pairs, args.seed,
                                                 args.margin, getattr(args, "lambda")))
    summary = bench.summarize(rows)
    os.makedirs(args.out_dir, exist_ok=True)
    _write_csv(os.path.join(args.out_dir, "per_pair.csv"),
               ["suite", "pair", "method", "n", "k", "eae",
                "correct_phase_rate"], rows)
    _write_csv(os.path.join(args.out_dir, "summary.csv"),
               ["suite", "method", "pairs", "median_eae",
                "median_correct_phase_rate"], summary)
    log = [(f"{s['suite']}/{s['method']}: pairs={s['pairs']} "
            f"median_eae={s['median_eae']!r} "
            f"median_cpr={s['median_correct_phase_rate']!r}") for s in summary]
    _write_lines(os.path.join(args.out_dir, "benchmark.log"), log)
    if not args.no_figures:
        plots.save_benchmark_figure(os.path.join(args.out_dir, "benchmark.png"),
                                    rows)
    for line in log:
        print(line)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vidalign",
        description="Align action videos as multivariate time series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build per-video series from track and "
                                     "global-feature files")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--format", choices=("bin", "csv"), default="bin")
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("mask", help="emit a subject-centered Gaussian weight mask")
    p.add_argument("--frame-size", required=True, metavar="WxH")
    p.add_argument("--box", required=True, metavar="CX,CY,W,H")
    p.add_argument("--margin-px", type=float, default=20.0)
    p.add_argument("--drop", type=float, default=0.2)
    p.add_argument("--raw-offsets", action="store_true",
                   help="use raw pixel offsets instead of normalized ones")
    p.add_argument("--out", required=True)
    p.add_argument("--text", action="store_true", help="write the text format")
    p.set_defaults(func=cmd_mask)

    p = sub.add_parser("align", help="align two series files")
    p.add_argument("series", nargs="*", help="two series files")
    p.add_argument("--method", choices=("dtw", "ddtw", "trivial"), default="ddtw")
    p.add_argument("--margin", type=_margin_arg, default=None,
                   help="margin band width, or 'auto' (default)")
    p.add_argument("--lambda", type=float, default=1.0,
                   help="penalty rate beyond the margin")
    p.add_argument("--out", help="output path file")
    p.add_argument("--report", help="report JSON path (default: next to --out)")
    p.add_argument("--batch", help="CSV of seriesA,seriesB rows")
    p.add_argument("--out-dir", help="output directory for --batch")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("eval", help="score an alignment against annotations")
    p.add_argument("--alignment", required=True)
    p.add_argument("--annotations", required=True)
    p.add_argument("--video-a", required=True)
    p.add_argument("--video-b", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("classify", help="cross-validated phase classification")
    p.add_argument("series", nargs="+", help="series files")
    p.add_argument("--annotations", required=True)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("synth", help="generate synthetic labeled pairs")
    p.add_argument("--pairs", type=int, default=1)
    p.add_argument("--phases", type=int, default=3)
    p.add_argument("--duration-range", default="8,16", metavar="LO,HI")
    p.add_argument("--dim", type=int, default=166)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--wait-phase", action="store_true",
                   help="prepend an idle stretch to the first video of each pair")
    p.add_argument("--wait-strategy", choices=("cycle", "hold"), default="cycle")
    p.add_argument("--format", choices=("bin", "csv"), default="bin")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("benchmark", help="run synthetic method-comparison suites")
    p.add_argument("--suite", choices=("wait", "corridor", "all"), default="all")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--margin", type=_margin_arg, default=None)
    p.add_argument("--lambda", type=float, default=1.0)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_benchmark)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VidalignError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
