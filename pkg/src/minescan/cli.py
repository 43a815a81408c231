"""Command-line interface.

Subcommands: filter, segment, train, classify, synth, gradcheck.
Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys

import numpy as np

from . import pipeline, scenes
from .config import Config, ConfigError, load_config, render_config
from .filters import filter_rgb
from .mlp import (ModelFormatError, Sample, gradient_check, init_network,
                  load_model, save_model, train)
from .raster import RasterError, load_ppm, save_ppm
from .roi import BlankImageError, crop, find_roi, scale_to_64
from .segment import extract_objects, kmeans_segment, label_palette

__all__ = ["main"]


class CliError(Exception):
    """Runtime failure with a user-facing message (exit code 1)."""


def _load_cfg(args, **overrides) -> Config:
    return load_config(getattr(args, "config", None), overrides or None)


def cmd_filter(args) -> int:
    cfg = _load_cfg(args)
    kind = args.kind or cfg.filter_kind
    image = load_ppm(args.infile)
    save_ppm(filter_rgb(image, kind), args.outfile)
    return 0


def cmd_segment(args) -> int:
    cfg = _load_cfg(args)
    threshold = cfg.threshold if args.threshold is None else args.threshold
    image = load_ppm(args.infile)
    filtered = filter_rgb(image, args.kind or cfg.filter_kind)
    result = kmeans_segment(filtered, threshold, cfg.max_iter,
                            cfg.spatial_weight, cfg.max_k)
    os.makedirs(args.out_dir, exist_ok=True)
    objects = extract_objects(filtered, result)
    for j, obj in enumerate(objects):
        save_ppm(obj, os.path.join(args.out_dir, f"object_{j:02d}.ppm"))
        if args.crop:
            try:
                tile = scale_to_64(crop(obj, find_roi(obj, cfg.blank_level)))
            except BlankImageError:
                continue
            save_ppm(tile, os.path.join(args.out_dir, f"object_{j:02d}_roi.ppm"))
    palette = label_palette(result.k)
    save_ppm(palette[result.labels], os.path.join(args.out_dir, "labels.ppm"))
    print(f"clusters: {result.k}  iterations: {result.iterations}  "
          f"converged: {result.converged}")
    return 0


def _read_manifest(path):
    """(image path, class name) pairs; paths resolve against the manifest."""
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.rstrip("\n")
                if not line.strip():
                    continue
                if "\t" not in line:
                    raise CliError(f"{path}:{lineno}: expected <path>\\t<class>")
                rel, name = line.split("\t", 1)
                entries.append((os.path.join(base, rel), name.strip()))
    except OSError as exc:
        raise CliError(f"cannot read manifest: {exc}") from exc
    if not entries:
        raise CliError(f"manifest {path} is empty")
    return entries


def cmd_train(args) -> int:
    overrides = {}
    if args.max_epochs is not None:
        overrides["max_epochs"] = args.max_epochs
    if args.seed is not None:
        overrides["rng_seed"] = args.seed
    cfg = _load_cfg(args, **overrides)

    entries = _read_manifest(args.manifest)
    class_names = []
    labeled = []
    for path, name in entries:
        if name not in class_names:
            class_names.append(name)
        try:
            image = load_ppm(path)
        except RasterError as exc:
            raise CliError(f"{path}: {exc}") from exc
        labeled.append((image, class_names.index(name), path))

    samples = pipeline.build_training_set(
        labeled, cfg.filter_kind, cfg.seg_params(), cfg.feature_params(),
        cfg.blank_level, n_classes=len(class_names))

    sizes = [len(samples[0].input), *cfg.hidden_sizes, len(class_names)]
    net = init_network(sizes, cfg.slope, cfg.rng_seed)
    report = train(net, samples, cfg.train_params())

    save_model(net, args.model)
    with open(args.model + ".classes", "w") as fh:
        fh.write("\n".join(class_names) + "\n")
    curve = args.curve or args.model + ".csv"
    with open(curve, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "mse"])
        for epoch, mse in enumerate(report.mse_history, 1):
            writer.writerow([epoch, repr(mse)])

    print(f"outcome: {report.outcome}")
    print(f"epochs: {report.epochs_run}")
    print(f"final_mse: {report.mse_history[-1]!r}")
    return 0


def _class_names_for(model_path):
    sidecar = model_path + ".classes"
    if os.path.exists(sidecar):
        with open(sidecar) as fh:
            return [line.strip() for line in fh if line.strip()]
    return None


def cmd_classify(args) -> int:
    cfg = _load_cfg(args)
    try:
        net = load_model(args.model)
    except (OSError, ModelFormatError) as exc:
        raise CliError(f"cannot load model {args.model}: {exc}") from exc
    image = load_ppm(args.infile)
    detections = pipeline.classify_scene(
        net, image, cfg.filter_kind, cfg.seg_params(), cfg.feature_params(),
        cfg.blank_level)
    report = pipeline.format_report(detections, _class_names_for(args.model))
    sys.stdout.write(report)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report)
    if args.annotated:
        save_ppm(pipeline.annotate(image, detections), args.annotated)
    return 0


def _scene_from_json(data: dict) -> tuple:
    def rgb(v):
        return tuple(int(c) for c in v)

    objects = []
    for o in data.get("objects", []):
        objects.append(scenes.SceneObject(
            class_index=int(o.get("class", 0)),
            shape=o["shape"],
            cx=float(o["cx"]), cy=float(o["cy"]),
            radius=float(o["radius"]),
            body_rgb=rgb(o["body"]),
            mark_rgb=rgb(o["mark"]) if "mark" in o else None,
            mark_pitch=float(o.get("pitch", 8.0)),
            mark_width=float(o.get("mark_width", 3.2)),
            rotation=float(o.get("rotation", 0.0)),
        ))
    occluder = None
    if "occluder" in data:
        oc = data["occluder"]
        occluder = scenes.Occluder(int(oc["object"]), float(oc["fraction"]),
                                   rgb(oc.get("rgb", (30, 30, 30))))
    spec = scenes.SceneSpec(int(data["width"]), int(data["height"]),
                            tuple(objects), int(data.get("noise", 0)), occluder)
    return spec, int(data.get("seed", 0))


def cmd_synth(args) -> int:
    if args.suite:
        if args.suite != "paper":
            raise CliError(f"unknown suite {args.suite!r}")
        out = args.out_dir
        os.makedirs(out, exist_ok=True)
        train_specs, eval_specs = scenes.paper_suite_specs()
        manifest_lines = []
        for name, spec, seed, class_name in train_specs:
            render = scenes.gen_synthetic_scene(spec, seed)
            save_ppm(render.image, os.path.join(out, name + ".ppm"))
            manifest_lines.append(f"{name}.ppm\t{class_name}")
        with open(os.path.join(out, "manifest.tsv"), "w") as fh:
            fh.write("\n".join(manifest_lines) + "\n")
        for name, spec, seed in eval_specs:
            render = scenes.gen_synthetic_scene(spec, seed)
            save_ppm(render.image, os.path.join(out, name + ".ppm"))
            scenes.write_truth(os.path.join(out, name + ".truth.txt"), render)
        cfg = dataclasses.replace(Config(), **scenes.paper_suite_config())
        with open(os.path.join(out, "suite.cfg"), "w") as fh:
            fh.write(render_config(cfg))
        print(f"suite written to {out}")
        return 0

    with open(args.spec) as fh:
        spec, seed = _scene_from_json(json.load(fh))
    render = scenes.gen_synthetic_scene(spec, seed if args.seed is None else args.seed)
    save_ppm(render.image, args.outfile)
    if args.truth:
        scenes.write_truth(args.truth, render)
    return 0


def cmd_gradcheck(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for i in range(args.nets):
        net = init_network([8, 5, 3], slope=float(rng.uniform(0.5, 2.0)),
                           rng_seed=int(rng.integers(1 << 31)))
        for w in net.weights:  # spread weights beyond the tiny init range
            w += rng.uniform(-1.0, 1.0, size=w.shape)
        vec = rng.uniform(0.0, 1.0, size=8)
        desired = np.zeros(3)
        desired[int(rng.integers(3))] = 1.0
        worst = max(worst, gradient_check(net, Sample(vec, desired), args.eps))
    print(f"max relative error over {args.nets} nets: {worst:.3e}")
    return 0 if worst < 1e-4 else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minescan",
        description="Object recognition pipeline: filtering, segmentation, "
                    "HSI features, MLP classification.")
    parser.add_argument("--config", help="config file (default: $MINESCAN_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filter", help="noise-filter a PPM image")
    p.add_argument("--kind", choices=["mean", "median", "gaussian"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.set_defaults(fn=cmd_filter)

    p = sub.add_parser("segment", help="segment a scene into object images")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threshold", type=float)
    p.add_argument("--kind", choices=["none", "mean", "median", "gaussian"],
                   help="pre-filter (default from config)")
    p.add_argument("--crop", action="store_true",
                   help="also write cropped 64x64 object tiles")
    p.set_defaults(fn=cmd_segment)

    p = sub.add_parser("train", help="train a classifier from a manifest")
    p.add_argument("--manifest", required=True,
                   help="lines of <image path>\\t<class name>")
    p.add_argument("--model", required=True, help="checkpoint output path")
    p.add_argument("--curve", help="MSE history CSV (default <model>.csv)")
    p.add_argument("--max-epochs", type=int, dest="max_epochs")
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_train)

    p = sub.add_parser("classify", help="detect and classify scene objects")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--annotated", help="write annotated scene PPM here")
    p.add_argument("--report", help="write the detection report here too")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("synth", help="render synthetic scenes")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--suite", choices=["paper"],
                       help="write the standard train/eval scene suite")
    group.add_argument("--spec", help="JSON scene description")
    p.add_argument("--out-dir", help="output directory (with --suite)")
    p.add_argument("--out", dest="outfile", help="output PPM (with --spec)")
    p.add_argument("--truth", help="ground-truth sidecar (with --spec)")
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("gradcheck", help="verify gradients against finite differences")
    p.add_argument("--nets", type=int, default=20)
    p.add_argument("--eps", type=float, default=1e-5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_gradcheck)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "synth":
        if args.suite and not args.out_dir:
            parser.error("--suite requires --out-dir")
        if args.spec and not args.outfile:
            parser.error("--spec requires --out")
    try:
        return args.fn(args)
    except (CliError, ConfigError, RasterError, ModelFormatError,
            pipeline.PipelineError, scenes.SceneSpecError, BlankImageError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
