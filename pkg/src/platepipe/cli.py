"""Command line interface.

    platepipe detect <input> [--config PATH] [--dump-stages DIR] [--out PATH]
    platepipe sweep <input> --param KEY --values V1,V2,... [--config PATH]
    platepipe synth --seed N --out PATH [--distractors K] [--size WxH]

Standard output carries machine-readable data only (detect: a JSON
report; sweep: a TSV table); diagnostics go to stderr. Exit codes:
0 success / plate found, 2 pipeline ran but found no plate, 1 error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import PipelineConfig, parse_config, parse_param_value
from .errors import ConfigError
from .pipeline import report_json, run_pipeline, sweep, sweep_tsv
from .platefilter import extract_plate
from .raster import load_image, save_rgb
from .synth import random_scene_spec, synth_scene

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_PLATE = 2


def _load_config(path: str | None) -> PipelineConfig:
    return parse_config(path) if path else PipelineConfig()


def _cmd_detect(args: argparse.Namespace) -> int:
    image = load_image(args.input)
    config = _load_config(args.config)
    report = run_pipeline(image, config, dump_dir=args.dump_stages)
    print(report_json(report))
    if report.winner is None:
        print(f"{args.input}: no plate found", file=sys.stderr)
        return EXIT_NO_PLATE
    out = Path(args.out) if args.out else Path(str(args.input) + ".plate.ppm")
    save_rgb(extract_plate(image, report.winner, config.extract_margin), out)
    bbox = report.winner.bbox
    print(
        f"{args.input}: plate at ({bbox.x}, {bbox.y}) size {bbox.w}x{bbox.h} -> {out}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    image = load_image(args.input)
    config = _load_config(args.config)
    raw_values = [v for v in args.values.split(",") if v.strip()]
    values = [parse_param_value(args.param, v.strip()) for v in raw_values]
    rows = sweep(image, config, args.param, values)
    sys.stdout.write(sweep_tsv(args.param, rows))
    return EXIT_OK


def _parse_size(raw: str) -> tuple[int, int]:
    try:
        w_str, h_str = raw.lower().split("x")
        return int(w_str), int(h_str)
    except ValueError:
        raise ConfigError(f"expected WxH (e.g. 640x480), got {raw!r}") from None


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = random_scene_spec(
        args.seed, image_size=_parse_size(args.size), distractors=args.distractors
    )
    image, truth = synth_scene(spec)
    save_rgb(image, args.out)
    truth_path = Path(str(args.out) + ".truth")
    truth_path.write_text(f"{truth.x} {truth.y} {truth.w} {truth.h}\n", encoding="ascii")
    print(f"wrote {args.out} and {truth_path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="platepipe", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="locate and extract the plate from an image")
    detect.add_argument("input", help="input image (PNG, PPM P6, or PGM P5)")
    detect.add_argument("--config", help="pipeline config file (key=value lines)")
    detect.add_argument("--dump-stages", metavar="DIR", help="write per-stage artifacts here")
    detect.add_argument("--out", help="plate crop destination (default <input>.plate.ppm)")
    detect.set_defaults(func=_cmd_detect)

    sweep_cmd = sub.add_parser("sweep", help="re-run the pipeline over parameter values")
    sweep_cmd.add_argument("input")
    sweep_cmd.add_argument("--param", required=True, help="dotted numeric config key")
    sweep_cmd.add_argument("--values", required=True, help="comma-separated values")
    sweep_cmd.add_argument("--config", help="base config file")
    sweep_cmd.set_defaults(func=_cmd_sweep)

    synth = sub.add_parser("synth", help="generate a synthetic scene with ground truth")
    synth.add_argument("--seed", type=int, required=True)
    synth.add_argument("--out", required=True, help="scene destination (PPM)")
    synth.add_argument("--distractors", type=int, default=2)
    synth.add_argument("--size", default="640x480", help="scene size WxH")
    synth.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
