"""Command line front end: ``posterize --input in.ppm --output out.ppm``."""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from tritone.config import bilateral_from_values, load_params_file, membership_from_values
from tritone.effects import Effect, EffectKind
from tritone.image import read_image, write_image
from tritone.pipeline import PipelineConfig, count_distinct_colors, posterize

__all__ = ["run_cli", "main"]

DEFAULT_BLEND_ALPHA = 0.5


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posterize",
        description="Posterize an image to three tones per channel, with optional "
        "edge-preserving pre-smoothing and post effects.",
    )
    parser.add_argument("--input", required=True, help="input image (.pgm/.ppm/.pnm, or .png)")
    parser.add_argument("--output", required=True, help="output image (.pgm/.ppm/.pnm, or .png)")
    parser.add_argument("--params", help="parameter file (flat 'key = value' lines)")
    parser.add_argument(
        "--effect",
        choices=[kind.value for kind in EffectKind],
        default=EffectKind.RAW.value,
        help="post effect combining input and quantized output (default: raw)",
    )
    parser.add_argument(
        "--alpha",
        type=float,
        default=None,
        help=f"blend weight of the quantized output, in [0, 1] "
        f"(default: {DEFAULT_BLEND_ALPHA}; only used by --effect blend)",
    )
    parser.add_argument("--sigma-spatial", type=float, default=None, help="spatial Gaussian width")
    parser.add_argument("--sigma-range", type=float, default=None, help="intensity Gaussian width")
    parser.add_argument("--radius", type=int, default=None, help="smoothing window radius")
    parser.add_argument("--no-blur", action="store_true", help="skip the pre-smoothing stage")
    parser.add_argument("--threads", type=int, default=0, help="worker threads (0 = auto)")
    parser.add_argument(
        "--report-colors", action="store_true", help="print 'distinct_colors=N' for the output"
    )
    parser.add_argument("--time", action="store_true", help="print 'elapsed_ms=N' for the run")
    return parser


def _fail(message: str) -> int:
    print(f"posterize: {message}", file=sys.stderr)
    return 2


def _config_from_args(args: argparse.Namespace) -> PipelineConfig:
    values: dict[str, float | int] = {}
    if args.params:
        values.update(load_params_file(args.params))
    if args.sigma_spatial is not None:
        values["sigma_spatial"] = args.sigma_spatial
    if args.sigma_range is not None:
        values["sigma_range"] = args.sigma_range
    if args.radius is not None:
        values["radius"] = args.radius

    alpha = DEFAULT_BLEND_ALPHA if args.alpha is None else args.alpha
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if args.threads < 0:
        raise ValueError(f"threads must be >= 0, got {args.threads}")

    return PipelineConfig(
        bilateral=bilateral_from_values(values),
        membership=membership_from_values(values),
        effect=Effect(EffectKind(args.effect), alpha=alpha),
        skip_blur=args.no_blur,
        threads=args.threads,
    )


def run_cli(argv: Sequence[str] | None = None) -> int:
    """Parse flags, run the pipeline, write the output. Returns exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 1)

    try:
        cfg = _config_from_args(args)
    except (OSError, ValueError) as exc:
        return _fail(str(exc))

    try:
        img = read_image(args.input)
    except (OSError, ValueError, RuntimeError) as exc:
        return _fail(f"cannot read input: {exc}")

    start = time.perf_counter()
    result = posterize(img, cfg)
    elapsed_ms = int(round((time.perf_counter() - start) * 1000.0))

    try:
        write_image(args.output, result)
    except (OSError, ValueError, RuntimeError) as exc:
        return _fail(f"cannot write output: {exc}")

    if args.report_colors:
        print(f"distinct_colors={count_distinct_colors(result)}")
    if args.time:
        print(f"elapsed_ms={elapsed_ms}")
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
