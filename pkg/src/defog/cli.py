"""Command-line interface: ``defog dehaze | fogsim | bench``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .airlight import Airlight
from .darkchannel import normalized_dark_channel
from .fogsim import FogScene, constant_depth, synthesize
from .imagecore import ImageIOError, load_image, load_scalar_map, save_image, save_scalar_map
from .metrics import bench_pipeline, reports_to_csv, reports_to_table
from .pipeline import dehaze
from .transmittance import UNIFORM_BETAS, BetaRatios, DehazeParams

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NOT_CONVERGED = 0, 1, 2, 3

log = logging.getLogger("defog")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _triple(text: str) -> tuple[float, float, float]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return parts


def _param_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("dehazing parameters")
    g.add_argument("--omega", type=float, default=0.95, help="fog retention factor (default 0.95)")
    g.add_argument("--window", type=int, default=5, help="dark-channel window size, odd (default 5)")
    g.add_argument("--downsample", type=int, default=4, help="matting down-sampling factor (default 4)")
    g.add_argument("--lambda", dest="lam", type=float, default=1e-4, help="data-term weight (default 1e-4)")
    g.add_argument("--eps", type=float, default=1e-7, help="matting regulariser (default 1e-7)")
    g.add_argument("--t0", type=float, default=0.1, help="transmittance floor (default 0.1)")
    g.add_argument("--betas", type=_triple, default=(1.0, 1.28, 1.61),
                   help="R,G,B attenuation ratios (default 1,1.28,1.61)")
    g.add_argument("--cg-tol", type=float, default=1e-6)
    g.add_argument("--cg-maxiter", type=int, default=2000)
    g.add_argument("--mode", choices=("improved", "he"), default="improved",
                   help="'he' forces betas 1,1,1 and no down-sampling")
    g.add_argument("--attribution", choices=("window", "center"), default="window",
                   help="how the dark channel label is assigned per pixel")
    return p


def params_from_args(args) -> DehazeParams:
    if args.window < 1 or args.window % 2 == 0:
        raise UsageError(f"--window must be a positive odd integer, got {args.window}")
    betas = UNIFORM_BETAS if args.mode == "he" else BetaRatios(*args.betas)
    factor = 1 if args.mode == "he" else args.downsample
    try:
        return DehazeParams(
            omega=args.omega, window_radius=args.window // 2, lam=args.lam, eps=args.eps,
            t0=args.t0, betas=betas, downsample_factor=factor, cg_tol=args.cg_tol,
            cg_maxiter=args.cg_maxiter, attribution=args.attribution,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _airlight_arg(values) -> Airlight | None:
    if values is None:
        return None
    try:
        return Airlight(*values).validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("DEFOG_THREADS", "1")))
    except ValueError:
        return 1


def _channel_label_image(channel: np.ndarray) -> np.ndarray:
    return np.eye(3)[channel]


def _dehaze_one(src: Path, dst: Path, params: DehazeParams, airlight, args) -> bool:
    img = load_image(src)
    result = dehaze(img, params, airlight)
    save_image(result.image, dst)
    stem = src.stem
    if args.dump_t:
        out = Path(args.dump_t)
        out.mkdir(parents=True, exist_ok=True)
        save_scalar_map(result.t_d, out / f"{stem}_t_d.png")
        for name, t in zip("rgb", result.transmittances):
            save_scalar_map(t, out / f"{stem}_t_{name}.png")
    if args.dump_dark:
        out = Path(args.dump_dark)
        out.mkdir(parents=True, exist_ok=True)
        save_scalar_map(result.dark.values, out / f"{stem}_dark.png")
        save_image(_channel_label_image(result.dark.channel), out / f"{stem}_dark_channel.png")
        norm = normalized_dark_channel(img, result.airlight, params.window_radius, params.attribution)
        save_scalar_map(np.clip(norm.values, 0, 1), out / f"{stem}_dark_norm.png")
        save_image(_channel_label_image(result.channel), out / f"{stem}_d.png")
    log.info("%s -> %s (A=%.3f,%.3f,%.3f; %d CG iterations)", src, dst,
             *result.airlight, result.report.iterations)
    return result.report.converged


def cmd_dehaze(args) -> int:
    params = params_from_args(args)
    airlight = _airlight_arg(args.airlight)
    inputs = [Path(p) for p in args.inputs]
    if len(inputs) == 1 and not (args.output and Path(args.output).is_dir()):
        src = inputs[0]
        jobs = [(src, Path(args.output) if args.output else src.with_name(f"{src.stem}_dehazed{src.suffix}"))]
    else:
        if not args.output:
            raise UsageError("-o must name an output directory when several inputs are given")
        outdir = Path(args.output)
        outdir.mkdir(parents=True, exist_ok=True)
        jobs = [(src, outdir / src.name) for src in inputs]
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        converged = list(pool.map(lambda job: _dehaze_one(*job, params, airlight, args), jobs))
    if args.strict and not all(converged):
        log.error("matting solver did not converge")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _depth_arg(spec: str, shape: tuple[int, int], scale: float) -> np.ndarray:
    if spec.startswith("const:"):
        try:
            value = float(spec[len("const:"):])
        except ValueError:
            raise UsageError(f"bad constant depth {spec!r}") from None
        return constant_depth(shape, value * scale)
    depth = load_scalar_map(spec) * scale
    if depth.shape != shape:
        raise UsageError(f"depth map {depth.shape[::-1]} does not match image {shape[::-1]}")
    return depth


def cmd_fogsim(args) -> int:
    radiance = load_image(args.input)
    depth = _depth_arg(args.depth, radiance.shape[:2], args.depth_scale)
    try:
        scene = FogScene(radiance, depth, Airlight(*args.airlight), BetaRatios(*args.betas))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    save_image(synthesize(scene), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    params = params_from_args(args)
    reports = []
    for path in args.inputs:
        img = load_image(path)
        reports.append(bench_pipeline(img, params, args.repeats, name=Path(path).stem))
    print(reports_to_table(reports))
    if args.csv:
        try:
            Path(args.csv).write_text(reports_to_csv(reports))
        except OSError as exc:
            raise ImageIOError(f"cannot write {args.csv}: {exc}") from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="defog", description="Single-image dehazing with per-channel transmittance.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    params = _param_parser()

    p = sub.add_parser("dehaze", parents=[params], help="remove haze from one or more images")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-o", "--output", help="output file, or directory for several inputs")
    p.add_argument("--airlight", type=_triple, help="override atmospheric light r,g,b")
    p.add_argument("--dump-t", metavar="DIR", help="write t_d and per-channel maps to DIR")
    p.add_argument("--dump-dark", metavar="DIR", help="write dark-channel values and labels to DIR")
    p.add_argument("--strict", action="store_true", help="exit 3 if the matting solve does not converge")
    p.set_defaults(func=cmd_dehaze)

    p = sub.add_parser("fogsim", help="add synthetic haze to a clear image")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--depth", default="const:1", help="depth map image or const:<value>")
    p.add_argument("--depth-scale", type=float, default=1.0, help="multiplier applied to depth")
    p.add_argument("--betas", type=_triple, default=(0.5, 0.64, 0.805),
                   help="absolute R,G,B attenuation coefficients")
    p.add_argument("--airlight", type=_triple, default=(1.0, 1.0, 1.0))
    p.set_defaults(func=cmd_fogsim)

    p = sub.add_parser("bench", parents=[params], help="time full-resolution vs down-sampled matting")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--csv", help="write the report as CSV")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"defog: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ImageIOError, OSError) as exc:
        print(f"defog: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"defog: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
