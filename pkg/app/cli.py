"""
Command-line driver

    hmrf-segment FRAMES --mode segment --method 2 --out out/
    hmrf-segment --mode fixture --seed 7 --out fixtures/
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

import structlog

from app.config import PipelineSettings, load_settings
from app.core.exceptions import (
    EXIT_CONFIG_ERROR,
    EXIT_IO_ERROR,
    EXIT_OK,
    ConfigurationException,
    HmrfException,
)
from app.services.benchmark_service import BenchmarkService
from app.services.classification_service import ClassificationService
from app.services.estimation_service import EstimationService
from app.services.segmentation_service import SegmentationService
from fixtures.scenes import generate_fixtures
from monitoring.logging import configure_logging
from monitoring.metrics import StageMetrics

logger = structlog.get_logger()

MODES = ("segment", "classify", "estimate", "bench", "fixture")

# flag dest -> settings field
FLAG_FIELDS = {
    "method": "method",
    "beta1": "beta_layer1",
    "beta2": "beta_layer2",
    "iters": "iterations",
    "k": "k",
    "beta_u": "beta_u",
    "alpha_s": "alpha_s",
    "alpha_l": "alpha_l",
    "open_radius": "open_radius",
    "stride": "stride",
    "seed": "seed",
    "threads": "threads",
    "out": "out",
    "log_level": "log_level",
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hmrf-segment",
        description="Hierarchical MRF segmentation and classification of image sequences",
    )
    ap.add_argument("input", nargs="?", help="frame directory, glob pattern or single image")
    ap.add_argument("--mode", choices=MODES, default="segment")
    ap.add_argument("--config", type=Path, help="flat key = value settings file")

    ap.add_argument("--method", type=int, choices=(1, 2))
    ap.add_argument("--beta1", type=float, help="layer-1 smoothness weight")
    ap.add_argument("--beta2", type=float, help="layer-2 smoothness weight")
    ap.add_argument("--iters", type=int, help="ICM sweeps per layer")
    ap.add_argument("--k", type=int, help="neighbors per segment in the graph layer")
    ap.add_argument("--beta-u", dest="beta_u", type=float, help="graph-layer prior weight")
    ap.add_argument("--alpha-s", dest="alpha_s", help="saturation threshold, 0..255 or auto")
    ap.add_argument("--alpha-l", dest="alpha_l", help="luminance threshold, 0..255 or auto")
    ap.add_argument("--open-radius", dest="open_radius", type=int)
    ap.add_argument("--stride", type=int, help="process every n-th frame")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--threads", type=int)
    ap.add_argument("--out", type=Path)

    ap.add_argument("--model", type=Path, help="class model file; written after training if absent")
    ap.add_argument("--train-manifest", dest="train_manifest", type=Path,
                    help="CSV of image, segment_id, label")
    ap.add_argument("--truth", type=Path, help="directory of truth masks named like the frames")
    ap.add_argument("--dump-graph", dest="dump_graph", action="store_true")
    ap.add_argument("--no-noise", dest="no_noise", action="store_true",
                    help="fixture mode: render the scene without noise")
    ap.add_argument("--repeat", type=int, default=1, help="bench mode: passes over the frames")
    ap.add_argument("--log-level", dest="log_level", choices=("debug", "info", "warning", "error"))
    ap.add_argument("--log-json", dest="log_json", action="store_true", default=None)
    return ap


def settings_from_args(args: argparse.Namespace) -> PipelineSettings:
    overrides = {field: getattr(args, dest) for dest, field in FLAG_FIELDS.items()}
    overrides["log_json"] = args.log_json
    return load_settings(args.config, **overrides)


def _require_input(args: argparse.Namespace) -> Path:
    if not args.input:
        raise ConfigurationException(f"mode {args.mode} needs an input")
    return Path(args.input)


def dispatch(args: argparse.Namespace, settings: PipelineSettings) -> int:
    if args.mode == "fixture":
        files = generate_fixtures(settings.out, seed=settings.seed, noise=not args.no_noise)
        logger.info("Run summary", mode="fixture", files=len(files))
        return EXIT_OK

    source = _require_input(args)
    metrics = StageMetrics()

    if args.mode in ("segment", "classify"):
        model = None
        if args.mode == "classify":
            model = ClassificationService(settings).resolve_model(args.model, args.train_manifest)
        service = SegmentationService(settings, metrics, model=model, dump_graph=args.dump_graph)
        summary = service.run(source)
        logger.info("Run summary", mode=args.mode, frames_ok=summary.frames_ok,
                    frames_failed=summary.frames_failed, segments=summary.segments,
                    **metrics.get_metrics_summary())
        return EXIT_OK

    if args.mode == "estimate":
        if args.truth is None:
            raise ConfigurationException("estimate mode needs --truth")
        service = EstimationService(settings)
        estimate, sweep = service.run(source, args.truth)
        service.write(estimate, sweep, settings.out)
        print(f"beta_star={estimate.beta_star}")
        print(estimate.best_frame().to_string(index=False))
        return EXIT_OK

    bench = BenchmarkService(settings, metrics)
    report = bench.run(source, repeat=args.repeat)
    bench.write(report, settings.out)
    print(f"method={report['method']} fps={report['fps']:.2f} reference_fps={report['reference_fps']:.1f}")
    print(report["stages"].to_string(index=False, float_format=lambda v: f"{v:.3f}"))
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """Parse flags, run the selected mode and return the exit status"""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or "info", json=bool(args.log_json))
    try:
        settings = settings_from_args(args)
        configure_logging(settings.log_level, json=settings.log_json)
        return dispatch(args, settings)
    except HmrfException as e:
        logger.error("Run failed", error=e.message, exit_code=e.exit_code)
        return e.exit_code
    except OSError as e:
        logger.error("Run failed", error=str(e), exit_code=EXIT_IO_ERROR)
        return EXIT_IO_ERROR
    except ValueError as e:
        logger.error("Run failed", error=str(e), exit_code=EXIT_CONFIG_ERROR)
        return EXIT_CONFIG_ERROR


def main() -> None:
    sys.exit(run())
