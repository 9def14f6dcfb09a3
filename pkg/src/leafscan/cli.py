# -*- coding: utf-8 -*-
import json
import logging
import re
import click

from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional
from joblib import Parallel, cpu_count, delayed

from leafscan.clustering.kmeans import KMeansConfig
from leafscan.config import (
    DEFAULT_EMIT,
    DEFAULT_GRID_CELL_PX,
    DEFAULT_HISTOGRAM_METRIC,
    DEFAULT_K,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    EMIT_FLAGS,
    HISTOGRAM_METRICS,
    IMAGE_EXTENSIONS,
)
from leafscan.errors import AnalysisError
from leafscan.imaging.codec import read_image, write_png
from leafscan.imaging.raster import RgbImage
from leafscan.planimetry.analyzer import AnalysisResult, PipelineConfig, analyze, stage
from leafscan.planimetry.background import BACKGROUND_MODES
from leafscan.planimetry.rendering import (
    affected_overlay,
    render_cluster_image,
    render_cluster_preview,
)
from leafscan.planimetry.segmenter import Role
from leafscan.utilities.histograms import write_histograms_csv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """
    Batch run settings.

    Attributes:
        inputs (tuple[Path, ...]): image files, in processing order.
        out_dir (Path): directory receiving every artifact.
        pipeline (PipelineConfig): per-image analysis settings.
        emit (tuple[str, ...]): artifacts to write, a subset of EMIT_FLAGS.
        jobs (int): worker count.
    """

    inputs: tuple[Path, ...]
    out_dir: Path
    pipeline: PipelineConfig
    emit: tuple[str, ...] = DEFAULT_EMIT
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.inputs:
            raise ValueError("no input images found.")
        unknown = set(self.emit) - set(EMIT_FLAGS)
        if unknown:
            raise ValueError(f"unknown emit flags: {', '.join(sorted(unknown))}.")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}.")
        stems = Counter(path.stem.lower() for path in self.inputs)
        clashes = sorted(stem for stem, count in stems.items() if count > 1)
        if clashes:
            raise ValueError(
                f"inputs would overwrite each other's artifacts: {', '.join(clashes)}."
            )


@dataclass(frozen=True)
class ImageOutcome:
    path: Path
    payload: dict[str, Any]
    error: Optional[AnalysisError] = None

    @property
    def succeeded(self) -> bool:
        return self.error is None

    def summary(self) -> str:
        if not self.succeeded:
            return f"{self.path}: {self.error.stage}: {self.error.message}"
        return (
            f"{self.path}\ttp={self.payload['tp']}\twp1={self.payload['wp1']}"
            f"\tdamage_percent={self.payload['damage_percent']:.4f}"
        )


def collect_inputs(paths: tuple[Path, ...]) -> tuple[Path, ...]:
    """
    Expands directories into their PNG and JPEG files (non-recursive, sorted by name,
    extension matched case-insensitively). Files given explicitly are kept as is.
    """
    collected = []
    for path in paths:
        if path.is_dir():
            collected.extend(
                sorted(
                    child
                    for child in path.iterdir()
                    if child.is_file() and child.suffix.lower() in IMAGE_EXTENSIONS
                )
            )
        else:
            collected.append(path)
    return tuple(collected)


FIXED_POINT_FIELDS = re.compile(
    r'^(  "(?:damage_percent|paper_error_percent)": )(-?[0-9.eE+-]+)(,?)$', re.MULTILINE
)


def report_json(payload: dict[str, Any]) -> str:
    """Indented JSON with the percentages written to exactly four decimals."""
    text = json.dumps(payload, indent=2)
    text = FIXED_POINT_FIELDS.sub(lambda m: f"{m[1]}{float(m[2]):.4f}{m[3]}", text)
    return text + "\n"


def write_artifacts(
    result: AnalysisResult, img: RgbImage, stem: Path, emit: tuple[str, ...]
) -> None:
    segmentation = result.segmentation
    if "masks" in emit:
        for index, mask in enumerate(segmentation.cluster_masks):
            write_png(mask, f"{stem}.cluster{index}.png")
    if "overlay" in emit:
        write_png(affected_overlay(img, segmentation), f"{stem}.overlay.png")
    if "histograms" in emit:
        write_histograms_csv(
            f"{stem}.hist.csv",
            result.histograms["count"],
            **{
                Role.UNAFFECTED.value: result.histograms[Role.UNAFFECTED.value],
                Role.AFFECTED.value: result.histograms[Role.AFFECTED.value],
            },
        )
    if "preview" in emit:
        write_png(render_cluster_preview(img, segmentation), f"{stem}.clusters.png")
        for index, mask in enumerate(segmentation.cluster_masks):
            write_png(render_cluster_image(img, mask), f"{stem}.cluster{index}.color.png")


def process_image(path: Path, config: RunConfig) -> ImageOutcome:
    """
    Analyzes one image and writes its artifacts. Failures, unexpected ones included,
    are captured in the outcome and in the JSON report rather than raised.
    """
    stem = config.out_dir / path.stem
    current = "decode"
    error = None
    try:
        with stage(current):
            img = read_image(path)
        current = "analyze"
        result = analyze(img, config.pipeline)
        payload = result.to_dict(str(path))
        current = "write"
        with stage(current):
            write_artifacts(result, img, stem, config.emit)
    except AnalysisError as e:
        logger.warning(f"analysis of {path} failed at stage {e.stage}: {e.message}")
        error = e
    except Exception as e:
        logger.exception(f"unexpected failure while processing {path} at stage {current}.")
        error = AnalysisError(current, f"{type(e).__name__}: {e}")

    if error is not None:
        payload = {"input": str(path), "error": {"stage": error.stage, "message": error.message}}
    if "json" in config.emit:
        try:
            Path(f"{stem}.report.json").write_text(report_json(payload))
        except OSError as e:
            logger.error(f"cannot write the report of {path}: {e}")
            error = error or AnalysisError("write", str(e))
    return ImageOutcome(path=path, payload=payload, error=error)


def run(config: RunConfig) -> int:
    """
    Processes every input with a bounded thread pool and prints one summary line per
    image in input order.

    Returns:
        int: 0 when every image succeeded, 1 otherwise.
    """
    config.out_dir.mkdir(parents=True, exist_ok=True)
    outcomes = Parallel(n_jobs=config.jobs, prefer="threads")(
        delayed(process_image)(path, config) for path in config.inputs
    )
    failed = 0
    for outcome in outcomes:
        if outcome.succeeded:
            click.echo(outcome.summary())
        else:
            failed += 1
            click.echo(outcome.summary(), err=True)
    if failed:
        click.echo(f"{failed} of {len(outcomes)} images failed.", err=True)
        return 1
    return 0


def _parse_emit(ctx: click.Context, param: click.Parameter, value: str) -> tuple[str, ...]:
    flags = tuple(flag.strip() for flag in value.split(",") if flag.strip())
    unknown = [flag for flag in flags if flag not in EMIT_FLAGS]
    if unknown:
        raise click.BadParameter(
            f"unknown flag(s) {', '.join(unknown)}; choose from {', '.join(EMIT_FLAGS)}."
        )
    return flags


@click.command()
@click.argument(
    "inputs", nargs=-1, required=True, type=click.Path(exists=True, path_type=Path)
)
@click.option("--k", "k", type=click.IntRange(min=2), default=DEFAULT_K, show_default=True,
              help="Number of leaf colour clusters.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=DEFAULT_SEED,
              show_default=True, help="k-means seed.")
@click.option("--restarts", type=click.IntRange(min=1), default=DEFAULT_RESTARTS,
              show_default=True, help="Independent k-means runs.")
@click.option("--grid-cell", type=click.IntRange(min=1), default=DEFAULT_GRID_CELL_PX,
              show_default=True, help="Graph-paper cell edge in pixels.")
@click.option("--scale", type=click.FloatRange(min=0, min_open=True), default=None,
              help="Physical scale in mm^2 per pixel.")
@click.option("--background", type=click.Choice(BACKGROUND_MODES), default="auto",
              show_default=True, help="Backdrop the leaf was photographed on.")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path),
              default=Path("."), show_default=True, help="Directory for all artifacts.")
@click.option("--emit", callback=_parse_emit, default=",".join(DEFAULT_EMIT),
              show_default=True, help=f"Comma-separated artifacts: {','.join(EMIT_FLAGS)}.")
@click.option("--jobs", type=click.IntRange(min=1), default=None,
              help="Worker count; defaults to the available CPUs.")
@click.option("--threshold", type=click.IntRange(0, 255), default=None,
              help="Fixed binarization level instead of Otsu's.")
@click.option("--hist-metric", type=click.Choice(HISTOGRAM_METRICS),
              default=DEFAULT_HISTOGRAM_METRIC, show_default=True,
              help="Metric comparing unaffected and affected a* histograms.")
@click.option("--verbose", "-v", is_flag=True, help="Log pipeline progress.")
@click.pass_context
def cli(
    ctx: click.Context,
    inputs: tuple[Path, ...],
    k: int,
    seed: int,
    restarts: int,
    grid_cell: int,
    scale: Optional[float],
    background: str,
    out_dir: Path,
    emit: tuple[str, ...],
    jobs: Optional[int],
    threshold: Optional[int],
    hist_metric: str,
    verbose: bool,
) -> None:
    """
    Measure leaf area and lesion damage in leaf photographs. INPUTS are PNG/JPEG
    files or directories of them.
    """
    if verbose:
        logging.getLogger("leafscan").setLevel(logging.INFO)

    try:
        config = RunConfig(
            inputs=collect_inputs(inputs),
            out_dir=out_dir,
            pipeline=PipelineConfig(
                kmeans=KMeansConfig(k=k, seed=seed, restarts=restarts),
                background=background,
                grid_cell_px=grid_cell,
                scale_mm2_per_px=scale,
                threshold=threshold,
                histogram_metric=hist_metric,
            ),
            emit=emit,
            jobs=jobs or cpu_count(),
        )
        config.out_dir.mkdir(parents=True, exist_ok=True)
    except (ValueError, OSError) as e:
        raise click.UsageError(str(e), ctx=ctx)

    ctx.exit(run(config))


if __name__ == "__main__":
    cli()
