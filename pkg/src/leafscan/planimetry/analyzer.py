# -*- coding: utf-8 -*-
import logging
import numpy as np

from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator, Optional, Union

from leafscan.clustering.kmeans import KMeansConfig
from leafscan.config import (
    BACKGROUND_CHROMA_TOLERANCE,
    BACKGROUND_L_TOLERANCE,
    DEFAULT_GRID_CELL_PX,
    DEFAULT_HISTOGRAM_BINS,
    DEFAULT_HISTOGRAM_METRIC,
    DEFAULT_HISTOGRAM_RANGE,
    HISTOGRAM_METRICS,
    LOW_CONTRAST_DISTANCE,
)
from leafscan.errors import AnalysisError, DegenerateHistogramError, LeafscanError
from leafscan.imaging.codec import read_image
from leafscan.imaging.raster import BinaryMask, RgbImage
from leafscan.imaging.threshold import binarize, count_white, otsu_threshold, to_grayscale
from leafscan.planimetry.background import BACKGROUND_MODES, border_frame, remove_background
from leafscan.planimetry.grid import GridEstimate, grid_area
from leafscan.planimetry.report import PlanimetryReport, planimetry_report
from leafscan.planimetry.segmenter import Role, SegmentationResult, segment_leaf
from leafscan.utilities.histograms import Histogram, compare_histograms, compute_histogram

logger = logging.getLogger(__name__)

DEGENERATE_THRESHOLD = "degenerate_threshold"


@dataclass(frozen=True)
class PipelineConfig:
    """
    Settings of a single-image analysis.

    Attributes:
        kmeans (KMeansConfig): clustering settings; kmeans.k is the leaf cluster count.
        background (str): "auto", "white" or "black".
        l_tolerance (float): background L* band half-width.
        chroma_tolerance (float): background chroma ceiling.
        low_contrast_distance (float): a*b* centroid separation flagged as low contrast.
        grid_cell_px (int): graph-paper cell edge in pixels.
        scale_mm2_per_px (float, optional): physical scale.
        threshold (int, optional): fixed binarization level; Otsu when None.
        histogram_bins (int): a* histogram bin count.
        histogram_range (tuple[float, float]): a* histogram range.
        histogram_metric (str): metric used to compare region histograms.
    """

    kmeans: KMeansConfig = field(default_factory=KMeansConfig)
    background: str = "auto"
    l_tolerance: float = BACKGROUND_L_TOLERANCE
    chroma_tolerance: float = BACKGROUND_CHROMA_TOLERANCE
    low_contrast_distance: float = LOW_CONTRAST_DISTANCE
    grid_cell_px: int = DEFAULT_GRID_CELL_PX
    scale_mm2_per_px: Optional[float] = None
    threshold: Optional[int] = None
    histogram_bins: int = DEFAULT_HISTOGRAM_BINS
    histogram_range: tuple[float, float] = DEFAULT_HISTOGRAM_RANGE
    histogram_metric: str = DEFAULT_HISTOGRAM_METRIC

    def __post_init__(self) -> None:
        if self.kmeans.k < 2:
            raise ValueError(f"k must be at least 2, got {self.kmeans.k}.")
        if self.background not in BACKGROUND_MODES:
            raise ValueError(f"background must be one of {BACKGROUND_MODES}.")
        if self.grid_cell_px < 1:
            raise ValueError(f"grid_cell_px must be at least 1, got {self.grid_cell_px}.")
        if self.scale_mm2_per_px is not None and not self.scale_mm2_per_px > 0:
            raise ValueError("scale_mm2_per_px must be positive.")
        if self.threshold is not None and not 0 <= self.threshold <= 255:
            raise ValueError(f"threshold must lie in [0, 255], got {self.threshold}.")
        if self.histogram_metric not in HISTOGRAM_METRICS:
            raise ValueError(f"histogram_metric must be one of {HISTOGRAM_METRICS}.")


@dataclass(frozen=True, eq=False)
class BinarizationEstimate:
    """
    Leaf area from the grayscale-and-threshold route.

    Attributes:
        threshold (int): level used; pixels above it are bright.
        automatic (bool): True when the level came from Otsu's method.
        inverted (bool): True when the leaf is darker than its backdrop.
        mask (BinaryMask): leaf pixels (white).
        area_px (int): white pixel count.
        degenerate (bool): True when the image had a single intensity.
    """

    threshold: int
    automatic: bool
    inverted: bool
    mask: BinaryMask
    area_px: int
    degenerate: bool = False


@dataclass(frozen=True, eq=False)
class AnalysisResult:
    report: PlanimetryReport
    segmentation: SegmentationResult
    grid: GridEstimate
    region_grids: dict[str, GridEstimate]
    cluster_grids: list[GridEstimate]
    binarization: BinarizationEstimate
    histograms: dict[str, Histogram]
    histogram_score: Optional[float]
    config: PipelineConfig
    width: int
    height: int

    @property
    def flags(self) -> list[str]:
        flags = list(self.segmentation.flags)
        if self.binarization.degenerate:
            flags.append(DEGENERATE_THRESHOLD)
        return flags

    def to_dict(self, input: str) -> dict[str, Any]:
        """JSON-ready report with a stable key order."""
        kmeans = self.config.kmeans
        damage = round(self.report.damage_percent, 4)
        histogram = None
        if self.histogram_score is not None:
            histogram = {
                "metric": self.config.histogram_metric,
                "score": self.histogram_score,
            }
        return {
            "input": input,
            "width": self.width,
            "height": self.height,
            "wp": self.report.wp,
            "wp1": self.report.wp1,
            "tp": self.report.tp,
            "damage_percent": damage,
            "paper_error_percent": round(self.report.paper_error_percent, 4),
            "grid": {
                "cell_px": self.grid.cell_px,
                "covered_cells": self.grid.covered_cells,
                "area_px": self.grid.area_px,
                "regions": {
                    role: estimate.area_px for role, estimate in self.region_grids.items()
                },
            },
            "kmeans": {
                "k": kmeans.k,
                "seed": kmeans.seed,
                "restarts": kmeans.restarts,
                "inertia": self.segmentation.model.inertia,
                "iterations": self.segmentation.model.iterations_run,
            },
            "flags": self.flags,
            "scale_mm2_per_px": self.report.scale,
            "area_mm2": self.report.area_mm2,
            "binarization": {
                "threshold": self.binarization.threshold,
                "area_px": self.binarization.area_px,
            },
            "histogram": histogram,
        }


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Re-raises library errors as AnalysisError annotated with the pipeline stage."""
    try:
        yield
    except AnalysisError:
        raise
    except (LeafscanError, OSError) as e:
        raise AnalysisError(name, str(e)) from e


def binary_leaf_area(img: RgbImage, threshold: Optional[int] = None) -> BinarizationEstimate:
    """
    Leaf area by grayscale conversion, binarization and pixel counting. The level is
    Otsu's unless a fixed threshold is given. When the image border is brighter than
    the level (white paper) the binary picture is inverted so the leaf is white.

    Args:
        img (RgbImage): leaf photograph.
        threshold (int, optional): fixed level in [0, 255].

    Returns:
        BinarizationEstimate: level, polarity and leaf mask.
    """
    gray = to_grayscale(img)
    automatic = threshold is None
    degenerate = False
    if automatic:
        try:
            threshold = otsu_threshold(gray)
        except DegenerateHistogramError:
            logger.warning("grayscale image has a single intensity; binary leaf area is 0.")
            threshold = int(gray.data.flat[0])
            degenerate = True

    bright = binarize(gray, threshold)
    border = gray.data[border_frame(gray.height, gray.width)]
    inverted = bool(np.median(border) > threshold)
    mask = ~bright if inverted and not degenerate else bright
    return BinarizationEstimate(
        threshold=threshold,
        automatic=automatic,
        inverted=inverted,
        mask=mask,
        area_px=count_white(mask),
        degenerate=degenerate,
    )


def region_histograms(
    segmentation: SegmentationResult,
    bins: int = DEFAULT_HISTOGRAM_BINS,
    value_range: tuple[float, float] = DEFAULT_HISTOGRAM_RANGE,
) -> dict[str, Histogram]:
    """a* histograms of the whole leaf and of its unaffected and affected regions."""
    a_star = segmentation.pixels.features[:, 0]
    roles = segmentation.row_roles()
    return {
        "count": compute_histogram(a_star, bins, value_range, allow_empty=True),
        Role.UNAFFECTED.value: compute_histogram(
            a_star[roles == Role.UNAFFECTED.value], bins, value_range, allow_empty=True
        ),
        Role.AFFECTED.value: compute_histogram(
            a_star[roles == Role.AFFECTED.value], bins, value_range, allow_empty=True
        ),
    }


def analyze(img: RgbImage, cfg: PipelineConfig = PipelineConfig()) -> AnalysisResult:
    """
    Full leaf analysis: background removal, a*b* segmentation, pixel counting and the
    planimetry report. The graph-paper estimate is computed on the whole-leaf mask, on
    each role mask and on each cluster mask, and the binary-picture area alongside it.

    Args:
        img (RgbImage): leaf photograph.
        cfg (PipelineConfig): analysis settings.

    Raises:
        AnalysisError: any stage failed; .stage names it.

    Returns:
        AnalysisResult: report, segmentation, grid estimate and histograms.
    """
    with stage("background"):
        foreground = remove_background(
            img, cfg.background, cfg.l_tolerance, cfg.chroma_tolerance
        )
    logger.info(f"leaf foreground has {count_white(foreground)} pixels.")

    with stage("segment"):
        segmentation = segment_leaf(
            img,
            cfg.kmeans.k,
            cfg.kmeans,
            foreground=foreground,
            low_contrast_distance=cfg.low_contrast_distance,
        )

    with stage("report"):
        wp = count_white(segmentation.role_mask(Role.UNAFFECTED))
        wp1 = count_white(segmentation.role_mask(Role.AFFECTED))
        report = planimetry_report(wp, wp1, cfg.scale_mm2_per_px)

    with stage("grid"):
        grid = grid_area(foreground, cfg.grid_cell_px)
        region_grids = {
            role.value: grid_area(segmentation.role_mask(role), cfg.grid_cell_px)
            for role in (Role.UNAFFECTED, Role.AFFECTED)
        }
        cluster_grids = [
            grid_area(mask, cfg.grid_cell_px) for mask in segmentation.cluster_masks
        ]

    with stage("binarize"):
        binarization = binary_leaf_area(img, cfg.threshold)

    with stage("histogram"):
        histograms = region_histograms(segmentation, cfg.histogram_bins, cfg.histogram_range)
        score = None
        unaffected = histograms[Role.UNAFFECTED.value]
        affected = histograms[Role.AFFECTED.value]
        if unaffected.total > 0 and affected.total > 0:
            score = compare_histograms(unaffected, affected, cfg.histogram_metric)

    return AnalysisResult(
        report=report,
        segmentation=segmentation,
        grid=grid,
        region_grids=region_grids,
        cluster_grids=cluster_grids,
        binarization=binarization,
        histograms=histograms,
        histogram_score=score,
        config=cfg,
        width=img.width,
        height=img.height,
    )


def analyze_file(
    path: Union[str, Path], cfg: PipelineConfig = PipelineConfig()
) -> AnalysisResult:
    with stage("decode"):
        img = read_image(path)
    return analyze(img, cfg)
