# -*- coding: utf-8 -*-
from leafscan.planimetry.analyzer import (
    AnalysisResult,
    PipelineConfig,
    analyze,
    analyze_file,
    binary_leaf_area,
)
from leafscan.planimetry.background import remove_background
from leafscan.planimetry.grid import GridEstimate, grid_area
from leafscan.planimetry.report import PlanimetryReport, planimetry_report
from leafscan.planimetry.segmenter import Role, SegmentationResult, segment_leaf

__all__ = [
    "AnalysisResult",
    "PipelineConfig",
    "analyze",
    "analyze_file",
    "binary_leaf_area",
    "remove_background",
    "GridEstimate",
    "grid_area",
    "PlanimetryReport",
    "planimetry_report",
    "Role",
    "SegmentationResult",
    "segment_leaf",
]
