# -*- coding: utf-8 -*-
from dataclasses import dataclass
from typing import Optional

from leafscan.errors import EmptyLeafError


@dataclass(frozen=True)
class PlanimetryReport:
    """
    Pixel planimetry of one leaf: TP = WP + WP1.

    Attributes:
        wp (int): pixels of unaffected regions.
        wp1 (int): pixels of affected regions.
        tp (int): total leaf pixels.
        damage_percent (float): 100 * wp1 / tp.
        scale (float, optional): mm^2 per pixel.
        area_mm2 (dict[str, float], optional): leaf, unaffected and affected areas,
            present only when a scale is given.
    """

    wp: int
    wp1: int
    tp: int
    damage_percent: float
    scale: Optional[float] = None
    area_mm2: Optional[dict[str, float]] = None

    @property
    def paper_error_percent(self) -> float:
        """Alias of damage_percent."""
        return self.damage_percent


def planimetry_report(wp: int, wp1: int, scale: Optional[float] = None) -> PlanimetryReport:
    """
    Builds the planimetry report from unaffected and affected pixel counts.

    Args:
        wp (int): unaffected pixels, >= 0.
        wp1 (int): affected pixels, >= 0.
        scale (float, optional): mm^2 per pixel; physical areas are filled when given.

    Raises:
        EmptyLeafError: wp + wp1 == 0.
        ValueError: negative counts or a non-positive scale.

    Returns:
        PlanimetryReport: the report.
    """
    if wp < 0 or wp1 < 0:
        raise ValueError(f"pixel counts must be non-negative, got wp={wp}, wp1={wp1}.")
    if scale is not None and not scale > 0:
        raise ValueError(f"scale must be positive, got {scale}.")

    tp = int(wp) + int(wp1)
    if tp == 0:
        raise EmptyLeafError("leaf has no pixels; damage percentage is undefined.")

    area_mm2 = None
    if scale is not None:
        area_mm2 = {
            "leaf": tp * scale,
            "unaffected": wp * scale,
            "affected": wp1 * scale,
        }
    return PlanimetryReport(
        wp=int(wp),
        wp1=int(wp1),
        tp=tp,
        damage_percent=100.0 * wp1 / tp,
        scale=scale,
        area_mm2=area_mm2,
    )
