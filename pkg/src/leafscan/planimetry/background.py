# -*- coding: utf-8 -*-
import logging
import numpy as np

from leafscan.config import (
    BACKGROUND_CHROMA_TOLERANCE,
    BACKGROUND_L_TOLERANCE,
    BACKGROUND_REFERENCE_L,
)
from leafscan.errors import EmptyForegroundError
from leafscan.imaging.raster import BinaryMask, RgbImage
from leafscan.utilities.colorspace import image_to_lab

logger = logging.getLogger(__name__)

BACKGROUND_MODES = ("auto", "white", "black")


def border_frame(height: int, width: int) -> np.ndarray:
    frame = np.zeros((height, width), dtype=bool)
    frame[0, :] = frame[-1, :] = True
    frame[:, 0] = frame[:, -1] = True
    return frame


def reference_lightness(lab: np.ndarray, mode: str = "auto") -> float:
    """
    L* of the background: the median L* of the 1-pixel image border in "auto" mode,
    otherwise the fixed lightness of white paper or black cloth.
    """
    if mode not in BACKGROUND_MODES:
        raise ValueError(f"background mode must be one of {BACKGROUND_MODES}, got {mode}.")
    if mode != "auto":
        return BACKGROUND_REFERENCE_L[mode]
    frame = border_frame(lab.shape[0], lab.shape[1])
    return float(np.median(lab[..., 0][frame]))


def remove_background(
    img: RgbImage,
    mode: str = "auto",
    l_tolerance: float = BACKGROUND_L_TOLERANCE,
    chroma_tolerance: float = BACKGROUND_CHROMA_TOLERANCE,
) -> BinaryMask:
    """
    Separates the leaf from a plain white or black backdrop. A pixel is background when
    its L* lies within l_tolerance of the reference lightness and its chroma is below
    chroma_tolerance.

    Args:
        img (RgbImage): photograph of a single leaf on a plain backdrop.
        mode (str): "auto", "white" or "black".
        l_tolerance (float): allowed L* deviation from the reference.
        chroma_tolerance (float): largest a*b* chroma still treated as neutral.

    Raises:
        EmptyForegroundError: every pixel was classified as background.

    Returns:
        BinaryMask: True on leaf pixels.
    """
    lab = image_to_lab(img)
    reference = reference_lightness(lab, mode)
    chroma = np.hypot(lab[..., 1], lab[..., 2])
    background = (np.abs(lab[..., 0] - reference) < l_tolerance) & (chroma < chroma_tolerance)

    if background.all():
        raise EmptyForegroundError(
            "every pixel matches the background; check the framing of the photograph."
        )
    logger.debug(
        f"background reference L*={reference:.2f}, {int((~background).sum())} leaf pixels."
    )
    return BinaryMask(~background)
