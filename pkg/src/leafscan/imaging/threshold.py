# -*- coding: utf-8 -*-
import numpy as np

from leafscan.config import GRAYSCALE_WEIGHTS
from leafscan.errors import DegenerateHistogramError
from leafscan.imaging.raster import BinaryMask, GrayImage, RgbImage

LEVELS = 256


def to_grayscale(img: RgbImage) -> GrayImage:
    """
    Converts an RGB raster to luma with Rec. 601 weights, rounding half up.

    Args:
        img (RgbImage): input raster.

    Returns:
        GrayImage: 8-bit intensities.
    """
    luma = img.data.astype(np.float64) @ GRAYSCALE_WEIGHTS
    return GrayImage(np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8))


def gray_histogram(img: GrayImage) -> np.ndarray:
    return np.bincount(img.data.ravel(), minlength=LEVELS)


def otsu_threshold(img: GrayImage) -> int:
    """
    Otsu's threshold. Pixels at or below the returned level form the dark class, so the
    level is directly usable with binarize. The between-class variance is compared in
    exact integer arithmetic; ties resolve to the lowest level.

    Args:
        img (GrayImage): image with at least one pixel.

    Raises:
        DegenerateHistogramError: all pixels share one intensity.

    Returns:
        int: threshold level in [0, 255].
    """
    counts = [int(c) for c in gray_histogram(img)]
    if sum(1 for c in counts if c > 0) < 2:
        raise DegenerateHistogramError("image has a single intensity; no split exists.")

    total = sum(counts)
    weighted_total = sum(level * c for level, c in enumerate(counts))

    best_level = 0
    best_num, best_den = -1, 1
    dark_count = 0
    dark_sum = 0
    for level in range(LEVELS - 1):
        dark_count += counts[level]
        dark_sum += level * counts[level]
        bright_count = total - dark_count
        if dark_count == 0 or bright_count == 0:
            continue
        # total**2 * between-class variance, kept as an exact fraction.
        num = (total * dark_sum - dark_count * weighted_total) ** 2
        den = dark_count * bright_count
        if num * best_den > best_num * den:
            best_level, best_num, best_den = level, num, den
    return best_level


def binarize(img: GrayImage, threshold: int) -> BinaryMask:
    """
    Marks pixels strictly brighter than the threshold as white.

    Raises:
        ValueError: threshold outside [0, 255].
    """
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold {threshold} outside [0, 255].")
    return BinaryMask(img.data > threshold)


def count_white(mask: BinaryMask) -> int:
    return int(np.count_nonzero(mask.data))


def count_black(mask: BinaryMask) -> int:
    return mask.size - count_white(mask)
