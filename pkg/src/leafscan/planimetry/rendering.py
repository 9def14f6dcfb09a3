# -*- coding: utf-8 -*-
import numpy as np

from leafscan.config import OVERLAY_ALPHA, OVERLAY_COLOR
from leafscan.imaging.raster import BinaryMask, RgbImage
from leafscan.imaging.threshold import binarize, to_grayscale
from leafscan.planimetry.segmenter import Role, SegmentationResult
from leafscan.utilities.colorspace import lab_to_srgb_array


def render_cluster_image(img: RgbImage, mask: BinaryMask) -> RgbImage:
    """Keeps the original colours inside the mask and paints everything else black."""
    img.check_same_shape(mask)
    return RgbImage(np.where(mask.data[..., np.newaxis], img.data, 0).astype(np.uint8))


def binary_from_cluster_image(cluster_image: RgbImage) -> BinaryMask:
    """
    Binary picture of a segmented cluster image: grayscale, then every pixel brighter
    than black is white.
    """
    return binarize(to_grayscale(cluster_image), 0)


def render_overlay(
    img: RgbImage,
    mask: BinaryMask,
    color: tuple[int, int, int] = OVERLAY_COLOR,
    alpha: float = OVERLAY_ALPHA,
) -> RgbImage:
    """
    Tints the masked pixels towards color.

    Args:
        img (RgbImage): base photograph.
        mask (BinaryMask): pixels to tint.
        color (tuple[int, int, int]): tint colour.
        alpha (float): tint opacity in [0, 1].

    Returns:
        RgbImage: the blended image.
    """
    img.check_same_shape(mask)
    base = img.data.astype(np.float64)
    tinted = (1.0 - alpha) * base + alpha * np.asarray(color, dtype=np.float64)
    blended = np.where(mask.data[..., np.newaxis], tinted, base)
    return RgbImage(np.clip(np.floor(blended + 0.5), 0, 255).astype(np.uint8))


def render_cluster_preview(img: RgbImage, segmentation: SegmentationResult) -> RgbImage:
    """
    Paints every leaf pixel with its cluster's colour: the centroid a*b* combined with
    the cluster's mean L*. Background pixels are left unchanged.
    """
    labels = segmentation.model.labels
    lightness = segmentation.pixels.lightness
    k = len(segmentation.cluster_masks)
    sizes = np.bincount(labels, minlength=k)
    sums = np.bincount(labels, weights=lightness, minlength=k)
    mean_lightness = np.divide(sums, sizes, out=np.full(k, 50.0), where=sizes > 0)

    palette = lab_to_srgb_array(
        np.column_stack([mean_lightness, segmentation.centroids_ab])
    )
    preview = img.data.copy()
    rows, cols = segmentation.row_to_pixel.T
    preview[rows, cols] = palette[labels]
    return RgbImage(preview)


def affected_overlay(img: RgbImage, segmentation: SegmentationResult) -> RgbImage:
    return render_overlay(img, segmentation.role_mask(Role.AFFECTED))
