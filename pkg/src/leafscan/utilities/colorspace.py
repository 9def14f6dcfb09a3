# -*- coding: utf-8 -*-
import numpy as np

from dataclasses import dataclass
from typing import NamedTuple, Optional

from leafscan.config import CIE_EPSILON, CIE_KAPPA, D65_WHITE, SRGB_TO_XYZ
from leafscan.errors import DimensionMismatchError
from leafscan.imaging.raster import BinaryMask, RgbImage

XYZ_TO_SRGB = np.linalg.inv(SRGB_TO_XYZ)


class LabPixel(NamedTuple):
    L: float
    a: float
    b: float


@dataclass(frozen=True, eq=False)
class LabPixelMatrix:
    """
    Chromatic clustering features of a set of pixels.

    Attributes:
        features (np.ndarray): n x 2 matrix of (a*, b*) rows.
        row_to_pixel (np.ndarray): n x 2 matrix of (row, column) pixel coordinates, one
            per feature row, in row-major pixel order.
        lightness (np.ndarray): L* of each row, kept for rendering previews.
    """

    features: np.ndarray
    row_to_pixel: np.ndarray
    lightness: np.ndarray

    @property
    def n(self) -> int:
        return int(self.features.shape[0])


def _decompand(channel: np.ndarray) -> np.ndarray:
    return np.where(
        channel <= 0.04045, channel / 12.92, ((channel + 0.055) / 1.055) ** 2.4
    )


def _compand(linear: np.ndarray) -> np.ndarray:
    linear = np.clip(linear, 0.0, None)
    return np.where(
        linear <= 0.0031308, 12.92 * linear, 1.055 * linear ** (1 / 2.4) - 0.055
    )


def _f(t: np.ndarray) -> np.ndarray:
    return np.where(t > CIE_EPSILON, np.cbrt(t), (CIE_KAPPA * t + 16) / 116)


def _f_inverse(f: np.ndarray) -> np.ndarray:
    cubed = f**3
    return np.where(cubed > CIE_EPSILON, cubed, (116 * f - 16) / CIE_KAPPA)


def srgb_to_lab_array(rgb: np.ndarray) -> np.ndarray:
    """
    Converts 8-bit sRGB values of shape (..., 3) to CIELAB (D65, 2 degree observer).

    Args:
        rgb (np.ndarray): channel values in [0, 255].

    Returns:
        np.ndarray: float64 array of (L*, a*, b*) with the input's leading shape.
    """
    linear = _decompand(np.asarray(rgb, dtype=np.float64) / 255.0)
    xyz = linear @ SRGB_TO_XYZ.T
    fx, fy, fz = np.moveaxis(_f(xyz / D65_WHITE), -1, 0)
    return np.stack([116 * fy - 16, 500 * (fx - fy), 200 * (fy - fz)], axis=-1)


def lab_to_srgb_array(lab: np.ndarray) -> np.ndarray:
    """
    Inverse of srgb_to_lab_array. Out-of-gamut results are clamped per channel.

    Returns:
        np.ndarray: uint8 array of shape (..., 3).
    """
    lightness, a, b = np.moveaxis(np.asarray(lab, dtype=np.float64), -1, 0)
    fy = (lightness + 16) / 116
    fx = fy + a / 500
    fz = fy - b / 200
    yr = np.where(lightness > CIE_KAPPA * CIE_EPSILON, fy**3, lightness / CIE_KAPPA)
    xyz = np.stack([_f_inverse(fx), yr, _f_inverse(fz)], axis=-1) * D65_WHITE
    srgb = _compand(xyz @ XYZ_TO_SRGB.T)
    return np.clip(np.rint(srgb * 255.0), 0, 255).astype(np.uint8)


def srgb_to_lab(pixel: tuple[int, int, int]) -> LabPixel:
    lightness, a, b = srgb_to_lab_array(np.array(pixel)).tolist()
    return LabPixel(lightness, a, b)


def lab_to_srgb(pixel: tuple[float, float, float]) -> tuple[int, int, int]:
    r, g, b = lab_to_srgb_array(np.array(pixel)).tolist()
    return r, g, b


def image_to_lab(img: RgbImage) -> np.ndarray:
    return srgb_to_lab_array(img.data)


def image_to_ab_matrix(
    img: RgbImage, include: Optional[BinaryMask] = None
) -> LabPixelMatrix:
    """
    Collects the (a*, b*) features of the included pixels in row-major order.

    Args:
        img (RgbImage): source raster.
        include (BinaryMask, optional): pixels to keep; all pixels when omitted.

    Raises:
        DimensionMismatchError: mask and image shapes differ.

    Returns:
        LabPixelMatrix: features with the row to pixel mapping.
    """
    if include is None:
        selected = np.ones(img.shape, dtype=bool)
    else:
        if include.shape != img.shape:
            raise DimensionMismatchError(
                f"mask shape {include.shape} does not match image shape {img.shape}."
            )
        selected = include.data

    rows, cols = np.nonzero(selected)
    lab = srgb_to_lab_array(img.data[rows, cols])
    return LabPixelMatrix(
        features=np.ascontiguousarray(lab[:, 1:]).reshape(-1, 2),
        row_to_pixel=np.stack([rows, cols], axis=1),
        lightness=lab[:, 0].reshape(-1),
    )
