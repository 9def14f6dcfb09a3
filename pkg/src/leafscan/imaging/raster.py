# -*- coding: utf-8 -*-
import numpy as np

from dataclasses import dataclass

from leafscan.errors import DimensionMismatchError, ZeroDimensionError


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Raster:
    """
    Row-major raster shared by the three pipeline stages.

    Attributes:
        data (np.ndarray): pixel array of shape (height, width, ...).
    """

    data: np.ndarray

    def __post_init__(self) -> None:
        if self.data.ndim < 2:
            raise ValueError("raster data needs at least two dimensions.")
        if self.data.shape[0] == 0 or self.data.shape[1] == 0:
            raise ZeroDimensionError(f"raster has zero dimension {self.data.shape[:2]}.")
        object.__setattr__(self, "data", _freeze(self._coerce(self.data)))

    @staticmethod
    def _coerce(data: np.ndarray) -> np.ndarray:
        return data

    @property
    def height(self) -> int:
        return int(self.data.shape[0])

    @property
    def width(self) -> int:
        return int(self.data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    @property
    def size(self) -> int:
        return self.width * self.height

    def check_same_shape(self, other: "Raster") -> None:
        """
        Raises:
            DimensionMismatchError: if the two rasters differ in width or height.
        """
        if self.shape != other.shape:
            raise DimensionMismatchError(
                f"raster shapes differ: {self.shape} vs {other.shape}."
            )


@dataclass(frozen=True, eq=False)
class RgbImage(Raster):
    """8-bit sRGB raster of shape (height, width, 3)."""

    @staticmethod
    def _coerce(data: np.ndarray) -> np.ndarray:
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"rgb data must have shape (h, w, 3), got {data.shape}.")
        if data.dtype != np.uint8:
            if np.any(data < 0) or np.any(data > 255):
                raise ValueError("rgb channel values must lie in [0, 255].")
            data = data.astype(np.uint8)
        return data


@dataclass(frozen=True, eq=False)
class GrayImage(Raster):
    """8-bit intensity raster of shape (height, width)."""

    @staticmethod
    def _coerce(data: np.ndarray) -> np.ndarray:
        if data.ndim != 2:
            raise ValueError(f"gray data must have shape (h, w), got {data.shape}.")
        if data.dtype != np.uint8:
            if np.any(data < 0) or np.any(data > 255):
                raise ValueError("gray values must lie in [0, 255].")
            data = data.astype(np.uint8)
        return data


@dataclass(frozen=True, eq=False)
class BinaryMask(Raster):
    """Boolean raster of shape (height, width); True is white/foreground."""

    @staticmethod
    def _coerce(data: np.ndarray) -> np.ndarray:
        if data.ndim != 2:
            raise ValueError(f"mask data must have shape (h, w), got {data.shape}.")
        return data.astype(bool)

    @classmethod
    def empty(cls, height: int, width: int) -> "BinaryMask":
        return cls(np.zeros((height, width), dtype=bool))

    def __and__(self, other: "BinaryMask") -> "BinaryMask":
        self.check_same_shape(other)
        return BinaryMask(self.data & other.data)

    def __or__(self, other: "BinaryMask") -> "BinaryMask":
        self.check_same_shape(other)
        return BinaryMask(self.data | other.data)

    def __invert__(self) -> "BinaryMask":
        return BinaryMask(~self.data)
