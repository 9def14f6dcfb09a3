# -*- coding: utf-8 -*-
import numpy as np

from typing import Sequence

from leafscan.errors import DimensionMismatchError


def euclidean_distance(p: Sequence[float], q: Sequence[float]) -> float:
    """
    Straight-line distance between two points of equal dimension.

    Raises:
        DimensionMismatchError: dimensions differ or are zero.
    """
    p = np.asarray(p, dtype=np.float64).ravel()
    q = np.asarray(q, dtype=np.float64).ravel()
    if p.shape != q.shape or p.size == 0:
        raise DimensionMismatchError(
            f"points must share a positive dimension, got {p.size} and {q.size}."
        )
    return float(np.sqrt(np.sum((p - q) ** 2)))


def standardize(features: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Centers every column to zero mean and scales it to unit population standard
    deviation. Constant columns become all zeros and record a standard deviation of 0.

    Args:
        features (np.ndarray): n x d matrix, n >= 1.

    Returns:
        tuple[np.ndarray, np.ndarray]: standardized matrix and a d x 2 array of
        per-column (mean, stddev).
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim == 1:
        features = features.reshape(-1, 1)
    if features.shape[0] == 0:
        raise ValueError("cannot standardize an empty feature matrix.")

    mean = features.mean(axis=0)
    stddev = features.std(axis=0)
    constant = np.all(features == features[0], axis=0)
    stddev[constant] = 0.0

    scale = np.where(constant, 1.0, stddev)
    standardized = (features - mean) / scale
    standardized[:, constant] = 0.0
    return standardized, np.stack([mean, stddev], axis=1)


def destandardize(features: np.ndarray, params: np.ndarray) -> np.ndarray:
    mean, stddev = params[:, 0], params[:, 1]
    return np.asarray(features) * np.where(stddev == 0, 1.0, stddev) + mean
