# -*- coding: utf-8 -*-
import numpy as np
import pandas as pd

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from leafscan.config import (
    DEFAULT_HISTOGRAM_BINS,
    DEFAULT_HISTOGRAM_METRIC,
    DEFAULT_HISTOGRAM_RANGE,
    HISTOGRAM_METRICS,
)
from leafscan.errors import EmptyHistogramError, EmptyInputError, ShapeMismatchError


@dataclass(frozen=True, eq=False)
class Histogram:
    """
    Uniform-bin histogram over a closed channel range.

    Attributes:
        counts (np.ndarray): per-bin non-negative integer counts.
        range (tuple[float, float]): (lo, hi) in channel units; hi falls in the last bin.
    """

    counts: np.ndarray
    range: tuple[float, float]

    @property
    def bin_count(self) -> int:
        return int(self.counts.shape[0])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.range[0], self.range[1], self.bin_count + 1)

    def normalized(self) -> np.ndarray:
        if self.total == 0:
            raise EmptyHistogramError("cannot normalize an empty histogram.")
        return self.counts / self.total

    def to_frame(self) -> pd.DataFrame:
        edges = self.edges
        return pd.DataFrame(
            {"bin_lo": edges[:-1], "bin_hi": edges[1:], "count": self.counts}
        )


def compute_histogram(
    values: Sequence[float],
    bin_count: int = DEFAULT_HISTOGRAM_BINS,
    range: tuple[float, float] = DEFAULT_HISTOGRAM_RANGE,
    allow_empty: bool = False,
) -> Histogram:
    """
    Bins channel values uniformly over [lo, hi]. Values outside the range are clamped
    into the end bins, so the total always equals the number of values.

    Args:
        values: channel values.
        bin_count (int): number of bins, at least 1.
        range (tuple[float, float]): (lo, hi) with lo < hi.
        allow_empty (bool): return an all-zero histogram instead of raising.

    Raises:
        EmptyInputError: no values were given and allow_empty is False.
        ValueError: invalid bin count or range.

    Returns:
        Histogram: the binned counts.
    """
    lo, hi = float(range[0]), float(range[1])
    if bin_count < 1:
        raise ValueError(f"bin_count must be at least 1, got {bin_count}.")
    if not lo < hi:
        raise ValueError(f"histogram range must satisfy lo < hi, got {range}.")

    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0 and not allow_empty:
        raise EmptyInputError("histogram of zero values is undefined.")

    counts, _ = np.histogram(np.clip(values, lo, hi), bins=bin_count, range=(lo, hi))
    return Histogram(counts=counts.astype(np.int64), range=(lo, hi))


def _check_comparable(h1: Histogram, h2: Histogram) -> None:
    if h1.bin_count != h2.bin_count or h1.range != h2.range:
        raise ShapeMismatchError(
            f"histograms differ: {h1.bin_count} bins over {h1.range} "
            f"vs {h2.bin_count} bins over {h2.range}."
        )
    if h1.total == 0 or h2.total == 0:
        raise EmptyHistogramError("cannot compare an empty histogram.")


def intersection(p: np.ndarray, q: np.ndarray) -> float:
    return float(np.minimum(p, q).sum())


def chi_square(p: np.ndarray, q: np.ndarray) -> float:
    """Symmetric chi-square; bins empty in both histograms contribute nothing."""
    total = p + q
    occupied = total > 0
    return float(((p[occupied] - q[occupied]) ** 2 / total[occupied]).sum())


def bhattacharyya(p: np.ndarray, q: np.ndarray) -> float:
    coefficient = np.sqrt(p * q).sum()
    return float(np.sqrt(max(0.0, 1.0 - coefficient)))


METRICS = {
    "intersection": intersection,
    "chi_square": chi_square,
    "bhattacharyya": bhattacharyya,
}


def compare_histograms(
    h1: Histogram, h2: Histogram, metric: str = DEFAULT_HISTOGRAM_METRIC
) -> float:
    """
    Compares two histograms after normalizing both to unit sum.

    Args:
        h1 (Histogram): first histogram.
        h2 (Histogram): second histogram, same bins and range as h1.
        metric (str): one of "intersection" (1 identical), "chi_square" (0 identical)
            or "bhattacharyya" (0 identical).

    Raises:
        ShapeMismatchError: bin counts or ranges differ.
        EmptyHistogramError: either histogram has no counts.

    Returns:
        float: comparison score.
    """
    if metric not in HISTOGRAM_METRICS:
        raise ValueError(f"unknown histogram metric {metric}.")
    _check_comparable(h1, h2)
    return METRICS[metric](h1.normalized(), h2.normalized())


def write_histograms_csv(
    path: Union[str, Path], leaf: Histogram, **regions: Histogram
) -> None:
    """
    Writes bin_lo, bin_hi, count for the leaf histogram, followed by one count column
    per named region histogram.
    """
    frame = leaf.to_frame()
    for name, histogram in regions.items():
        if histogram.bin_count != leaf.bin_count or histogram.range != leaf.range:
            raise ShapeMismatchError(f"region histogram {name} has different bins.")
        frame[name] = histogram.counts
    frame.to_csv(path, index=False)
