# -*- coding: utf-8 -*-
import numpy as np

from dataclasses import dataclass

from leafscan.imaging.raster import BinaryMask


@dataclass(frozen=True)
class GridEstimate:
    """
    Graph-paper estimate of a mask's area.

    Attributes:
        cell_px (int): cell edge in pixels.
        covered_cells (int): cells covered over more than half their nominal area.
        area_px (int): covered_cells * cell_px**2.
        mixed_cells (int): cells that are neither empty nor fully covered.
        total_cells (int): cells in the grid, edge cells included.
    """

    cell_px: int
    covered_cells: int
    area_px: int
    mixed_cells: int
    total_cells: int


def cell_counts(mask: BinaryMask, cell_px: int) -> np.ndarray:
    """Foreground pixel count of every grid cell, anchored at the origin."""
    rows = -(-mask.height // cell_px)
    cols = -(-mask.width // cell_px)
    padded = np.zeros((rows * cell_px, cols * cell_px), dtype=np.int64)
    padded[: mask.height, : mask.width] = mask.data
    return padded.reshape(rows, cell_px, cols, cell_px).sum(axis=(1, 3))


def grid_area(mask: BinaryMask, cell_px: int) -> GridEstimate:
    """
    Counts a cell as leaf when foreground covers strictly more than half of it. Partial
    cells at the right and bottom edges are judged against the full cell_px**2 area.

    Args:
        mask (BinaryMask): leaf mask.
        cell_px (int): cell edge in pixels, at least 1.

    Returns:
        GridEstimate: covered cells and the estimated area in pixels.
    """
    if cell_px < 1:
        raise ValueError(f"cell_px must be at least 1, got {cell_px}.")
    counts = cell_counts(mask, cell_px)
    nominal = cell_px * cell_px
    covered = int(np.count_nonzero(2 * counts > nominal))
    mixed = int(np.count_nonzero((counts > 0) & (counts < nominal)))
    return GridEstimate(
        cell_px=cell_px,
        covered_cells=covered,
        area_px=covered * nominal,
        mixed_cells=mixed,
        total_cells=int(counts.size),
    )
