# -*- coding: utf-8 -*-
import io
import json
import numpy as np
import pytest

from dataclasses import dataclass
from pathlib import Path
from PIL import Image

from leafscan.imaging.raster import RgbImage

GREEN = (60, 140, 60)
BROWN = (150, 110, 40)
BACKDROPS = {"white": (255, 255, 255), "black": (0, 0, 0)}
YELLOW = (200, 190, 60)


@dataclass(frozen=True)
class SyntheticLeaf:
    image: RgbImage
    leaf: np.ndarray
    lesion: np.ndarray

    @property
    def healthy(self) -> np.ndarray:
        return self.leaf & ~self.lesion

    @property
    def lesion_percent(self) -> float:
        return 100.0 * self.lesion.sum() / self.leaf.sum()


def make_leaf(
    height: int = 120,
    width: int = 160,
    background: str = "white",
    lesion_radius: float = 25.0,
    lesion_color: tuple = BROWN,
) -> SyntheticLeaf:
    """
    Green ellipse filling most of the frame with one lesion disk at its centre. A zero
    lesion_radius gives a lesion-free leaf.
    """
    rows, cols = np.mgrid[:height, :width]
    cy, cx = (height - 1) / 2, (width - 1) / 2
    leaf = ((rows - cy) / (0.375 * height)) ** 2 + ((cols - cx) / (0.4375 * width)) ** 2 <= 1.0
    lesion = leaf & ((rows - cy) ** 2 + (cols - cx) ** 2 <= lesion_radius**2)

    data = np.empty((height, width, 3), dtype=np.uint8)
    data[...] = BACKDROPS[background]
    data[leaf] = GREEN
    data[lesion] = lesion_color
    return SyntheticLeaf(image=RgbImage(data), leaf=leaf, lesion=lesion)


def make_square(background: str = "black", size: int = 30, square: int = 10) -> tuple:
    data = np.empty((size, size, 3), dtype=np.uint8)
    data[...] = BACKDROPS[background]
    start = (size - square) // 2
    truth = np.zeros((size, size), dtype=bool)
    truth[start : start + square, start : start + square] = True
    data[truth] = GREEN
    return RgbImage(data), truth


@pytest.fixture
def leaf() -> SyntheticLeaf:
    return make_leaf()


@pytest.fixture
def black_leaf() -> SyntheticLeaf:
    return make_leaf(background="black")


@pytest.fixture
def healthy_leaf() -> SyntheticLeaf:
    return make_leaf(lesion_radius=0.0)


def write_leaf_fixture(directory: Path, name: str, leaf: SyntheticLeaf, **save) -> Path:
    """
    Saves a synthetic leaf through Pillow (format from the suffix of name) next to a
    <stem>.json manifest recording what was generated.
    """
    path = directory / name
    buffer = io.BytesIO()
    format = Image.registered_extensions()[path.suffix.lower()]
    Image.fromarray(leaf.image.data).save(buffer, format=format, **save)
    path.write_bytes(buffer.getvalue())
    manifest = {
        "height": leaf.image.height,
        "width": leaf.image.width,
        "lesion_percent": leaf.lesion_percent,
    }
    path.with_suffix(".json").write_text(json.dumps(manifest))
    return path
