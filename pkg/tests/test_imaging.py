# -*- coding: utf-8 -*-
import io
import json
import numpy as np
import pytest

from PIL import Image

from conftest import make_leaf, write_leaf_fixture
from leafscan.errors import (
    CorruptFileError,
    DegenerateHistogramError,
    UnsupportedFormatError,
    ZeroDimensionError,
)
from leafscan.imaging import (
    BinaryMask,
    GrayImage,
    RgbImage,
    binarize,
    count_black,
    count_white,
    decode_image,
    encode_png,
    otsu_threshold,
    read_image,
    to_grayscale,
)


def _encode(array: np.ndarray, format: str = "PNG") -> bytes:
    buffer = io.BytesIO()
    Image.fromarray(array).save(buffer, format=format)
    return buffer.getvalue()


def _scan_otsu(gray: np.ndarray) -> int:
    counts = np.bincount(gray.ravel(), minlength=256).astype(np.float64)
    levels = np.arange(256, dtype=np.float64)
    total = counts.sum()
    best_level, best_score = 0, -1.0
    for t in range(255):
        w0 = counts[: t + 1].sum()
        w1 = total - w0
        if w0 == 0 or w1 == 0:
            continue
        mu0 = (levels[: t + 1] * counts[: t + 1]).sum() / w0
        mu1 = (levels[t + 1 :] * counts[t + 1 :]).sum() / w1
        score = w0 * w1 * (mu0 - mu1) ** 2
        if score > best_score * (1 + 1e-12):
            best_level, best_score = t, score
    return best_level


def test_decode_single_pixel_png():
    img = decode_image(_encode(np.array([[[10, 20, 30]]], dtype=np.uint8)))

    assert img.shape == (1, 1)
    assert img.data[0, 0].tolist() == [10, 20, 30]


def test_decode_white_png():
    img = decode_image(_encode(np.full((2, 2, 3), 255, dtype=np.uint8)))

    assert img.size == 4
    assert np.all(img.data == 255)


def test_decode_jpeg_keeps_dimensions():
    leaf = make_leaf(height=90, width=70)
    img = decode_image(_encode(leaf.image.data, format="JPEG"))

    assert (img.height, img.width) == (90, 70)


def test_decoded_jpeg_matches_generator_manifest(tmp_path):
    path = write_leaf_fixture(tmp_path, "leaf.jpg", make_leaf(height=90, width=70), quality=75)
    manifest = json.loads(path.with_suffix(".json").read_text())
    img = read_image(path)

    assert (img.height, img.width) == (manifest["height"], manifest["width"])
    assert img.data.dtype == np.uint8


def test_decode_gray_and_sixteen_bit_png():
    gray = decode_image(_encode(np.array([[0, 128, 255]], dtype=np.uint8)))
    assert gray.data[0].tolist() == [[0, 0, 0], [128, 128, 128], [255, 255, 255]]

    wide = decode_image(_encode(np.array([[0, 25700, 65535]], dtype=np.uint16)))
    assert wide.data[0, :, 0].tolist() == [0, 100, 255]


def test_decode_rejects_unknown_format():
    with pytest.raises(UnsupportedFormatError):
        decode_image(b"GIF89a\x01\x00\x01\x00")


def test_decode_rejects_truncated_png():
    payload = _encode(make_leaf().image.data)

    with pytest.raises(CorruptFileError):
        decode_image(payload[: len(payload) // 3])


def test_decode_rejects_decompression_bomb(monkeypatch):
    monkeypatch.setattr(Image, "MAX_IMAGE_PIXELS", 100)

    with pytest.raises(CorruptFileError):
        decode_image(_encode(np.zeros((20, 20, 3), dtype=np.uint8)))


def test_raster_rejects_zero_dimension():
    with pytest.raises(ZeroDimensionError):
        RgbImage(np.zeros((0, 4, 3), dtype=np.uint8))


def test_encoded_mask_is_black_and_white():
    mask = BinaryMask(np.array([[True, False]]))
    decoded = decode_image(encode_png(mask))

    assert decoded.data[0, :, 0].tolist() == [255, 0]


def test_grayscale_examples():
    img = RgbImage(np.array([[[255, 255, 255], [0, 0, 0], [255, 0, 0]]], dtype=np.uint8))

    assert to_grayscale(img).data[0].tolist() == [255, 0, 76]


def test_grayscale_commutes_with_pixel_order():
    rng = np.random.default_rng(5)
    data = rng.integers(0, 256, size=(12, 9, 3), dtype=np.uint8)
    perm = rng.permutation(12 * 9)
    shuffled = data.reshape(-1, 3)[perm].reshape(12, 9, 3)

    gray = to_grayscale(RgbImage(data)).data.ravel()
    assert np.array_equal(to_grayscale(RgbImage(shuffled)).data.ravel(), gray[perm])


def test_otsu_bimodal():
    gray = GrayImage(np.array([[50] * 8 + [200] * 8], dtype=np.uint8))
    threshold = otsu_threshold(gray)

    assert 50 <= threshold < 200
    assert count_white(binarize(gray, threshold)) == 8


def test_otsu_constant_image():
    with pytest.raises(DegenerateHistogramError):
        otsu_threshold(GrayImage(np.full((4, 4), 128, dtype=np.uint8)))


def test_otsu_matches_exhaustive_scan():
    rng = np.random.default_rng(7)
    for _ in range(5):
        clumps = np.concatenate([rng.normal(60, 10, 1000), rng.normal(190, 10, 1000)])
        gray = np.clip(np.rint(clumps), 0, 255).astype(np.uint8).reshape(40, 50)
        threshold = otsu_threshold(GrayImage(gray))

        assert 80 <= threshold <= 170
        assert threshold == _scan_otsu(gray)

    for _ in range(50):
        gray = rng.integers(0, 256, size=(16, 16), dtype=np.uint8)
        assert otsu_threshold(GrayImage(gray)) == _scan_otsu(gray)


def test_binarize_examples():
    zeros = GrayImage(np.zeros((3, 3), dtype=np.uint8))
    full = GrayImage(np.full((3, 3), 255, dtype=np.uint8))
    row = GrayImage(np.array([[10, 128, 200]], dtype=np.uint8))

    assert not binarize(zeros, 0).data.any()
    assert binarize(full, 0).data.all()
    assert binarize(row, 128).data[0].tolist() == [False, False, True]


def test_binarize_rejects_out_of_range_threshold():
    with pytest.raises(ValueError):
        binarize(GrayImage(np.zeros((2, 2), dtype=np.uint8)), 256)


def test_pixel_counts():
    checkerboard = BinaryMask(np.indices((4, 4)).sum(axis=0) % 2 == 0)

    assert count_white(BinaryMask(np.zeros((10, 10), dtype=bool))) == 0
    assert count_white(BinaryMask(np.ones((10, 10), dtype=bool))) == 100
    assert count_white(checkerboard) == 8
    assert count_black(checkerboard) == 8


def test_white_count_falls_with_threshold():
    gray = GrayImage(np.random.default_rng(3).integers(0, 256, size=(32, 32), dtype=np.uint8))
    counts = [count_white(binarize(gray, t)) for t in range(256)]

    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert counts[-1] == 0
