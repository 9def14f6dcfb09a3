# -*- coding: utf-8 -*-
import io
import logging
import numpy as np

from pathlib import Path
from typing import Union
from PIL import Image, UnidentifiedImageError

from leafscan.errors import CorruptFileError, UnsupportedFormatError, ZeroDimensionError
from leafscan.imaging.raster import BinaryMask, GrayImage, RgbImage


logger = logging.getLogger(__name__)

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
JPEG_SIGNATURE = b"\xff\xd8\xff"
SIXTEEN_BIT_MODES = ("I;16", "I;16B", "I;16L", "I")


def sniff_format(payload: bytes) -> str:
    """
    Identifies the container from its magic bytes.

    Raises:
        UnsupportedFormatError: if the payload is neither PNG nor JPEG.
    """
    if payload.startswith(PNG_SIGNATURE):
        return "PNG"
    if payload.startswith(JPEG_SIGNATURE):
        return "JPEG"
    raise UnsupportedFormatError("input is neither a PNG nor a JPEG file.")


def decode_image(payload: bytes) -> RgbImage:
    """
    Decodes a PNG or JPEG file into an 8-bit RGB raster. Gray and palette sources are
    expanded to three channels, alpha is dropped and 16-bit gray samples are scaled to
    8 bits by rounded division by 257.

    Args:
        payload (bytes): encoded image file.

    Raises:
        UnsupportedFormatError: not a PNG or JPEG stream.
        CorruptFileError: truncated or otherwise undecodable stream, or one whose pixel
            count exceeds Pillow's decompression bomb limit.
        ZeroDimensionError: header declares a zero width or height.

    Returns:
        RgbImage: decoded raster.
    """
    container = sniff_format(payload)
    try:
        image = Image.open(io.BytesIO(payload))
        image.load()
    except (
        UnidentifiedImageError,
        Image.DecompressionBombError,
        OSError,
        SyntaxError,
        ValueError,
    ) as e:
        raise CorruptFileError(f"cannot decode {container} stream: {e}") from e

    width, height = image.size
    if width == 0 or height == 0:
        raise ZeroDimensionError(f"image has zero dimension {image.size}.")

    if image.mode in SIXTEEN_BIT_MODES:
        wide = np.asarray(image).astype(np.float64)
        gray = np.clip(np.rint(wide / 257.0), 0, 255).astype(np.uint8)
        return RgbImage(np.repeat(gray[:, :, np.newaxis], 3, axis=2))

    if image.mode != "RGB":
        logger.debug(f"converting {container} mode {image.mode} to RGB.")
        image = image.convert("RGB")
    return RgbImage(np.asarray(image, dtype=np.uint8))


def read_image(path: Union[str, Path]) -> RgbImage:
    return decode_image(Path(path).read_bytes())


def mask_to_gray(mask: BinaryMask) -> GrayImage:
    """Maps True to 255 and False to 0."""
    return GrayImage(np.where(mask.data, 255, 0).astype(np.uint8))


def encode_png(raster: Union[RgbImage, GrayImage, BinaryMask]) -> bytes:
    """
    Encodes a raster as PNG. Masks are written as 8-bit grayscale (0 black, 255 white).

    Args:
        raster: raster to encode.

    Returns:
        bytes: PNG file contents.
    """
    if isinstance(raster, BinaryMask):
        raster = mask_to_gray(raster)
    mode = "RGB" if isinstance(raster, RgbImage) else "L"
    buffer = io.BytesIO()
    Image.fromarray(np.asarray(raster.data), mode=mode).save(buffer, format="PNG")
    return buffer.getvalue()


def write_png(raster: Union[RgbImage, GrayImage, BinaryMask], path: Union[str, Path]) -> None:
    Path(path).write_bytes(encode_png(raster))
