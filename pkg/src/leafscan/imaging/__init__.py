# -*- coding: utf-8 -*-
from leafscan.imaging.raster import BinaryMask, GrayImage, RgbImage
from leafscan.imaging.codec import decode_image, encode_png, mask_to_gray, read_image, write_png
from leafscan.imaging.threshold import (
    binarize,
    count_black,
    count_white,
    otsu_threshold,
    to_grayscale,
)

__all__ = [
    "BinaryMask",
    "GrayImage",
    "RgbImage",
    "decode_image",
    "encode_png",
    "mask_to_gray",
    "read_image",
    "write_png",
    "binarize",
    "count_black",
    "count_white",
    "otsu_threshold",
    "to_grayscale",
]
