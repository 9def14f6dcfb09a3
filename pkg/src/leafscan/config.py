# -*- coding: utf-8 -*-
import numpy as np

# Rec. 601 luma weights.
GRAYSCALE_WEIGHTS = np.array([0.2989, 0.5870, 0.1140])

# IEC 61966-2-1 linear sRGB -> XYZ (D65, 2 degree observer).
SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
D65_WHITE = SRGB_TO_XYZ.sum(axis=1)
CIE_EPSILON = 216 / 24389
CIE_KAPPA = 24389 / 27

DEFAULT_K = 2
DEFAULT_SEED = 42
DEFAULT_RESTARTS = 10
DEFAULT_MAX_ITERS = 100
DEFAULT_TOLERANCE = 1e-4

DEFAULT_GRID_CELL_PX = 4
BACKGROUND_L_TOLERANCE = 15.0
BACKGROUND_CHROMA_TOLERANCE = 12.0
BACKGROUND_REFERENCE_L = {"white": 100.0, "black": 0.0}
LOW_CONTRAST_DISTANCE = 5.0
OVERLAY_COLOR = (255, 0, 0)
OVERLAY_ALPHA = 0.5

DEFAULT_HISTOGRAM_BINS = 64
DEFAULT_HISTOGRAM_RANGE = (-128.0, 128.0)
HISTOGRAM_METRICS = ("intersection", "chi_square", "bhattacharyya")
DEFAULT_HISTOGRAM_METRIC = "intersection"

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")
EMIT_FLAGS = ("json", "masks", "overlay", "histograms", "preview")
DEFAULT_EMIT = ("json", "masks", "overlay", "histograms")
