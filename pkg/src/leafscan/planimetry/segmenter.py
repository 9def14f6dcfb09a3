# -*- coding: utf-8 -*-
import dataclasses
import logging
import numpy as np

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from leafscan.clustering.kmeans import KMeansConfig, KMeansModel, kmeans_fit
from leafscan.clustering.preprocessing import euclidean_distance
from leafscan.config import DEFAULT_K, LOW_CONTRAST_DISTANCE
from leafscan.errors import EmptyForegroundError
from leafscan.imaging.raster import BinaryMask, RgbImage
from leafscan.planimetry.background import remove_background
from leafscan.utilities.colorspace import LabPixelMatrix, image_to_ab_matrix

logger = logging.getLogger(__name__)

LOW_CONTRAST = "low_contrast"


class Role(Enum):
    UNAFFECTED = "unaffected"
    AFFECTED = "affected"
    BACKGROUND = "background"


@dataclass(frozen=True, eq=False)
class SegmentationResult:
    """
    Leaf pixels split into colour clusters with a role per cluster.

    Attributes:
        cluster_masks (list[BinaryMask]): one mask per cluster, pairwise disjoint.
        role_map (dict[int, Role]): role of every cluster index.
        model (KMeansModel): fitted clustering of the leaf's a*b* features.
        pixels (LabPixelMatrix): clustered features and their pixel coordinates.
        background (BinaryMask): pixels excluded before clustering.
        centroids_ab (np.ndarray): k x 2 cluster centroids in a*b* units.
        flags (tuple[str, ...]): warnings such as "low_contrast".
    """

    cluster_masks: list[BinaryMask]
    role_map: dict[int, Role]
    model: KMeansModel
    pixels: LabPixelMatrix
    background: BinaryMask
    centroids_ab: np.ndarray
    flags: tuple[str, ...] = ()

    @property
    def row_to_pixel(self) -> np.ndarray:
        return self.pixels.row_to_pixel

    @property
    def foreground(self) -> BinaryMask:
        return ~self.background

    @property
    def low_contrast(self) -> bool:
        return LOW_CONTRAST in self.flags

    def clusters_with_role(self, role: Role) -> list[int]:
        return [cluster for cluster, value in self.role_map.items() if value is role]

    def role_mask(self, role: Role) -> BinaryMask:
        if role is Role.BACKGROUND:
            return self.background
        combined = np.zeros(self.background.shape, dtype=bool)
        for cluster in self.clusters_with_role(role):
            combined |= self.cluster_masks[cluster].data
        return BinaryMask(combined)

    def row_roles(self) -> np.ndarray:
        """Role value of every clustered feature row."""
        roles = np.array([self.role_map[c].value for c in range(len(self.cluster_masks))])
        return roles[self.model.labels]


def assign_roles(
    centroids_ab: np.ndarray, low_contrast_distance: float = LOW_CONTRAST_DISTANCE
) -> tuple[dict[int, Role], tuple[str, ...]]:
    """
    Healthy tissue is green (a* < 0) and lesions are brown or yellow, the most reddish
    colour on the leaf. The cluster with the lowest a* is unaffected and the one with
    the highest is affected; intermediate clusters follow the sign of their a*.

    The split is flagged low contrast when the two extremes are closer than
    low_contrast_distance or when the affected cluster is still green (pale yellow
    lesions, JPEG chroma bleed). Only the first case is indistinguishable from a uniform
    leaf, so only then does every cluster fall back to the sign rule.

    Returns:
        tuple[dict[int, Role], tuple[str, ...]]: roles per cluster and flags.
    """
    a_star = centroids_ab[:, 0]
    order = sorted(range(len(a_star)), key=lambda cluster: (a_star[cluster], cluster))
    unaffected, affected = order[0], order[-1]

    separation = euclidean_distance(centroids_ab[affected], centroids_ab[unaffected])
    inseparable = separation < low_contrast_distance
    low_contrast = inseparable or a_star[affected] < 0

    roles = {}
    for cluster in range(len(a_star)):
        sign_role = Role.AFFECTED if a_star[cluster] >= 0 else Role.UNAFFECTED
        if inseparable:
            roles[cluster] = sign_role
        elif cluster == unaffected:
            roles[cluster] = Role.UNAFFECTED
        elif cluster == affected:
            roles[cluster] = Role.AFFECTED
        else:
            roles[cluster] = sign_role

    if low_contrast:
        logger.warning(
            f"low contrast segmentation: centroid separation {separation:.2f}, "
            f"most reddish a*={a_star[affected]:.2f}."
        )
        return roles, (LOW_CONTRAST,)
    return roles, ()


def segment_leaf(
    img: RgbImage,
    k: int = DEFAULT_K,
    cfg: KMeansConfig = KMeansConfig(),
    foreground: Optional[BinaryMask] = None,
    low_contrast_distance: float = LOW_CONTRAST_DISTANCE,
) -> SegmentationResult:
    """
    Clusters the a*b* colours of the leaf foreground and labels each cluster as
    affected or unaffected tissue.

    Args:
        img (RgbImage): leaf photograph.
        k (int): number of leaf clusters, at least 2; overrides cfg.k.
        cfg (KMeansConfig): clustering settings.
        foreground (BinaryMask, optional): leaf mask; remove_background is applied
            with default settings when omitted.
        low_contrast_distance (float): a*b* separation below which the split is
            flagged low contrast.

    Raises:
        EmptyForegroundError: no leaf pixels.
        TooFewPointsError: fewer leaf pixels than clusters.

    Returns:
        SegmentationResult: cluster masks, roles and the fitted model.
    """
    if k < 2:
        raise ValueError(f"segmentation needs at least 2 clusters, got {k}.")
    if foreground is None:
        foreground = remove_background(img)
    elif not foreground.data.any():
        raise EmptyForegroundError("foreground mask selects no leaf pixels.")

    cfg = dataclasses.replace(cfg, k=k)
    pixels = image_to_ab_matrix(img, include=foreground)
    model = kmeans_fit(pixels.features, cfg)
    centroids_ab = model.feature_centroids()

    rows, cols = pixels.row_to_pixel.T
    cluster_masks = []
    for cluster in range(k):
        mask = np.zeros(img.shape, dtype=bool)
        members = model.labels == cluster
        mask[rows[members], cols[members]] = True
        cluster_masks.append(BinaryMask(mask))

    role_map, flags = assign_roles(centroids_ab, low_contrast_distance)
    return SegmentationResult(
        cluster_masks=cluster_masks,
        role_map=role_map,
        model=model,
        pixels=pixels,
        background=~foreground,
        centroids_ab=centroids_ab,
        flags=flags,
    )
