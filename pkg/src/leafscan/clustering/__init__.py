# -*- coding: utf-8 -*-
from leafscan.clustering.kmeans import KMeans, KMeansConfig, KMeansModel, kmeans_fit
from leafscan.clustering.preprocessing import euclidean_distance, standardize

__all__ = [
    "KMeans",
    "KMeansConfig",
    "KMeansModel",
    "kmeans_fit",
    "euclidean_distance",
    "standardize",
]
