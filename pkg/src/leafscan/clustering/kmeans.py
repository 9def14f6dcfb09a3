# -*- coding: utf-8 -*-
import logging
import numpy as np

from dataclasses import dataclass
from typing import Callable, Optional
from joblib import Parallel, delayed
from scipy.spatial.distance import cdist

from leafscan.clustering.model import Clustering
from leafscan.clustering.preprocessing import destandardize, standardize
from leafscan.config import (
    DEFAULT_K,
    DEFAULT_MAX_ITERS,
    DEFAULT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_TOLERANCE,
)
from leafscan.errors import DimensionMismatchError, TooFewPointsError


logger = logging.getLogger(__name__)

# Called with (restart, step, inertia) after every assignment step.
TraceHook = Callable[[int, int, float], None]


@dataclass(frozen=True)
class KMeansConfig:
    """
    Attributes:
        k (int): number of clusters, at least 1.
        max_iters (int): cap on Lloyd iterations per restart.
        tol (float): convergence threshold on the largest centroid displacement.
        seed (int): 64-bit seed; each restart draws from its own spawned stream.
        restarts (int): number of independent k-means++ seeded runs.
        standardize (bool): fit on column-standardized features.
        n_jobs (int): joblib worker count for restarts; the chosen model does not
            depend on it.
    """

    k: int = DEFAULT_K
    max_iters: int = DEFAULT_MAX_ITERS
    tol: float = DEFAULT_TOLERANCE
    seed: int = DEFAULT_SEED
    restarts: int = DEFAULT_RESTARTS
    standardize: bool = False
    n_jobs: int = 1

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}.")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}.")
        if self.tol < 0:
            raise ValueError(f"tol must be non-negative, got {self.tol}.")
        if self.restarts < 1:
            raise ValueError(f"restarts must be at least 1, got {self.restarts}.")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}.")
        if self.n_jobs == 0:
            raise ValueError("n_jobs must be non-zero.")


@dataclass(frozen=True, eq=False)
class KMeansModel:
    """
    Fitted k-means solution.

    Attributes:
        centroids (np.ndarray): k x d centroid matrix, in standardized units when
            standardization_params is set.
        labels (np.ndarray): cluster index of every point.
        inertia (float): total squared Euclidean distance of points to their centroid.
        iterations_run (int): Lloyd iterations of the selected restart.
        standardization_params (np.ndarray, optional): d x 2 per-column (mean, stddev).
        restart (int): index of the selected restart.
    """

    centroids: np.ndarray
    labels: np.ndarray
    inertia: float
    iterations_run: int
    standardization_params: Optional[np.ndarray] = None
    restart: int = 0

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    def feature_centroids(self) -> np.ndarray:
        """Centroids expressed in the units of the original features."""
        if self.standardization_params is None:
            return self.centroids
        return destandardize(self.centroids, self.standardization_params)

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)


class KMeans(Clustering):
    """
    Lloyd's algorithm with k-means++ seeding, restarts and empty-cluster repair.
    Equal distances resolve to the lowest centroid index, and centroid sums are
    accumulated in ascending point order, so a fixed seed reproduces a model bit for bit.
    """

    def __init__(
        self,
        data: np.ndarray,
        config: KMeansConfig = KMeansConfig(),
        initial_centroids: Optional[np.ndarray] = None,
        trace: Optional[TraceHook] = None,
    ) -> None:
        super().__init__(data)
        self.config = config
        self.trace = trace
        self.standardization_params = None
        self.features = self.data

        if self.number_of_points < config.k:
            raise TooFewPointsError(
                f"{self.number_of_points} points cannot form {config.k} clusters."
            )

        if config.standardize:
            self.features, self.standardization_params = standardize(self.data)

        self.initial_centroids = None
        if initial_centroids is not None:
            initial_centroids = np.asarray(initial_centroids, dtype=np.float64)
            if initial_centroids.shape != (config.k, self.number_of_features):
                raise DimensionMismatchError(
                    f"initial centroids must have shape {(config.k, self.number_of_features)}, "
                    f"got {initial_centroids.shape}."
                )
            self.initial_centroids = initial_centroids

    @property
    def inertia(self) -> float:
        if not self._has_solution():
            raise ValueError("model has not been fitted.")
        return self.solution.inertia

    def fit_model(self) -> KMeansModel:
        """
        Runs every restart and keeps the model with the lowest (inertia, restart index).

        Returns:
            KMeansModel: the selected solution.
        """
        if self.initial_centroids is not None:
            runs = [self._run_lloyd(0, self.initial_centroids.copy())]
        else:
            streams = np.random.SeedSequence(self.config.seed).spawn(self.config.restarts)
            runs = Parallel(n_jobs=self.config.n_jobs, prefer="threads")(
                delayed(self._run_restart)(restart, stream)
                for restart, stream in enumerate(streams)
            )

        self.solution = min(runs, key=lambda run: (run.inertia, run.restart))
        if np.any(self.solution.cluster_sizes() == 0):
            logger.warning(
                f"k-means left an empty cluster; the points do not separate into "
                f"{self.config.k} groups."
            )
        logger.debug(
            f"k-means selected restart {self.solution.restart} of {len(runs)} "
            f"with inertia {self.solution.inertia:.6g}."
        )
        return self.solution

    def predict(self, features: np.ndarray) -> np.ndarray:
        if not self._has_solution():
            raise ValueError("model has not been fitted.")
        features = np.asarray(features, dtype=np.float64).reshape(-1, self.number_of_features)
        if self.standardization_params is not None:
            mean, stddev = self.standardization_params.T
            features = (features - mean) / np.where(stddev == 0, 1.0, stddev)
            features[:, stddev == 0] = 0.0
        labels, _ = self._assign(features, self.solution.centroids)
        return labels

    def _cost_function(self, centroids: np.ndarray, labels: np.ndarray) -> float:
        residuals = self.features - centroids[labels]
        return float(np.sum(residuals**2))

    def _run_restart(self, restart: int, stream: np.random.SeedSequence) -> KMeansModel:
        rng = np.random.default_rng(stream)
        return self._run_lloyd(restart, self._seed_centroids(rng))

    def _seed_centroids(self, rng: np.random.Generator) -> np.ndarray:
        """
        k-means++ seeding: each further centre is drawn with probability proportional
        to its squared distance from the nearest centre chosen so far.
        """
        n = self.number_of_points
        chosen = [int(rng.integers(n))]
        closest = cdist(self.features, self.features[chosen], "sqeuclidean").ravel()
        for _ in range(1, self.config.k):
            total = closest.sum()
            if total > 0:
                index = int(rng.choice(n, p=closest / total))
            else:
                index = int(rng.integers(n))
            chosen.append(index)
            distance = cdist(self.features, self.features[[index]], "sqeuclidean").ravel()
            closest = np.minimum(closest, distance)
        return self.features[chosen].copy()

    @staticmethod
    def _assign(features: np.ndarray, centroids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        distances = cdist(features, centroids, "sqeuclidean")
        labels = np.argmin(distances, axis=1)
        return labels, distances[np.arange(features.shape[0]), labels]

    def _update(self, labels: np.ndarray, centroids: np.ndarray) -> np.ndarray:
        sizes = np.bincount(labels, minlength=self.config.k)
        sums = np.stack(
            [
                np.bincount(labels, weights=column, minlength=self.config.k)
                for column in self.features.T
            ],
            axis=1,
        )
        updated = centroids.copy()
        filled = sizes > 0
        updated[filled] = sums[filled] / sizes[filled, np.newaxis]
        return updated

    def _repair_empty_clusters(
        self, labels: np.ndarray, distances: np.ndarray, centroids: np.ndarray
    ) -> np.ndarray:
        """
        Moves every empty centroid onto the point farthest from its own centroid. Points
        already used for a repair are not picked twice. Returns the relabelled points.
        """
        sizes = np.bincount(labels, minlength=self.config.k)
        empty = np.flatnonzero(sizes == 0)
        if empty.size == 0:
            return labels

        labels = labels.copy()
        distances = distances.copy()
        for cluster in empty:
            farthest = int(np.argmax(distances))
            if distances[farthest] <= 0:
                break
            logger.debug(f"re-seeding empty cluster {cluster} at point {farthest}.")
            centroids[cluster] = self.features[farthest]
            labels[farthest] = cluster
            distances[farthest] = 0.0
        return labels

    def _run_lloyd(self, restart: int, centroids: np.ndarray) -> KMeansModel:
        step = 0
        iterations = 0
        for iterations in range(1, self.config.max_iters + 1):
            labels, distances = self._assign(self.features, centroids)
            step += 1
            self._emit_trace(restart, step, float(distances.sum()))

            previous = centroids.copy()
            labels = self._repair_empty_clusters(labels, distances, centroids)
            updated = self._update(labels, centroids)
            shift = float(np.max(np.linalg.norm(updated - previous, axis=1)))
            centroids = updated
            if shift <= self.config.tol:
                break

        labels, distances = self._assign(self.features, centroids)
        inertia = float(distances.sum())
        self._emit_trace(restart, step + 1, inertia)

        return KMeansModel(
            centroids=centroids,
            labels=labels,
            inertia=inertia,
            iterations_run=iterations,
            standardization_params=self.standardization_params,
            restart=restart,
        )

    def _emit_trace(self, restart: int, step: int, inertia: float) -> None:
        if self.trace is not None:
            self.trace(restart, step, inertia)


def kmeans_fit(features: np.ndarray, config: KMeansConfig = KMeansConfig()) -> KMeansModel:
    """
    Fits k-means to an n x d feature matrix.

    Raises:
        TooFewPointsError: fewer points than clusters.
        NonFiniteInputError: features contain NaN or infinity.

    Returns:
        KMeansModel: lowest-inertia model over all restarts.
    """
    return KMeans(features, config).fit_model()
