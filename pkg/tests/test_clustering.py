# -*- coding: utf-8 -*-
import itertools
import numpy as np
import pytest

from collections import defaultdict
from scipy.spatial.distance import cdist

from leafscan.clustering import (
    KMeans,
    KMeansConfig,
    euclidean_distance,
    kmeans_fit,
    standardize,
)
from leafscan.clustering.preprocessing import destandardize
from leafscan.errors import DimensionMismatchError, NonFiniteInputError, TooFewPointsError


def _two_groups(rng: np.random.Generator, size: int = 50) -> tuple:
    groups = []
    for centre in ((0.0, 0.0), (10.0, 10.0)):
        angle = rng.uniform(0, 2 * np.pi, size)
        radius = rng.uniform(0, 0.1, size)
        groups.append(np.column_stack([np.cos(angle), np.sin(angle)]) * radius[:, None] + centre)
    return groups


def _optimal_two_split(points: np.ndarray) -> float:
    best = np.inf
    for labels in itertools.product((0, 1), repeat=points.shape[0]):
        labels = np.array(labels)
        if labels.min() == labels.max():
            continue
        sse = sum(
            float(((points[labels == c] - points[labels == c].mean(axis=0)) ** 2).sum())
            for c in (0, 1)
        )
        best = min(best, sse)
    return best


def test_euclidean_distance_examples():
    assert euclidean_distance((0, 0), (3, 4)) == 5.0
    assert euclidean_distance((1.5, -2.0), (1.5, -2.0)) == 0.0
    assert euclidean_distance((1, 2, 3), (4, 6, 3)) == 5.0


def test_euclidean_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        euclidean_distance((0, 0), (1, 2, 3))


def test_standardize_examples():
    standardized, params = standardize(np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]]))

    assert standardized[:, 0] == pytest.approx([-1.2247, 0.0, 1.2247], abs=1e-3)
    assert standardized[:, 1].tolist() == [0.0, 0.0, 0.0]
    assert params[1].tolist() == [5.0, 0.0]
    assert destandardize(standardized, params) == pytest.approx(
        np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    )


def test_standardize_is_idempotent():
    once, _ = standardize(np.random.default_rng(0).normal(3.0, 2.0, size=(100, 2)))
    twice, _ = standardize(once)

    assert np.max(np.abs(twice - once)) < 1e-9


def test_each_point_its_own_cluster():
    points = np.array([[0.0, 0.0], [5.0, 0.0], [0.0, 5.0]])
    model = kmeans_fit(points, KMeansConfig(k=3))

    assert model.inertia == 0.0
    assert sorted(map(tuple, model.centroids)) == sorted(map(tuple, points))


def test_two_separated_groups():
    first, second = _two_groups(np.random.default_rng(5))
    model = kmeans_fit(np.vstack([first, second]), KMeansConfig(k=2))

    centroids = model.centroids[np.argsort(model.centroids[:, 0])]
    expected_sse = sum(float(((g - g.mean(axis=0)) ** 2).sum()) for g in (first, second))
    assert np.linalg.norm(centroids[0] - first.mean(axis=0)) < 0.2
    assert np.linalg.norm(centroids[1] - second.mean(axis=0)) < 0.2
    assert model.inertia == pytest.approx(expected_sse, abs=1e-6)


def test_restarts_reach_global_optimum():
    rng = np.random.default_rng(2024)
    hits = 0
    for instance in range(100):
        points = rng.normal(size=(8, 2))
        optimum = _optimal_two_split(points)
        model = kmeans_fit(points, KMeansConfig(k=2, restarts=20, seed=instance))

        assert model.inertia >= optimum - 1e-9
        hits += model.inertia <= optimum + 1e-9
    assert hits >= 95


def test_lloyd_trace_never_increases():
    rng = np.random.default_rng(17)
    for instance in range(50):
        points = rng.normal(size=(500, 2)) + rng.integers(0, 3, size=(500, 1)) * 4.0
        steps = defaultdict(list)

        def trace(restart, step, inertia):
            steps[restart].append(inertia)

        KMeans(points, KMeansConfig(k=3, restarts=3, seed=instance), trace=trace).fit_model()

        assert len(steps) == 3
        for values in steps.values():
            assert all(b <= a * (1 + 1e-12) + 1e-12 for a, b in zip(values, values[1:]))


def test_labels_point_to_nearest_centroid():
    points = np.random.default_rng(8).normal(size=(300, 2))
    model = kmeans_fit(points, KMeansConfig(k=4))
    distances = cdist(points, model.centroids, "sqeuclidean")

    assert np.array_equal(model.labels, np.argmin(distances, axis=1))
    assert model.inertia == pytest.approx(distances.min(axis=1).sum())
    assert model.cluster_sizes().sum() == 300


def test_scaling_by_power_of_two():
    points = np.random.default_rng(9).normal(size=(200, 2))
    config = KMeansConfig(k=3, tol=0.0)
    model = kmeans_fit(points, config)
    scaled = kmeans_fit(points * 4.0, config)

    assert np.array_equal(model.labels, scaled.labels)
    assert np.array_equal(model.centroids * 4.0, scaled.centroids)
    assert scaled.inertia == model.inertia * 16.0


def test_fit_is_deterministic():
    points = np.random.default_rng(10).normal(size=(400, 2))
    config = KMeansConfig(k=3, seed=123)
    first = kmeans_fit(points, config)
    second = kmeans_fit(points, config)
    threaded = kmeans_fit(points, KMeansConfig(k=3, seed=123, n_jobs=2))

    for other in (second, threaded):
        assert np.array_equal(first.labels, other.labels)
        assert np.array_equal(first.centroids, other.centroids)
        assert first.inertia == other.inertia
        assert first.restart == other.restart


def test_point_order_does_not_matter_with_fixed_start():
    rng = np.random.default_rng(12)
    points = rng.normal(size=(150, 2))
    start = np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    perm = rng.permutation(150)
    config = KMeansConfig(k=3)

    model = KMeans(points, config, initial_centroids=start).fit_model()
    shuffled = KMeans(points[perm], config, initial_centroids=start).fit_model()

    assert np.array_equal(model.labels[perm], shuffled.labels)
    assert np.allclose(model.centroids, shuffled.centroids)


def test_centroids_accumulate_in_point_order():
    rng = np.random.default_rng(14)
    points = rng.normal(scale=1e3, size=(1000, 2)) + rng.normal(scale=1e-3, size=(1000, 2))
    start = points[:3].copy()
    model = KMeans(points, KMeansConfig(k=3, max_iters=1), initial_centroids=start).fit_model()

    labels = cdist(points, start, "sqeuclidean").argmin(axis=1)
    for cluster in range(3):
        total = np.zeros(2)
        for point in points[labels == cluster]:
            total = total + point
        assert np.array_equal(model.centroids[cluster], total / (labels == cluster).sum())


def test_standardized_fit_reports_feature_units():
    first, second = _two_groups(np.random.default_rng(21))
    points = np.vstack([first, second]) * np.array([1.0, 50.0])
    model = kmeans_fit(points, KMeansConfig(k=2, standardize=True))

    centroids = model.feature_centroids()
    centroids = centroids[np.argsort(centroids[:, 0])]
    assert np.allclose(centroids[0], first.mean(axis=0) * [1.0, 50.0])
    assert np.allclose(centroids[1], second.mean(axis=0) * [1.0, 50.0])


def test_predict_matches_fit_labels():
    points = np.random.default_rng(13).normal(size=(100, 2))
    clustering = KMeans(points, KMeansConfig(k=2))
    model = clustering.fit_model()

    assert np.array_equal(clustering.predict(points), model.labels)


def test_too_few_points():
    with pytest.raises(TooFewPointsError):
        kmeans_fit(np.zeros((2, 2)), KMeansConfig(k=3))


def test_non_finite_features():
    with pytest.raises(NonFiniteInputError):
        kmeans_fit(np.array([[0.0, 1.0], [np.nan, 2.0], [3.0, 4.0]]), KMeansConfig(k=2))


def test_invalid_config():
    with pytest.raises(ValueError):
        KMeansConfig(restarts=0)
    with pytest.raises(ValueError):
        KMeansConfig(tol=-1.0)
