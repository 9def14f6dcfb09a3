# -*- coding: utf-8 -*-
import numpy as np

from abc import ABC, abstractmethod

from leafscan.errors import NonFiniteInputError


class Clustering(ABC):
    """
    Abstract class representing a clustering model over a continuous feature matrix.

    Attributes:
        data (np.ndarray): n x d feature matrix used for fitting.
        solution: fitted result, None until fit_model has run.
    """

    def __init__(self, data: np.ndarray) -> None:
        data = np.asarray(data, dtype=np.float64)
        if data.ndim == 1:
            data = data.reshape(-1, 1)
        if data.ndim != 2:
            raise ValueError(f"features must be an n x d matrix, got shape {data.shape}.")
        if not np.all(np.isfinite(data)):
            raise NonFiniteInputError("features contain NaN or infinite values.")
        self.data = data
        self.solution = None

    @property
    def number_of_points(self) -> int:
        return int(self.data.shape[0])

    @property
    def number_of_features(self) -> int:
        return int(self.data.shape[1])

    @property
    def inertia(self) -> float:
        pass

    @abstractmethod
    def fit_model(self):
        pass

    @abstractmethod
    def _cost_function(self, centroids: np.ndarray, labels: np.ndarray) -> float:
        pass

    @abstractmethod
    def predict(self, features: np.ndarray) -> np.ndarray:
        pass

    def _has_solution(self) -> bool:
        return self.solution is not None
