"""Internal comparison classifiers sharing the Dataset interface.

Three baselines, each isolating one comparison the adaptive classifier's
story rests on: a fixed-bandwidth kernel classifier (what the adaptive
method collapses to on uniform-density data), brute-force k-NN (a purely
local vote), and the constant majority-class predictor (the degenerate
high-accuracy strawman).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial.distance import cdist

from . import core
from .core import Dataset, FloorPolicy
from .errors import BadKError, DimensionMismatchError, SingleClassError
from .solver import Pseudoinverse, SolveStrategy, solve


@dataclass(frozen=True)
class ExplicitGamma:
    gamma: float

    def __post_init__(self):
        if not (self.gamma > 0.0 and np.isfinite(self.gamma)):
            raise ValueError(f"gamma must be positive and finite, got {self.gamma}")


@dataclass(frozen=True)
class MedianHeuristic:
    """gamma = 1 / median of the per-sample neighbor scales d_i."""

    n_neighbors: int = core.DEFAULT_N_NEIGHBORS


GammaPolicy = Union[ExplicitGamma, MedianHeuristic]


@dataclass(frozen=True)
class FixedBandwidthModel:
    """Same pipeline as the adaptive model but with one shared rate gamma."""

    train_features: np.ndarray
    train_labels: np.ndarray
    gamma: float
    weights: np.ndarray
    solve_strategy: SolveStrategy
    fit_residual: float
    condition_estimate: float

    @property
    def n_features(self) -> int:
        return self.train_features.shape[1]


def fit_fixed(
    dataset: Dataset,
    gamma_policy: GammaPolicy = MedianHeuristic(),
    solve_strategy: SolveStrategy = Pseudoinverse(),
    floor_policy: FloorPolicy = FloorPolicy(),
) -> FixedBandwidthModel:
    """Fit the fixed-bandwidth kernel classifier.

    Goes through the exact same design-matrix and solve code as the adaptive
    fit, just with a constant rate vector, so on uniform-density data the two
    produce bit-identical weights.
    """
    if np.unique(dataset.labels).size < 2:
        raise SingleClassError("training data must contain both labels")
    if isinstance(gamma_policy, MedianHeuristic):
        scales = core.compute_neighbor_scales(dataset.features, gamma_policy.n_neighbors, floor_policy)
        gamma = 1.0 / float(np.median(scales.d))
    else:
        gamma = gamma_policy.gamma
    gamma_vec = np.full(dataset.n_samples, gamma)
    a = core.design_from_gamma(dataset.features, gamma_vec)
    report = solve(a, dataset.labels.astype(float), solve_strategy)
    return FixedBandwidthModel(
        train_features=dataset.features.copy(),
        train_labels=dataset.labels.copy(),
        gamma=gamma,
        weights=report.w,
        solve_strategy=solve_strategy,
        fit_residual=report.residual_max,
        condition_estimate=report.condition,
    )


def fixed_decision_values(model: FixedBandwidthModel, queries: np.ndarray) -> np.ndarray:
    gamma_vec = np.full(model.train_features.shape[0], model.gamma)
    return core.weighted_kernel_sum(model.train_features, gamma_vec, model.weights, queries)


def predict_fixed(model: FixedBandwidthModel, queries: np.ndarray) -> np.ndarray:
    return core.labels_from_values(fixed_decision_values(model, queries))


@dataclass(frozen=True)
class KnnModel:
    train_features: np.ndarray
    train_labels: np.ndarray
    k: int


def fit_knn(dataset: Dataset, k: int) -> KnnModel:
    """Brute-force k-NN; there is nothing to fit beyond storing the data."""
    if k < 1 or k > dataset.n_samples:
        raise BadKError(f"need 1 <= k <= N, got k={k} with N={dataset.n_samples}")
    return KnnModel(
        train_features=dataset.features.copy(),
        train_labels=dataset.labels.copy(),
        k=k,
    )


def predict_knn(model: KnnModel, queries: np.ndarray) -> np.ndarray:
    """Majority vote of the k nearest training points; vote ties go to -1.

    Distance ties at the k-th rank are broken by lower training index
    (stable sort), keeping predictions deterministic.
    """
    q = np.atleast_2d(np.asarray(queries, dtype=float))
    if q.shape[1] != model.train_features.shape[1]:
        raise DimensionMismatchError(
            f"queries have {q.shape[1]} features, model expects {model.train_features.shape[1]}"
        )
    sq = cdist(q, model.train_features, "sqeuclidean")
    order = np.argsort(sq, axis=1, kind="stable")[:, : model.k]
    votes = model.train_labels[order].sum(axis=1)
    return core.labels_from_values(votes)


@dataclass(frozen=True)
class MajorityModel:
    label: int


def fit_majority(dataset: Dataset) -> MajorityModel:
    """Constant predictor of the more frequent training label; ties go to -1."""
    n_pos = int(np.count_nonzero(dataset.labels == 1))
    n_neg = dataset.n_samples - n_pos
    return MajorityModel(label=1 if n_pos > n_neg else -1)


def predict_majority(model: MajorityModel, queries: np.ndarray) -> np.ndarray:
    q = np.atleast_2d(np.asarray(queries))
    return np.full(q.shape[0], model.label, dtype=np.int64)
