"""Density-adaptive kernel classifier.

The classifier places one Gaussian basis function on every training sample.
Each basis gets its own rate gamma_i = 1 / d_i, where d_i is the largest
Euclidean distance from sample i to its n nearest neighbors, so kernels
shrink in dense regions and widen in sparse ones. Signed weights are then
solved from the interpolation system A w = y and a query is labeled by the
sign of the weighted kernel sum.

Conventions fixed here:
  * labels live in {-1, +1}, with +1 reserved for the minority class,
  * the neighbor set of a sample excludes the sample itself,
  * a decision value of exactly zero maps to -1,
  * the linear system is A w = y with A[j, i] = k_i(x_j), i.e. row j is the
    evaluation point and column i the kernel center. A is asymmetric in
    general because gamma varies per center.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .errors import (
    BadNeighborCountError,
    DegenerateGeometryError,
    DimensionMismatchError,
    InvalidLabelError,
    LengthMismatchError,
    NDegenerateError,
    NonFiniteError,
    ShapeMismatchError,
    SingleClassError,
)
from .solver import Pseudoinverse, SolveStrategy, solve

DEFAULT_N_NEIGHBORS = 5


@dataclass
class Dataset:
    """Feature matrix with binary labels in {-1, +1}.

    Minority class is encoded +1 by convention. Single-class datasets are
    legal containers (generators produce them transiently) but are rejected
    by :func:`fit`.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: Optional[Sequence[str]] = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        self.labels = np.asarray(self.labels)
        if self.features.ndim != 2 or self.features.shape[1] < 1:
            raise ShapeMismatchError(f"features must be N x M with M >= 1, got {self.features.shape}")
        n = self.features.shape[0]
        if n < 2:
            raise NDegenerateError(f"need at least 2 samples, got {n}")
        if self.labels.shape != (n,):
            raise LengthMismatchError(f"labels shape {self.labels.shape} does not match N={n}")
        if not np.all(np.isin(self.labels, (-1, 1))):
            bad = np.unique(self.labels[~np.isin(self.labels, (-1, 1))])
            raise InvalidLabelError(f"labels must be -1 or +1, found {bad.tolist()}")
        self.labels = self.labels.astype(np.int64)
        if not np.all(np.isfinite(self.features)):
            raise NonFiniteError("features contain non-finite values")
        if self.feature_names is not None:
            self.feature_names = list(self.feature_names)
            if len(self.feature_names) != self.features.shape[1]:
                raise LengthMismatchError("feature_names length does not match feature count")

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class FloorPolicy:
    """Floor for near-zero neighbor scales (duplicate points).

    d_i is floored at relative_floor times the mean of the positive
    pre-floor scales, so the floor tracks the data's own distance units.
    """

    relative_floor: float = 1e-8

    def __post_init__(self):
        if not (self.relative_floor > 0.0 and np.isfinite(self.relative_floor)):
            raise ValueError(f"relative_floor must be positive, got {self.relative_floor}")


@dataclass(frozen=True)
class NeighborScales:
    """Per-sample bandwidth d and rate gamma = 1/d after flooring."""

    d: np.ndarray
    gamma: np.ndarray
    n_neighbors: int
    floor_applied: np.ndarray


@dataclass(frozen=True)
class AdaptiveKernelModel:
    """Trained state: training points, per-sample rates, and solved weights.

    fit_residual is the recomputed max-norm of A w - y, not an estimate.
    """

    train_features: np.ndarray
    train_labels: np.ndarray
    scales: NeighborScales
    weights: np.ndarray
    solve_strategy: SolveStrategy
    floor_policy: FloorPolicy
    fit_residual: float
    condition_estimate: float

    @property
    def n_features(self) -> int:
        return self.train_features.shape[1]


@dataclass(frozen=True)
class DecisionValue:
    """Raw discriminant value and the sign-derived label (0 maps to -1)."""

    value: float
    predicted_label: int


def compute_neighbor_scales(
    features: np.ndarray,
    n: int = DEFAULT_N_NEIGHBORS,
    floor_policy: FloorPolicy = FloorPolicy(),
) -> NeighborScales:
    """Max distance to the n nearest neighbors of each sample, then 1/d.

    The neighbor set excludes the sample itself; ties at the n-th rank are
    broken by lower index, which cannot change the reported maximum. Scales
    of exact duplicates are raised to the policy floor; if every scale is
    zero the geometry carries no usable density signal and we refuse.
    """
    x = np.asarray(features, dtype=float)
    if x.ndim != 2:
        raise ShapeMismatchError(f"features must be 2-D, got shape {x.shape}")
    n_samples = x.shape[0]
    if n_samples < 2:
        raise NDegenerateError(f"need at least 2 samples, got {n_samples}")
    if n < 1 or n >= n_samples:
        raise BadNeighborCountError(f"need 1 <= n < N, got n={n} with N={n_samples}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("features contain non-finite values")

    sq = cdist(x, x, "sqeuclidean")
    np.fill_diagonal(sq, np.inf)
    # n-th smallest distance to another sample == max over the n nearest.
    d_raw = np.sqrt(np.partition(sq, n - 1, axis=1)[:, n - 1])

    positive = d_raw[d_raw > 0.0]
    if positive.size == 0:
        raise DegenerateGeometryError("all neighbor distances are zero; every point is a duplicate")
    eps = floor_policy.relative_floor * float(positive.mean())
    d = np.maximum(d_raw, eps)
    return NeighborScales(
        d=d,
        gamma=1.0 / d,
        n_neighbors=n,
        floor_applied=d_raw < eps,
    )


def kernel_value(center: np.ndarray, gamma_center: float, query: np.ndarray) -> float:
    """Adaptive Gaussian basis: exp(-gamma * squared distance), in (0, 1]."""
    c = np.asarray(center, dtype=float)
    q = np.asarray(query, dtype=float)
    if c.shape != q.shape or c.ndim != 1:
        raise ShapeMismatchError(f"center {c.shape} and query {q.shape} must be equal-length vectors")
    if not (gamma_center > 0.0 and np.isfinite(gamma_center)):
        raise ValueError(f"gamma_center must be positive and finite, got {gamma_center}")
    if not (np.all(np.isfinite(c)) and np.all(np.isfinite(q))):
        raise NonFiniteError("center or query contains non-finite values")
    diff = q - c
    return float(np.exp(-gamma_center * float(np.dot(diff, diff))))


def design_from_gamma(features: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """Design matrix A[j, i] = exp(-gamma[i] * ||x_j - x_i||^2).

    Shared by the adaptive classifier and the fixed-bandwidth baseline so
    that equal rate vectors produce bit-identical matrices.
    """
    x = np.asarray(features, dtype=float)
    g = np.asarray(gamma, dtype=float)
    if g.shape != (x.shape[0],):
        raise ShapeMismatchError(f"gamma shape {g.shape} does not match N={x.shape[0]}")
    sq = cdist(x, x, "sqeuclidean")
    return np.exp(-sq * g[np.newaxis, :])


def build_design_matrix(features: np.ndarray, scales: NeighborScales) -> np.ndarray:
    """Design matrix for the given per-sample scales; unit diagonal, asymmetric in general."""
    return design_from_gamma(features, scales.gamma)


def fit(
    dataset: Dataset,
    n: int = DEFAULT_N_NEIGHBORS,
    solve_strategy: SolveStrategy = Pseudoinverse(),
    floor_policy: FloorPolicy = FloorPolicy(),
) -> AdaptiveKernelModel:
    """Compute scales, build the design matrix, and solve A w = y.

    Raises SingleClassError when only one label is present; the discriminant
    would be a constant-sign surface and no boundary exists to learn.
    """
    if np.unique(dataset.labels).size < 2:
        raise SingleClassError("training data must contain both labels")
    scales = compute_neighbor_scales(dataset.features, n, floor_policy)
    a = build_design_matrix(dataset.features, scales)
    report = solve(a, dataset.labels.astype(float), solve_strategy)
    return AdaptiveKernelModel(
        train_features=dataset.features.copy(),
        train_labels=dataset.labels.copy(),
        scales=scales,
        weights=report.w,
        solve_strategy=solve_strategy,
        floor_policy=floor_policy,
        fit_residual=report.residual_max,
        condition_estimate=report.condition,
    )


def weighted_kernel_sum(
    train_features: np.ndarray,
    gamma: np.ndarray,
    weights: np.ndarray,
    queries: np.ndarray,
) -> np.ndarray:
    """Discriminant values sum_i w_i exp(-gamma[i] ||q - x_i||^2) for each query row.

    The dot product runs per query row so a batch call and a sequence of
    single-query calls produce bit-identical values.
    """
    q = np.asarray(queries, dtype=float)
    if q.ndim != 2:
        raise ShapeMismatchError(f"queries must be Q x M, got shape {q.shape}")
    if q.shape[1] != train_features.shape[1]:
        raise DimensionMismatchError(
            f"queries have {q.shape[1]} features, model expects {train_features.shape[1]}"
        )
    if not np.all(np.isfinite(q)):
        raise NonFiniteError("queries contain non-finite values")
    sq = cdist(q, train_features, "sqeuclidean")
    k = np.exp(-sq * gamma[np.newaxis, :])
    return np.array([float(np.dot(row, weights)) for row in k])


def decision_values(model: AdaptiveKernelModel, queries: np.ndarray) -> np.ndarray:
    """Vector of discriminant values for a Q x M query matrix."""
    return weighted_kernel_sum(model.train_features, model.scales.gamma, model.weights, queries)


def decision_function(model: AdaptiveKernelModel, query: np.ndarray) -> DecisionValue:
    """Discriminant value and sign label for a single query point."""
    q = np.asarray(query, dtype=float)
    if q.ndim != 1:
        raise DimensionMismatchError(f"query must be a 1-D vector, got shape {q.shape}")
    value = float(decision_values(model, q[np.newaxis, :])[0])
    return DecisionValue(value=value, predicted_label=1 if value > 0.0 else -1)


def labels_from_values(values: np.ndarray) -> np.ndarray:
    """Sign rule shared by all classifiers: strictly positive -> +1, else -1."""
    return np.where(np.asarray(values) > 0.0, 1, -1).astype(np.int64)


def predict_batch(model: AdaptiveKernelModel, queries: np.ndarray) -> np.ndarray:
    """Predicted labels for each query row, order preserved."""
    q = np.asarray(queries, dtype=float)
    if q.ndim != 2 or q.shape[0] < 1:
        raise ShapeMismatchError(f"queries must be Q x M with Q >= 1, got shape {q.shape}")
    return labels_from_values(decision_values(model, q))
