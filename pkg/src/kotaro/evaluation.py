"""Experiment drivers: stratified k-fold CV and imbalance-ratio sweeps.

Every driver is deterministic in its seed. Substreams for repeats, trials,
training draws, and test draws are derived through numpy SeedSequence
spawning, so training and test randomness never share a stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from . import baselines, core, metrics
from .core import Dataset, FloorPolicy
from .errors import ClassAbsentError, CrossValidationError, TooFewMinorityError, UndefinedMetricError
from .io import apply_normalization, zscore_params
from .solver import Pseudoinverse, SolveStrategy, strategy_label
from .synth import Flavor, HypersphereScene, ImbalanceSpec, generate, generate_balanced_test

PredictFn = Callable[[np.ndarray], np.ndarray]

CV_METRICS = ("accuracy", "gmean", "f1", "precision", "recall", "specificity")
SWEEP_METRIC = "accuracy"


# ---------------------------------------------------------------------------
# classifier configurations


@dataclass(frozen=True)
class KotaroConfig:
    n_neighbors: int = core.DEFAULT_N_NEIGHBORS
    strategy: SolveStrategy = Pseudoinverse()
    floor_policy: FloorPolicy = FloorPolicy()
    name: str = "kotaro"

    def describe(self) -> str:
        return f"kotaro(n={self.n_neighbors}, solver={strategy_label(self.strategy)})"

    def fit(self, dataset: Dataset) -> PredictFn:
        model = core.fit(dataset, self.n_neighbors, self.strategy, self.floor_policy)
        return lambda queries: core.predict_batch(model, queries)


@dataclass(frozen=True)
class FixedBandwidthConfig:
    gamma_policy: baselines.GammaPolicy = baselines.MedianHeuristic()
    strategy: SolveStrategy = Pseudoinverse()
    name: str = "fixed"

    def describe(self) -> str:
        return f"fixed(gamma={self.gamma_policy}, solver={strategy_label(self.strategy)})"

    def fit(self, dataset: Dataset) -> PredictFn:
        model = baselines.fit_fixed(dataset, self.gamma_policy, self.strategy)
        return lambda queries: baselines.predict_fixed(model, queries)


@dataclass(frozen=True)
class KnnConfig:
    k: int = 5
    name: str = "knn"

    def describe(self) -> str:
        return f"knn(k={self.k})"

    def fit(self, dataset: Dataset) -> PredictFn:
        model = baselines.fit_knn(dataset, self.k)
        return lambda queries: baselines.predict_knn(model, queries)


@dataclass(frozen=True)
class MajorityConfig:
    name: str = "majority"

    def describe(self) -> str:
        return "majority()"

    def fit(self, dataset: Dataset) -> PredictFn:
        model = baselines.fit_majority(dataset)
        return lambda queries: baselines.predict_majority(model, queries)


def make_config(name: str, n_neighbors: int = core.DEFAULT_N_NEIGHBORS, knn_k: int = 5,
                strategy: SolveStrategy = Pseudoinverse()):
    """Build a classifier config from its CLI name."""
    if name == "kotaro":
        return KotaroConfig(n_neighbors=n_neighbors, strategy=strategy)
    if name == "fixed":
        return FixedBandwidthConfig(gamma_policy=baselines.MedianHeuristic(n_neighbors), strategy=strategy)
    if name == "knn":
        return KnnConfig(k=knn_k)
    if name == "majority":
        return MajorityConfig()
    raise ValueError(f"unknown classifier {name!r}; expected kotaro, fixed, knn, or majority")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class TrialResult:
    """One evaluation: a (repeat, fold) pair in CV or a sweep trial."""

    trial: str
    subset: str  # fold index for CV, imbalance ratio for sweeps
    values: Dict[str, float]


@dataclass
class ExperimentReport:
    """Per-trial metric values plus (mean, standard error) aggregates."""

    classifier: str
    trials: List[TrialResult]
    aggregate: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.aggregate:
            self.aggregate = aggregate_trials(self.trials)


def aggregate_trials(trials: Sequence[TrialResult]) -> Dict[str, Tuple[float, float]]:
    """Unweighted mean over trials and stderr = sample stddev / sqrt(count).

    A single trial reports stderr 0 (the sample stddev is undefined).
    Undefined per-trial metrics arrive as NaN and propagate into the mean.
    """
    if not trials:
        raise ValueError("cannot aggregate an empty trial list")
    out: Dict[str, Tuple[float, float]] = {}
    for name in trials[0].values:
        vals = np.array([t.values[name] for t in trials], dtype=float)
        mean = float(vals.mean())
        stderr = float(vals.std(ddof=1) / math.sqrt(len(vals))) if len(vals) > 1 else 0.0
        out[name] = (mean, stderr)
    return out


def _metric_row(c: metrics.ConfusionCounts, names: Sequence[str]) -> Dict[str, float]:
    """Evaluate the named metrics, recording NaN where one is undefined.

    A constant all-negative predictor has no positive predictions, so its
    precision is undefined; NaN keeps that visible instead of inventing 0.
    """
    fns = {
        "accuracy": metrics.accuracy,
        "gmean": metrics.gmean,
        "f1": metrics.f1,
        "precision": metrics.precision,
        "recall": metrics.recall,
        "specificity": metrics.specificity,
    }
    row = {}
    for name in names:
        try:
            row[name] = float(fns[name](c))
        except (UndefinedMetricError, ClassAbsentError):
            row[name] = float("nan")
    return row


# ---------------------------------------------------------------------------
# stratified k-fold


@dataclass(frozen=True)
class FoldAssignment:
    """Map from sample index to fold index in [0, k)."""

    fold_index: np.ndarray
    k: int

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_index == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_index != fold)


def stratified_kfold(labels, k: int, seed: int, allow_small_minority: bool = False) -> FoldAssignment:
    """Deterministic stratified fold assignment.

    Each class is shuffled and dealt round-robin, so per-fold class counts
    deviate from perfect proportionality by at most one sample. A class with
    fewer than k members is an error unless allow_small_minority is set, in
    which case some folds simply receive none of it.
    """
    y = np.asarray(labels)
    n = y.shape[0]
    if k < 2 or k > n:
        raise ValueError(f"need 2 <= k <= N, got k={k} with N={n}")
    rng = np.random.default_rng(seed)
    fold_index = np.empty(n, dtype=np.int64)
    offset = 0
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        if idx.size < k and not allow_small_minority:
            raise TooFewMinorityError(
                f"class {cls} has {idx.size} members but k={k}; "
                "pass allow_small_minority=True to permit empty folds"
            )
        perm = rng.permutation(idx)
        fold_index[perm] = (np.arange(perm.size) + offset) % k
        offset += perm.size
    return FoldAssignment(fold_index=fold_index, k=k)


# ---------------------------------------------------------------------------
# cross-validation


def cross_validate(
    dataset: Dataset,
    config,
    k: int = 5,
    repeats: int = 1,
    seed: int = 0,
    allow_small_minority: bool = False,
    normalize: bool = False,
) -> ExperimentReport:
    """Repeated stratified k-fold CV; returns one report over all fold evaluations.

    With normalize=True, z-score parameters are recomputed on each training
    split and applied to the matching held-out fold, so test statistics never
    leak into the fit. A failing fold aborts the whole run with a diagnostic
    naming the repeat and fold.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    fold_seeds = np.random.SeedSequence(seed).generate_state(repeats, dtype=np.uint64)
    trials: List[TrialResult] = []
    for r in range(repeats):
        assignment = stratified_kfold(dataset.labels, k, int(fold_seeds[r]), allow_small_minority)
        for fold in range(k):
            tr = assignment.train_indices(fold)
            te = assignment.test_indices(fold)
            x_train = dataset.features[tr]
            x_test = dataset.features[te]
            if normalize:
                params = zscore_params(x_train)
                x_train = apply_normalization(x_train, params)
                x_test = apply_normalization(x_test, params)
            try:
                predict = config.fit(Dataset(features=x_train, labels=dataset.labels[tr]))
                predicted = predict(x_test)
            except Exception as exc:
                raise CrossValidationError(f"repeat {r}, fold {fold}: {exc}") from exc
            counts = metrics.confusion(dataset.labels[te], predicted)
            trials.append(TrialResult(
                trial=str(r),
                subset=str(fold),
                values=_metric_row(counts, CV_METRICS),
            ))
    return ExperimentReport(classifier=config.name, trials=trials)


# ---------------------------------------------------------------------------
# imbalance-ratio sweeps


def imbalance_sweep(
    scene: HypersphereScene,
    flavor: Flavor,
    ratios: Sequence[float],
    total: int,
    per_class_test: int,
    trials: int,
    seed: int,
    configs: Sequence,
) -> Dict[Tuple[str, float], ExperimentReport]:
    """Accuracy of each classifier across imbalance ratios.

    Per trial: a fresh training draw at the given ratio and a fresh balanced
    test draw of per_class_test points per class, each from its own spawned
    rng substream. All classifiers see identical train/test data within a
    trial. Returns one report per (classifier name, ratio).
    """
    if not ratios:
        raise ValueError("ratios must be nonempty")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    root = np.random.SeedSequence(seed)
    children = root.spawn(len(ratios) * trials)
    rows: Dict[Tuple[str, float], List[TrialResult]] = {
        (cfg.name, float(r)): [] for cfg in configs for r in ratios
    }
    for i, ratio in enumerate(ratios):
        spec = ImbalanceSpec(total=total, ratio=float(ratio), flavor=flavor)
        for t in range(trials):
            train_ss, test_ss = children[i * trials + t].spawn(2)
            train_set = generate(scene, spec, np.random.default_rng(train_ss))
            test_set = generate_balanced_test(scene, flavor, per_class_test, np.random.default_rng(test_ss))
            for cfg in configs:
                predict = cfg.fit(train_set)
                counts = metrics.confusion(test_set.labels, predict(test_set.features))
                rows[(cfg.name, float(ratio))].append(TrialResult(
                    trial=str(t),
                    subset=repr(float(ratio)),
                    values=_metric_row(counts, (SWEEP_METRIC,)),
                ))
    return {
        key: ExperimentReport(classifier=key[0], trials=trial_list)
        for key, trial_list in rows.items()
    }
