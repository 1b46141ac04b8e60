import numpy as np
import pytest

from kotaro import baselines, core, metrics
from kotaro.baselines import ExplicitGamma, MedianHeuristic
from kotaro.core import Dataset
from kotaro.errors import BadKError, SingleClassError

from oracles import brute_knn_vote

LINE = np.array([[0.0], [1.0], [3.0]])


def equal_scale_dataset(rng, n=12):
    """1-D uniform grid: with one neighbor every scale equals the spacing."""
    spacing = 0.5
    features = (np.arange(n) * spacing).reshape(-1, 1)
    labels = np.where(rng.random(n) < 0.5, 1, -1)
    labels[0], labels[-1] = 1, -1
    return Dataset(features=features, labels=labels)


# ---------------------------------------------------------------------------
# fixed bandwidth


def test_median_heuristic_hand_value():
    ds = Dataset(LINE, np.array([1, 1, -1]))
    model = baselines.fit_fixed(ds, MedianHeuristic(n_neighbors=1))
    assert model.gamma == 1.0  # median of [1, 1, 2]


def test_fixed_two_points_interpolates():
    ds = Dataset(np.array([[0.0], [2.0]]), np.array([1, -1]))
    model = baselines.fit_fixed(ds, ExplicitGamma(0.7))
    np.testing.assert_array_equal(baselines.predict_fixed(model, ds.features), ds.labels)
    assert model.fit_residual < 1e-12


def test_fixed_rejects_single_class():
    ds = Dataset(LINE, np.array([-1, -1, -1]))
    with pytest.raises(SingleClassError):
        baselines.fit_fixed(ds, ExplicitGamma(1.0))


def test_uniform_density_reduction_exact():
    # When every neighbor scale equals d, the adaptive fit and the fixed fit
    # with gamma = 1/d run the same design matrix and must agree bit for bit.
    rng = np.random.default_rng(0)
    ds = equal_scale_dataset(rng)
    adaptive = core.fit(ds, n=1)
    d = adaptive.scales.d
    assert np.all(d == d[0])
    fixed = baselines.fit_fixed(ds, ExplicitGamma(1.0 / d[0]))
    np.testing.assert_array_equal(fixed.weights, adaptive.weights)
    probes = rng.uniform(-1, 7, size=(500, 1))
    np.testing.assert_array_equal(
        baselines.predict_fixed(fixed, probes), core.predict_batch(adaptive, probes)
    )
    np.testing.assert_array_equal(
        baselines.fixed_decision_values(fixed, probes), core.decision_values(adaptive, probes)
    )


def test_median_heuristic_reduction_on_uniform_grid():
    rng = np.random.default_rng(1)
    ds = equal_scale_dataset(rng, n=10)
    adaptive = core.fit(ds, n=1)
    fixed = baselines.fit_fixed(ds, MedianHeuristic(n_neighbors=1))
    probes = rng.uniform(-1, 6, size=(200, 1))
    np.testing.assert_array_equal(
        baselines.predict_fixed(fixed, probes), core.predict_batch(adaptive, probes)
    )


# ---------------------------------------------------------------------------
# k-NN


def test_knn_k1_returns_training_label():
    rng = np.random.default_rng(2)
    features = rng.uniform(0, 5, size=(8, 2))
    labels = np.where(rng.random(8) < 0.5, 1, -1)
    labels[0], labels[-1] = 1, -1
    model = baselines.fit_knn(Dataset(features, labels), k=1)
    np.testing.assert_array_equal(baselines.predict_knn(model, features), labels)


def test_knn_k_equals_n_is_global_majority():
    features = np.arange(10, dtype=float).reshape(-1, 1)
    labels = np.array([1, 1, 1, -1, -1, -1, -1, -1, -1, -1])
    model = baselines.fit_knn(Dataset(features, labels), k=10)
    queries = np.array([[0.0], [9.0], [100.0]])
    np.testing.assert_array_equal(baselines.predict_knn(model, queries), [-1, -1, -1])


def test_knn_hand_vote_on_five_points():
    features = np.array([[0.0], [1.0], [2.0], [3.0], [4.0]])
    labels = np.array([1, 1, -1, -1, -1])
    model = baselines.fit_knn(Dataset(features, labels), k=3)
    # query 0.6: neighbors {1.0, 0.0, 2.0} -> votes +1 +1 -1 -> +1
    # query 2.6: neighbors {3.0, 2.0, 4.0} -> -1
    np.testing.assert_array_equal(
        baselines.predict_knn(model, np.array([[0.6], [2.6]])), [1, -1]
    )


def test_knn_vote_tie_goes_negative():
    features = np.array([[0.0], [1.0]])
    labels = np.array([1, -1])
    model = baselines.fit_knn(Dataset(features, labels), k=2)
    assert baselines.predict_knn(model, np.array([[0.5]]))[0] == -1


def test_knn_matches_brute_oracle():
    rng = np.random.default_rng(3)
    features = rng.uniform(0, 5, size=(20, 3))
    labels = np.where(rng.random(20) < 0.4, 1, -1)
    labels[0], labels[-1] = 1, -1
    ds = Dataset(features, labels)
    for k in (1, 3, 7, 20):
        model = baselines.fit_knn(ds, k=k)
        queries = rng.uniform(0, 5, size=(30, 3))
        got = baselines.predict_knn(model, queries)
        want = [brute_knn_vote(features, labels, k, q) for q in queries]
        np.testing.assert_array_equal(got, want)


def test_knn_bad_k():
    ds = Dataset(LINE, np.array([1, 1, -1]))
    with pytest.raises(BadKError):
        baselines.fit_knn(ds, k=0)
    with pytest.raises(BadKError):
        baselines.fit_knn(ds, k=4)


# ---------------------------------------------------------------------------
# majority


def test_majority_constant_negative_on_imbalanced_data():
    rng = np.random.default_rng(4)
    features = rng.uniform(0, 5, size=(100, 2))
    labels = np.concatenate([np.full(10, 1), np.full(90, -1)])
    model = baselines.fit_majority(Dataset(features, labels))
    assert model.label == -1
    np.testing.assert_array_equal(
        baselines.predict_majority(model, features[:7]), np.full(7, -1)
    )


def test_majority_on_balanced_test_scores_half_accuracy_zero_gmean():
    rng = np.random.default_rng(5)
    train = Dataset(rng.uniform(0, 5, size=(20, 2)), np.concatenate([np.full(3, 1), np.full(17, -1)]))
    model = baselines.fit_majority(train)
    test_labels = np.concatenate([np.full(50, 1), np.full(50, -1)])
    pred = baselines.predict_majority(model, rng.uniform(0, 5, size=(100, 2)))
    c = metrics.confusion(test_labels, pred)
    assert metrics.accuracy(c) == 0.5
    assert metrics.gmean(c) == 0.0


def test_majority_training_tie_goes_negative():
    features = np.arange(4, dtype=float).reshape(-1, 1)
    model = baselines.fit_majority(Dataset(features, np.array([1, 1, -1, -1])))
    assert model.label == -1
