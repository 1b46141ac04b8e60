import math

import numpy as np
import pytest

from kotaro import core
from kotaro.core import Dataset, FloorPolicy
from kotaro.errors import (
    BadNeighborCountError,
    DegenerateGeometryError,
    DimensionMismatchError,
    InvalidLabelError,
    NDegenerateError,
    SingleClassError,
)
from kotaro.solver import Pseudoinverse

from helpers import random_dataset, random_rotation
from oracles import brute_decision_value, brute_neighbor_scales, gauss_solve

LINE = np.array([[0.0], [1.0], [3.0]])


# ---------------------------------------------------------------------------
# neighbor scales


def test_scales_line_n1():
    s = core.compute_neighbor_scales(LINE, n=1)
    np.testing.assert_array_equal(s.d, [1.0, 1.0, 2.0])
    np.testing.assert_array_equal(s.gamma, [1.0, 1.0, 0.5])
    assert not s.floor_applied.any()


def test_scales_line_n2():
    s = core.compute_neighbor_scales(LINE, n=2)
    np.testing.assert_array_equal(s.d, [3.0, 2.0, 3.0])
    np.testing.assert_array_equal(s.gamma, [1 / 3, 1 / 2, 1 / 3])


def test_scales_match_brute_force():
    rng = np.random.default_rng(7)
    for _ in range(20):
        ds = random_dataset(rng)
        n = int(rng.integers(1, ds.n_samples))
        s = core.compute_neighbor_scales(ds.features, n)
        np.testing.assert_allclose(s.d, brute_neighbor_scales(ds.features, n), rtol=1e-12)


def test_scales_duplicate_points_floored():
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]])
    s = core.compute_neighbor_scales(pts, n=1)
    # pre-floor d = [0, 0, 1]; floor = 1e-8 * mean of positive = 1e-8
    assert s.floor_applied[0] and s.floor_applied[1] and not s.floor_applied[2]
    assert s.d[0] == s.d[1] == 1e-8
    assert s.d[2] == 1.0
    assert np.all(s.gamma > 0) and np.all(np.isfinite(s.gamma))


def test_scales_all_duplicates_rejected():
    pts = np.zeros((4, 2))
    with pytest.raises(DegenerateGeometryError):
        core.compute_neighbor_scales(pts, n=1)


def test_scales_input_validation():
    with pytest.raises(NDegenerateError):
        core.compute_neighbor_scales(np.array([[0.0]]), n=1)
    with pytest.raises(BadNeighborCountError):
        core.compute_neighbor_scales(LINE, n=3)
    with pytest.raises(BadNeighborCountError):
        core.compute_neighbor_scales(LINE, n=0)


# ---------------------------------------------------------------------------
# kernel


def test_kernel_at_center_is_one():
    assert core.kernel_value(np.array([2.0, 3.0]), 0.7, np.array([2.0, 3.0])) == 1.0


def test_kernel_hand_values():
    assert core.kernel_value(np.array([0.0]), 1.0, np.array([1.0])) == math.exp(-1.0)
    assert core.kernel_value(np.array([0.0]), 0.5, np.array([2.0])) == math.exp(-2.0)


def test_kernel_rejects_bad_gamma():
    with pytest.raises(ValueError):
        core.kernel_value(np.array([0.0]), 0.0, np.array([1.0]))
    with pytest.raises(ValueError):
        core.kernel_value(np.array([0.0]), -1.0, np.array([1.0]))


# ---------------------------------------------------------------------------
# design matrix


def test_design_matrix_hand_values():
    s = core.compute_neighbor_scales(LINE, n=1)
    a = core.build_design_matrix(LINE, s)
    assert a[2, 0] == math.exp(-9.0)  # gamma_0 = 1, squared distance 9
    assert a[0, 2] == math.exp(-4.5)  # gamma_2 = 1/2
    assert not np.allclose(a, a.T)


def test_design_matrix_unit_diagonal_and_range():
    rng = np.random.default_rng(3)
    ds = random_dataset(rng, n=25, m=3)
    a = core.build_design_matrix(ds.features, core.compute_neighbor_scales(ds.features, 4))
    assert np.all(np.diag(a) == 1.0)
    assert np.all(a > 0.0) and np.all(a <= 1.0)


def test_design_matrix_symmetric_under_equal_gamma():
    rng = np.random.default_rng(4)
    x = rng.uniform(0, 5, size=(12, 2))
    a = core.design_from_gamma(x, np.full(12, 0.8))
    np.testing.assert_allclose(a, a.T, atol=1e-15)


def test_design_matrix_two_points_symmetric():
    x = np.array([[0.0], [2.0]])
    a = core.design_from_gamma(x, np.full(2, 0.5))
    assert a[0, 1] == a[1, 0]
    assert a[0, 0] == a[1, 1] == 1.0


# ---------------------------------------------------------------------------
# fit


def test_fit_two_points_interpolates():
    ds = Dataset(np.array([[0.0, 0.0], [1.7, -0.4]]), np.array([1, -1]))
    model = core.fit(ds, n=1)
    assert core.decision_function(model, ds.features[0]).predicted_label == 1
    assert core.decision_function(model, ds.features[1]).predicted_label == -1


def test_fit_line_matches_elimination_oracle():
    ds = Dataset(LINE, np.array([1, 1, -1]))
    model = core.fit(ds, n=1)
    assert model.fit_residual <= 1e-8
    a = core.build_design_matrix(LINE, model.scales)
    expected = gauss_solve(a, [1.0, 1.0, -1.0])
    np.testing.assert_allclose(model.weights, expected, rtol=1e-8)


def test_fit_single_class_rejected():
    ds = Dataset(LINE, np.array([1, 1, 1]))
    with pytest.raises(SingleClassError):
        core.fit(ds, n=1)


def test_fit_residual_is_recomputed_max_norm():
    rng = np.random.default_rng(11)
    ds = random_dataset(rng, n=20, m=2)
    model = core.fit(ds, n=3)
    a = core.build_design_matrix(ds.features, model.scales)
    actual = np.max(np.abs(a @ model.weights - ds.labels))
    assert model.fit_residual == actual


def test_fit_copies_training_data():
    rng = np.random.default_rng(12)
    ds = random_dataset(rng, n=10, m=2)
    model = core.fit(ds, n=2)
    before = model.train_features.copy()
    ds.features[:] = -999.0
    np.testing.assert_array_equal(model.train_features, before)


# ---------------------------------------------------------------------------
# decision function / prediction


def test_decision_interpolates_training_labels():
    rng = np.random.default_rng(21)
    ds = random_dataset(rng, n=15, m=2)
    model = core.fit(ds, n=3)
    assert model.condition_estimate < 1e8
    for x, y in zip(ds.features, ds.labels):
        assert abs(core.decision_function(model, x).value - y) < 1e-6


def test_decision_far_query_underflows_to_negative():
    ds = Dataset(np.array([[0.0], [1.0]]), np.array([1, -1]))
    model = core.fit(ds, n=1)
    dv = core.decision_function(model, np.array([1e6]))
    assert dv.value == 0.0
    assert dv.predicted_label == -1


def test_decision_matches_brute_force_sum():
    rng = np.random.default_rng(22)
    ds = random_dataset(rng, n=30, m=3)
    model = core.fit(ds, n=4)
    for _ in range(25):
        q = rng.uniform(0, 5, size=3)
        got = core.decision_function(model, q).value
        want = brute_decision_value(model.train_features, model.scales.gamma, model.weights, q)
        assert got == pytest.approx(want, rel=1e-12)


def test_decision_dimension_mismatch():
    ds = Dataset(np.array([[0.0, 0.0], [1.0, 1.0]]), np.array([1, -1]))
    model = core.fit(ds, n=1)
    with pytest.raises(DimensionMismatchError):
        core.decision_function(model, np.array([1.0, 2.0, 3.0]))
    with pytest.raises(DimensionMismatchError):
        core.predict_batch(model, np.zeros((4, 3)))


def test_predict_batch_equals_looped_decision_function():
    rng = np.random.default_rng(23)
    ds = random_dataset(rng, n=20, m=2)
    model = core.fit(ds, n=3)
    queries = rng.uniform(0, 5, size=(50, 2))
    batch = core.predict_batch(model, queries)
    looped = np.array([core.decision_function(model, q).predicted_label for q in queries])
    np.testing.assert_array_equal(batch, looped)
    # values too, bit for bit
    batch_values = core.decision_values(model, queries)
    looped_values = np.array([core.decision_function(model, q).value for q in queries])
    np.testing.assert_array_equal(batch_values, looped_values)


def test_predict_batch_singleton_and_interpolation():
    rng = np.random.default_rng(24)
    ds = random_dataset(rng, n=12, m=2)
    model = core.fit(ds, n=2)
    np.testing.assert_array_equal(core.predict_batch(model, ds.features), ds.labels)
    one = core.predict_batch(model, ds.features[:1])
    assert one.shape == (1,) and one[0] == ds.labels[0]


# ---------------------------------------------------------------------------
# invariants


def test_permutation_equivariance():
    rng = np.random.default_rng(31)
    ds = random_dataset(rng, n=18, m=2)
    perm = rng.permutation(ds.n_samples)
    model = core.fit(ds, n=3)
    permuted = core.fit(Dataset(ds.features[perm], ds.labels[perm]), n=3)
    np.testing.assert_allclose(permuted.weights, model.weights[perm], atol=1e-10)
    queries = rng.uniform(0, 5, size=(20, 2))
    np.testing.assert_allclose(
        core.decision_values(permuted, queries),
        core.decision_values(model, queries),
        atol=1e-10,
    )


def test_rigid_motion_invariance():
    rng = np.random.default_rng(32)
    ds = random_dataset(rng, n=16, m=3)
    rot = random_rotation(rng, 3)
    shift = rng.uniform(-10, 10, size=3)
    moved = Dataset(ds.features @ rot.T + shift, ds.labels)
    model = core.fit(ds, n=3)
    model_moved = core.fit(moved, n=3)
    np.testing.assert_allclose(model_moved.scales.d, model.scales.d, rtol=1e-10)
    np.testing.assert_allclose(model_moved.weights, model.weights, rtol=1e-10, atol=1e-12)
    queries = rng.uniform(0, 5, size=(15, 3))
    np.testing.assert_allclose(
        core.decision_values(model_moved, queries @ rot.T + shift),
        core.decision_values(model, queries),
        rtol=1e-10,
        atol=1e-12,
    )


def test_fit_is_deterministic():
    rng = np.random.default_rng(33)
    ds = random_dataset(rng, n=20, m=2)
    m1 = core.fit(ds, n=4)
    m2 = core.fit(ds, n=4)
    np.testing.assert_array_equal(m1.weights, m2.weights)
    np.testing.assert_array_equal(m1.scales.d, m2.scales.d)
    assert m1.fit_residual == m2.fit_residual


def test_dataset_validation():
    with pytest.raises(InvalidLabelError):
        Dataset(np.zeros((3, 1)) + np.arange(3)[:, None], np.array([1, 0, -1]))
    with pytest.raises(NDegenerateError):
        Dataset(np.array([[0.0]]), np.array([1]))


def test_floor_policy_validation():
    with pytest.raises(ValueError):
        FloorPolicy(relative_floor=0.0)
    assert Pseudoinverse().rcond == 1e-10
