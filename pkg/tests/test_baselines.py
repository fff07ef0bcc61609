import numpy as np
import pytest

from covest import (
    Basis,
    DataMatrix,
    GaussianSpec,
    RngStream,
    UnsupportedDimensionError,
    SymMatrix,
    fixed_projection_floor,
    hmt_estimate,
    sample_covariance,
    sample_gaussian,
    sample_random_basis,
    shared_projection_estimate,
    spectral_norm,
)


def test_sample_covariance_examples():
    e1 = np.array([[1.0], [0.0]])
    np.testing.assert_array_equal(sample_covariance(DataMatrix(e1)).entries, np.diag([1.0, 0.0]))

    both = np.array([[1.0, -1.0], [0.0, 0.0]])
    np.testing.assert_array_equal(sample_covariance(DataMatrix(both)).entries, np.diag([1.0, 0.0]))

    np.testing.assert_array_equal(
        sample_covariance(DataMatrix(np.zeros((3, 4)))).entries, np.zeros((3, 3))
    )


def test_hmt_rank_one_data():
    direction = np.array([1.0, 2.0, -1.0])
    scales = np.random.default_rng(0).standard_normal(20)
    x = DataMatrix(np.outer(direction, scales))
    est = hmt_estimate(x, 1, RngStream(1))
    assert np.max(np.abs(est.matrix.entries - sample_covariance(x).entries)) <= 1e-9
    assert est.method == "hmt"


def test_hmt_full_dimension_is_sample_covariance():
    x = sample_gaussian(GaussianSpec(SymMatrix(np.eye(4))), 50, RngStream(2))
    est = hmt_estimate(x, 4, RngStream(3))
    assert np.max(np.abs(est.matrix.entries - sample_covariance(x).entries)) <= 1e-9


def test_hmt_validates_budget():
    x = DataMatrix(np.ones((4, 2)) + np.arange(8).reshape(4, 2))
    with pytest.raises(UnsupportedDimensionError):
        hmt_estimate(x, 3, RngStream(0))  # m > n
    with pytest.raises(UnsupportedDimensionError):
        hmt_estimate(x, 1, RngStream(0), oversample=5)


def test_hmt_error_plateaus():
    # Growing n by 10x leaves the sketched estimator's error in place: the
    # missed subspace dominates no matter how much data arrives.
    spec = GaussianSpec(SymMatrix(np.eye(40)))
    errs = {}
    for n in (1000, 10_000):
        x = sample_gaussian(spec, n, RngStream(4, n))
        est = hmt_estimate(x, 5, RngStream(5, n))
        errs[n] = spectral_norm(est.matrix.entries - np.eye(40))
    assert errs[10_000] >= 0.5 * errs[1000]


def test_shared_projection_examples():
    sigma_hat = SymMatrix(np.diag([0.0, 1.0]))
    a = Basis(np.array([[1.0], [0.0]]))
    np.testing.assert_allclose(
        shared_projection_estimate(sigma_hat, a).entries, np.zeros((2, 2)), atol=1e-14
    )

    full = sample_random_basis(3, 3, RngStream(6))
    sigma = SymMatrix(np.diag([2.0, 1.0, 0.5]))
    np.testing.assert_allclose(
        shared_projection_estimate(sigma, full).entries, sigma.entries, atol=1e-9
    )


def test_shared_projection_identity_floor():
    # Projecting the identity onto any proper subspace leaves a unit
    # spectral gap; this is the error floor in its sharpest form.
    for seed, d, m in [(0, 4, 1), (1, 6, 3), (2, 10, 9)]:
        a = sample_random_basis(d, m, RngStream(7, seed))
        got = shared_projection_estimate(SymMatrix(np.eye(d)), a)
        assert spectral_norm(got.entries - np.eye(d)) == pytest.approx(1.0, abs=1e-10)


def test_fixed_projection_floor_examples():
    assert fixed_projection_floor(1.0, 2, 2) == 0.0
    expected = (1 / np.sqrt(2)) * (0.5) ** 0.25
    assert fixed_projection_floor(1.0, 1, 2) == pytest.approx(expected, abs=1e-12)
    assert fixed_projection_floor(1.0, 1, 2) == pytest.approx(0.59460, abs=5e-6)
    assert fixed_projection_floor(2.0, 3, 7) == pytest.approx(
        2.0 * fixed_projection_floor(1.0, 3, 7), rel=1e-14
    )
