"""sklearn-style wrapper: params, cloning, transform/inverse round trip."""

import numpy as np
import pytest
from sklearn.base import clone

from spinwavelets import SphericalWaveletTransform, SpinField


def make_rows(spin, lmax, n_rows, seed):
    rng = np.random.default_rng(seed)
    return np.stack(
        [SpinField.random(spin, lmax, rng).coeffs for _ in range(n_rows)]
    )


def test_get_set_params_and_clone():
    est = SphericalWaveletTransform(spin=2, lmax=6, n_scales=32)
    params = est.get_params()
    assert params["spin"] == 2
    assert params["lmax"] == 6
    assert params["n_scales"] == 32
    dup = clone(est)
    assert dup.get_params() == params
    est.set_params(scale_cutoff=1e-2)
    assert est.get_params()["scale_cutoff"] == 1e-2


def test_fit_builds_grids():
    est = SphericalWaveletTransform(spin=1, lmax=5).fit()
    assert est.n_features_in_ == SpinField.n_coeffs(1, 5)
    assert est.rotations_.max_exact_degree >= 5
    assert est.scales_.n_scales == est.n_scales
    assert est.n_output_features_ == est.scales_.n_scales * est.rotations_.n_nodes


def test_transform_requires_fit():
    est = SphericalWaveletTransform()
    X = make_rows(0, 8, 1, 0)
    with pytest.raises(Exception):
        est.transform(X)


def test_round_trip_through_estimator():
    est = SphericalWaveletTransform(spin=1, lmax=6, scale_cutoff=1e-3, n_scales=48)
    est.fit()
    X = make_rows(1, 6, 3, 1)
    Xt = est.transform(X)
    assert Xt.shape == (3, est.n_output_features_)
    back = est.inverse_transform(Xt)
    rel = np.linalg.norm(back - X, axis=1) / np.linalg.norm(X, axis=1)
    assert np.all(rel < 5e-4)


def test_fit_transform_single_row():
    est = SphericalWaveletTransform(spin=0, lmax=4, n_scales=16, scale_cutoff=1e-2)
    X = make_rows(0, 4, 1, 2)
    Xt = est.fit_transform(X)
    assert Xt.shape[0] == 1


def test_wrong_width_rejected():
    est = SphericalWaveletTransform(spin=0, lmax=4).fit()
    with pytest.raises(ValueError):
        est.transform(np.zeros((2, 7), dtype=complex))


def test_custom_so3_shape_validated():
    est = SphericalWaveletTransform(spin=0, lmax=8, so3_shape=(5, 3, 5))
    with pytest.raises(ValueError):
        est.fit()
    ok = SphericalWaveletTransform(spin=0, lmax=4, so3_shape=(9, 5, 9)).fit()
    assert ok.rotations_.n_nodes == 9 * 5 * 9


def test_inadmissible_q_rejected_at_fit():
    est = SphericalWaveletTransform(spin=0, lmax=4, q_coeffs=(0.0, 0.0))
    with pytest.raises(ValueError):
        est.fit()
