"""Estimator-style wrapper so the transform composes with sklearn pipelines."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fields import SpinField
from .so3 import SO3Grid
from .validation import as_complex_2d
from .wavelets import ScaleGrid, WaveletCoefficients, cwt_forward, cwt_inverse, example_family

__all__ = ["SphericalWaveletTransform"]


class SphericalWaveletTransform(TransformerMixin, BaseEstimator):
    """Wavelet analysis of spin-weighted harmonic coefficient vectors.

    Rows of X are flat coefficient vectors in the SpinField layout
    (degree-major, orders -l..l, degrees |spin|..lmax); transform maps each
    row to its phase-space wavelet coefficients, inverse_transform
    reconstructs. fit only precomputes grids and tables; there is nothing
    data-dependent to learn.

    Parameters
    ----------
    spin : spin weight of the inputs.
    lmax : band limit.
    family_a, family_b, family_c : shape parameters of the wavelet family.
    q_coeffs : polynomial coefficients (low order first) of the positive
        degree profile q(l).
    scale_cutoff : scale window is [scale_cutoff, 1/scale_cutoff].
    n_scales : log-spaced scale nodes.
    so3_shape : optional (n_alpha, n_beta, n_gamma); default sizes the
        rotation grid exactly for lmax.
    """

    def __init__(
        self,
        spin: int = 0,
        lmax: int = 8,
        family_a: float = 1.0,
        family_b: float = 1.0,
        family_c: float = 1.0,
        q_coeffs=(1.0, 1.0),
        scale_cutoff: float = 1e-3,
        n_scales: int = 64,
        so3_shape=None,
    ):
        self.spin = spin
        self.lmax = lmax
        self.family_a = family_a
        self.family_b = family_b
        self.family_c = family_c
        self.q_coeffs = q_coeffs
        self.scale_cutoff = scale_cutoff
        self.n_scales = n_scales
        self.so3_shape = so3_shape

    def fit(self, X=None, y=None):
        family = example_family(
            self.family_a,
            self.family_b,
            self.family_c,
            self.q_coeffs,
            self.spin,
            self.lmax,
        )
        if self.so3_shape is None:
            rots = SO3Grid.for_bandlimit(self.lmax)
        else:
            rots = SO3Grid.build(*self.so3_shape)
        if rots.max_exact_degree < self.lmax:
            raise ValueError("so3_shape too coarse for lmax")
        self.family_ = family
        self.rotations_ = rots
        self.scales_ = ScaleGrid.logarithmic(
            self.scale_cutoff, self.n_scales, family.weight
        )
        self.n_features_in_ = SpinField.n_coeffs(self.spin, self.lmax)
        self.n_output_features_ = self.n_scales * rots.n_nodes
        if X is not None:
            as_complex_2d(X, self.n_features_in_, "X")
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "family_")
        X = as_complex_2d(X, self.n_features_in_, "X")
        out = np.empty((X.shape[0], self.n_output_features_), dtype=complex)
        for i, row in enumerate(X):
            f = SpinField(self.spin, self.lmax, row)
            out[i] = cwt_forward(f, self.family_, self.scales_, self.rotations_).values.ravel()
        return out

    def inverse_transform(self, Xt) -> np.ndarray:
        check_is_fitted(self, "family_")
        Xt = as_complex_2d(Xt, self.n_output_features_, "Xt")
        out = np.empty((Xt.shape[0], self.n_features_in_), dtype=complex)
        for i, row in enumerate(Xt):
            w = WaveletCoefficients(
                self.scales_,
                self.rotations_,
                self.spin,
                self.lmax,
                row.reshape(self.n_scales, self.rotations_.n_nodes),
            )
            out[i] = cwt_inverse(w, self.family_).coeffs
        return out
