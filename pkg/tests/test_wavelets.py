"""Wavelet families, admissibility, and the phase-space transform.

Oracles:
  * scipy.integrate.quad for the per-degree admissibility integral;
  * explicit sphere quadrature of <R_rot Psi_rho, f> for forward values;
  * the rotation-matrix closed form for a single-harmonic input.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from spinwavelets import (
    EulerAngles,
    SO3Grid,
    ScaleGrid,
    SphereGrid,
    SpinField,
    WaveletCoefficients,
    admissibility_check,
    cwt_forward,
    cwt_inverse,
    evaluate_at,
    example_family,
    phase_space_inner,
    reconstruction_factors,
    rotated_frame_coords,
    synthesize,
    wigner_D,
)


def test_family_coeffs_are_zonal():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 2, 6)
    arr = fam.coeff_array(0.37)
    nonzero = np.argwhere(np.abs(arr) > 0)
    assert np.all(nonzero[:, 1] == 6)  # only m = 0 column
    assert np.all(nonzero[:, 0] >= 2)  # only active degrees
    f = fam.field(0.37)
    assert f.spin == 2
    assert f.get(4, 0) == pytest.approx(fam.coeff(0.37, 4, 0), abs=1e-15)


@pytest.mark.parametrize("abc", [(1.0, 1.0, 1.0), (2.0, 1.5, 0.75), (0.5, 2.0, 3.0)])
def test_admissibility_integral_against_quad(abc):
    a, b, c = abc
    fam = example_family(a, b, c, (1.0, 1.0), 0, 8)
    for l in (0, 3, 8):
        val, err = quad(
            lambda rho: abs(fam.coeff(rho, l, 0)) ** 2 / rho,
            0.0,
            np.inf,
            limit=200,
        )
        target = (2 * l + 1) / (8 * math.pi**2)
        assert val == pytest.approx(target, rel=1e-9)


def test_admissibility_check_passes_example_family():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 1, 10)
    report = admissibility_check(fam, cutoff=1e-5, n_scales=3000, tol=1e-5)
    assert report.passed
    assert report.max_deviation < 1e-6
    np.testing.assert_allclose(
        report.targets, (2.0 * report.degrees + 1.0) / (8 * np.pi**2), rtol=1e-15
    )
    assert np.all(np.isfinite(report.condition2_partial_sums))


def test_scaled_family_fails_admissibility():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 0, 6)
    bad = fam.scaled(math.sqrt(2.0))
    report = admissibility_check(bad, cutoff=1e-5, n_scales=2000)
    assert not report.passed
    assert report.max_deviation == pytest.approx(1.0, abs=1e-6)


def test_nonpositive_q_rejected():
    with pytest.raises(ValueError, match="positive"):
        example_family(1.0, 1.0, 1.0, (1.0, -1.0), 0, 4)  # q(l) = 1 - l
    # negative only below the active band is fine for spin 2
    fam = example_family(1.0, 1.0, 1.0, (-1.5, 1.0), 2, 4)  # q(l) = l - 1.5
    assert fam.coeff(1.0, 2, 0) != 0.0


def test_bad_family_parameters_rejected():
    with pytest.raises(ValueError, match="positive"):
        example_family(-1.0, 1.0, 1.0, (1.0, 1.0), 0, 4)
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 0, 4)
    with pytest.raises(ValueError, match="positive"):
        fam.coeff_array(-0.5)


def test_scale_grid_window_and_weights():
    grid = ScaleGrid.logarithmic(1e-2, 33, lambda rho: 1.0 / rho)
    assert grid.nodes[0] == pytest.approx(1e-2)
    assert grid.nodes[-1] == pytest.approx(1e2)
    assert np.all(grid.weights > 0)
    # with alpha = 1/rho the weights reduce to plain trapezoid steps in log rho
    h = (np.log(1e2) - np.log(1e-2)) / 32
    np.testing.assert_allclose(grid.weights[1:-1], h, rtol=1e-12)
    np.testing.assert_allclose(grid.weights[[0, -1]], h / 2, rtol=1e-12)


def test_reconstruction_factors_approach_one():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 1, 8)
    lam_narrow = reconstruction_factors(
        fam, ScaleGrid.logarithmic(1e-2, 64, fam.weight)
    )
    lam_wide = reconstruction_factors(
        fam, ScaleGrid.logarithmic(1e-4, 64, fam.weight)
    )
    active = slice(1, None)
    assert np.all(np.abs(lam_wide[active] - 1.0) <= np.abs(lam_narrow[active] - 1.0))
    assert np.max(np.abs(lam_wide[active] - 1.0)) < 1e-4


def test_single_harmonic_forward_closed_form():
    # input unit(l0, k0): W(rho, rot) = Psi_hat(rho)[l0,0] conj(D^{k0,0}_{l0}(rot))
    spin, lmax, l0, k0 = 1, 4, 3, -2
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    f = SpinField.unit(spin, l0, k0, lmax)
    scales = ScaleGrid.logarithmic(0.05, 8, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    w = cwt_forward(f, fam, scales, rots)
    al, be, ga = rots.nodes()
    rng = np.random.default_rng(40)
    for _ in range(30):
        i = int(rng.integers(0, scales.n_scales))
        j = int(rng.integers(0, rots.n_nodes))
        rot = EulerAngles(al[j], be[j], ga[j])
        expected = fam.coeff(scales.nodes[i], l0, 0) * np.conj(
            wigner_D(l0, k0, 0, rot)
        )
        assert w.values[i, j] == pytest.approx(expected, abs=1e-12)


def test_forward_matches_sphere_quadrature():
    # W(rho, rot) is the sphere inner product of the rotated wavelet with f
    spin, lmax = 2, 5
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(41)
    f = SpinField.random(spin, lmax, rng)
    scales = ScaleGrid.logarithmic(0.1, 6, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    w = cwt_forward(f, fam, scales, rots)

    grid = SphereGrid.for_bandlimit(2 * lmax)
    th, ph = grid.points()
    fvals = synthesize(f, grid).values
    quad_w = grid.theta_weights[:, None] * grid.phi_weight
    al, be, ga = rots.nodes()
    for _ in range(6):
        i = int(rng.integers(0, scales.n_scales))
        j = int(rng.integers(0, rots.n_nodes))
        psi = fam.field(scales.nodes[i])
        rot = EulerAngles(al[j], be[j], ga[j])
        thr, phr, kap = rotated_frame_coords(rot, th.ravel(), ph.ravel())
        psi_rot = np.exp(-1j * spin * kap) * evaluate_at(psi, thr, phr)
        oracle = np.sum(quad_w * np.conj(psi_rot).reshape(fvals.shape) * fvals)
        assert w.values[i, j] == pytest.approx(oracle, abs=1e-10)


def test_forward_is_linear():
    spin, lmax = 0, 5
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(42)
    f = SpinField.random(spin, lmax, rng)
    g = SpinField.random(spin, lmax, rng)
    scales = ScaleGrid.logarithmic(0.1, 5, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    a, b = 1.7, -0.4 + 0.9j
    lhs = cwt_forward(a * f + b * g, fam, scales, rots).values
    rhs = a * cwt_forward(f, fam, scales, rots).values + b * cwt_forward(
        g, fam, scales, rots
    ).values
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_forward_intertwines_rotation():
    # W_{R f}(rho, rot) = W_f(rho, R^{-1} rot): rotating the signal shifts
    # the rotation argument; spot-check via a rotation that maps grid nodes
    # to themselves (a z-rotation by a whole alpha step)
    spin, lmax = 1, 4
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(43)
    f = SpinField.random(spin, lmax, rng)
    scales = ScaleGrid.logarithmic(0.1, 4, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    step = 2 * np.pi / rots.n_alpha
    from spinwavelets import compose, inverse, rotate_field_harmonic

    zrot = EulerAngles(step, 0.0, 0.0)
    wf = cwt_forward(f, fam, scales, rots).values.reshape(
        scales.n_scales, rots.n_alpha, rots.n_beta, rots.n_gamma
    )
    wg = cwt_forward(rotate_field_harmonic(f, zrot), fam, scales, rots).values.reshape(
        scales.n_scales, rots.n_alpha, rots.n_beta, rots.n_gamma
    )
    np.testing.assert_allclose(wg, np.roll(wf, 1, axis=1), atol=1e-12)


@pytest.mark.parametrize("spin", [0, 1, -2])
def test_round_trip_inversion(spin):
    lmax = 8
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(44 + spin)
    f = SpinField.random(spin, lmax, rng)
    scales = ScaleGrid.logarithmic(1e-3, 48, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    rec = cwt_inverse(cwt_forward(f, fam, scales, rots), fam)
    rel = np.linalg.norm(rec.coeffs - f.coeffs) / np.linalg.norm(f.coeffs)
    assert rel < 5e-4


def test_round_trip_error_shrinks_with_window():
    spin, lmax = 1, 6
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(45)
    f = SpinField.random(spin, lmax, rng)
    rots = SO3Grid.for_bandlimit(lmax)
    errors = []
    for cutoff in (1e-1, 1e-2, 1e-3):
        scales = ScaleGrid.logarithmic(cutoff, 48, fam.weight)
        rec = cwt_inverse(cwt_forward(f, fam, scales, rots), fam)
        errors.append(np.linalg.norm(rec.coeffs - f.coeffs) / np.linalg.norm(f.coeffs))
    assert errors[2] < errors[1] < errors[0]


def test_inverse_agrees_with_reconstruction_factors():
    # inverse(forward(.)) multiplies each degree by Lambda_l exactly
    spin, lmax = 0, 5
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(46)
    f = SpinField.random(spin, lmax, rng)
    scales = ScaleGrid.logarithmic(0.05, 24, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    rec = cwt_inverse(cwt_forward(f, fam, scales, rots), fam)
    lam = reconstruction_factors(fam, scales)
    for l in range(lmax + 1):
        np.testing.assert_allclose(
            rec.degree_slice(l), lam[l] * f.degree_slice(l), atol=1e-12
        )


def test_isometry_on_wide_window():
    spin, lmax = 2, 6
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), spin, lmax)
    rng = np.random.default_rng(47)
    scales = ScaleGrid.logarithmic(1e-3, 48, fam.weight)
    rots = SO3Grid.for_bandlimit(lmax)
    for _ in range(5):
        f = SpinField.random(spin, lmax, rng)
        g = SpinField.random(spin, lmax, rng)
        lhs = phase_space_inner(
            cwt_forward(f, fam, scales, rots), cwt_forward(g, fam, scales, rots)
        )
        rhs = complex(np.vdot(f.coeffs, g.coeffs))
        assert abs(lhs - rhs) <= 1e-3 * abs(rhs)


def test_forward_validations():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 0, 4)
    scales = ScaleGrid.logarithmic(0.1, 4, fam.weight)
    rots = SO3Grid.for_bandlimit(4)
    wrong_spin = SpinField.zeros(1, 4)
    with pytest.raises(ValueError, match="spin"):
        cwt_forward(wrong_spin, fam, scales, rots)
    too_wide = SpinField.zeros(0, 6)
    with pytest.raises(ValueError, match="band limit"):
        cwt_forward(too_wide, fam, scales, rots)
    coarse = SO3Grid.build(3, 2, 3)
    with pytest.raises(ValueError, match="grid"):
        cwt_forward(SpinField.zeros(0, 4), fam, scales, coarse)


def test_phase_space_inner_grid_mismatch():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 0, 3)
    f = SpinField.zeros(0, 3)
    rots = SO3Grid.for_bandlimit(3)
    w1 = cwt_forward(f, fam, ScaleGrid.logarithmic(0.1, 4, fam.weight), rots)
    w2 = cwt_forward(f, fam, ScaleGrid.logarithmic(0.2, 4, fam.weight), rots)
    with pytest.raises(ValueError, match="grid"):
        phase_space_inner(w1, w2)


def test_wavelet_coefficients_shape_validation():
    fam = example_family(1.0, 1.0, 1.0, (1.0, 1.0), 0, 3)
    scales = ScaleGrid.logarithmic(0.1, 4, fam.weight)
    rots = SO3Grid.for_bandlimit(3)
    with pytest.raises(ValueError, match="shape"):
        WaveletCoefficients(scales, rots, 0, 3, np.zeros((4, 5), dtype=complex))
