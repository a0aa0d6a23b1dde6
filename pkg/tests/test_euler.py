"""Rotation parametrization against scipy's Rotation as an independent oracle.

Conventions under test: z-y-z intrinsic angles applied as active rotations,
matrix R = Rz(alpha) @ Ry(beta) @ Rz(gamma), normalized angle ranges
alpha, gamma in [0, 2pi), beta in [0, pi].
"""

import numpy as np
from scipy.spatial.transform import Rotation

from spinwavelets import EulerAngles, compose, euler_to_matrix, inverse, matrix_to_euler


def scipy_matrix(alpha, beta, gamma):
    return Rotation.from_euler("ZYZ", [alpha, beta, gamma]).as_matrix()


def random_angles(rng, n):
    for _ in range(n):
        yield EulerAngles(
            rng.uniform(0, 2 * np.pi),
            rng.uniform(0, np.pi),
            rng.uniform(0, 2 * np.pi),
        )


def test_matrix_matches_scipy():
    rng = np.random.default_rng(0)
    for ang in random_angles(rng, 50):
        expected = scipy_matrix(ang.alpha, ang.beta, ang.gamma)
        np.testing.assert_allclose(ang.matrix(), expected, atol=1e-14)


def test_matrix_euler_round_trip():
    rng = np.random.default_rng(1)
    for ang in random_angles(rng, 50):
        back = matrix_to_euler(ang.matrix())
        np.testing.assert_allclose(back.matrix(), ang.matrix(), atol=1e-12)


def test_identity():
    ident = EulerAngles.identity()
    np.testing.assert_allclose(ident.matrix(), np.eye(3), atol=0)
    assert ident.alpha == ident.beta == ident.gamma == 0.0


def test_compose_matches_matrix_product():
    rng = np.random.default_rng(2)
    pairs = zip(random_angles(rng, 25), random_angles(rng, 25))
    for a, b in pairs:
        c = compose(a, b)
        np.testing.assert_allclose(c.matrix(), a.matrix() @ b.matrix(), atol=1e-12)


def test_compose_gimbal_lock_canonical_form():
    # Both factors rotate about z only; the degenerate extraction puts the
    # whole rotation into gamma with alpha = beta = 0.
    a = EulerAngles(np.pi / 2, 0.0, 0.0)
    b = EulerAngles(0.0, 0.0, np.pi / 2)
    c = compose(a, b)
    assert c.alpha == 0.0
    assert c.beta == 0.0
    assert np.isclose(c.gamma, np.pi)
    oracle = scipy_matrix(np.pi / 2, 0, 0) @ scipy_matrix(0, 0, np.pi / 2)
    np.testing.assert_allclose(c.matrix(), oracle, atol=1e-14)


def test_degenerate_beta_pi():
    rot = euler_to_matrix(0.4, np.pi, 1.1)
    back = matrix_to_euler(rot)
    assert back.alpha == 0.0
    np.testing.assert_allclose(back.matrix(), rot, atol=1e-12)


def test_inverse_analytic_form():
    rng = np.random.default_rng(3)
    two_pi = 2 * np.pi
    for ang in random_angles(rng, 25):
        inv = inverse(ang)
        np.testing.assert_allclose(inv.matrix(), ang.matrix().T, atol=1e-12)
        if 1e-9 < ang.beta < np.pi - 1e-9:
            assert np.isclose(inv.alpha, (np.pi - ang.gamma) % two_pi)
            assert np.isclose(inv.beta, ang.beta)
            assert np.isclose(inv.gamma, (np.pi - ang.alpha) % two_pi)


def test_inverse_composes_to_identity():
    rng = np.random.default_rng(4)
    for ang in random_angles(rng, 25):
        c = compose(ang, inverse(ang))
        np.testing.assert_allclose(c.matrix(), np.eye(3), atol=1e-12)


def test_normalized_ranges():
    ang = EulerAngles(-0.5, 0.3, 7.0).normalized()
    assert 0 <= ang.alpha < 2 * np.pi
    assert 0 <= ang.gamma < 2 * np.pi
    np.testing.assert_allclose(
        ang.matrix(), EulerAngles(-0.5, 0.3, 7.0).matrix(), atol=1e-12
    )


def test_negative_beta_normalizes_to_canonical_triple():
    raw = EulerAngles(0.3, -0.2, 1.0)
    norm = raw.normalized()
    assert 0 <= norm.beta <= np.pi
    np.testing.assert_allclose(norm.matrix(), raw.matrix(), atol=1e-12)


def test_isclose_compares_geometry():
    a = EulerAngles(0.1, 0.0, 0.2)
    b = EulerAngles(0.2, 0.0, 0.1)  # same rotation, split differently
    assert a.isclose(b)
    assert not a.isclose(EulerAngles(0.1, 0.05, 0.2))
