"""Points and quadrature grids on the unit sphere.

Grids pair Gauss-Legendre nodes in cos(theta) with equiangular phi columns.
With n_theta, n_phi >= 2*lmax+1 the node weights integrate products of any
two band-limited basis functions exactly (up to roundoff), which is what the
analysis/synthesis round trip relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .euler import TWO_PI, EulerAngles

__all__ = [
    "SpherePoint",
    "SphereGrid",
    "third_angle_kappa",
    "rotated_frame_coords",
    "rotated_frame_coords_multi",
]

_DEGENERATE = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """Colatitude theta in [0, pi], longitude phi wrapped to [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        th = float(self.theta)
        if th < -1e-9 or th > np.pi + 1e-9:
            raise ValueError(f"theta={th} outside [0, pi]")
        object.__setattr__(self, "theta", min(max(th, 0.0), float(np.pi)))
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)

    def vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array(
            [st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)]
        )

    @classmethod
    def from_vector(cls, v) -> "SpherePoint":
        v = np.asarray(v, dtype=float)
        r = np.linalg.norm(v)
        if r == 0.0:
            raise ValueError("zero vector has no direction")
        return cls(float(np.arccos(np.clip(v[2] / r, -1.0, 1.0))),
                   float(np.arctan2(v[1], v[0])))

    def frame(self) -> EulerAngles:
        """The rotation (phi, theta, 0) carrying the north pole to this point."""
        return EulerAngles(self.phi, self.theta, 0.0)


def rotated_frame_coords(rot: EulerAngles, theta, phi):
    """Coordinates of rot^{-1} x plus the frame phase angle, vectorized over x.

    For each point x = (theta, phi), form M = rot^{-1} @ frame(x) where
    frame(x) = (phi, theta, 0). The first two zyz angles of M are the
    coordinates (phi', theta') of rot^{-1} x; the third is the phase angle
    kappa picked up by spin-weighted fields under the rotation. Degenerate
    M (rotated point at a pole) follows the z-only convention: first angle
    zero, full z-rotation in kappa.

    Returns (theta_r, phi_r, kappa) arrays shaped like the inputs.
    """
    R = rot.matrix()
    return _frame_coords_from_matrix(
        R[0, 0], R[0, 1], R[0, 2],
        R[1, 0], R[1, 1], R[1, 2],
        R[2, 0], R[2, 1], R[2, 2],
        np.asarray(theta, dtype=float), np.asarray(phi, dtype=float),
    )


def rotated_frame_coords_multi(alpha, beta, gamma, theta: float, phi: float):
    """Same as :func:`rotated_frame_coords` but vectorized over rotations.

    alpha, beta, gamma are arrays of zyz angles; (theta, phi) is one point.
    """
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    cg, sg = np.cos(gamma), np.sin(gamma)
    return _frame_coords_from_matrix(
        ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb,
        sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb,
        -sb * cg, sb * sg, cb,
        float(theta), float(phi),
    )


def _frame_coords_from_matrix(r00, r01, r02, r10, r11, r12, r20, r21, r22,
                              theta, phi):
    # M = R^T @ Xi with Xi the frame matrix of (theta, phi); only the
    # entries needed for angle extraction are formed.
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    x0, x1, x2 = st * cp, st * sp, ct
    xi00, xi10, xi20 = cp * ct, sp * ct, -st
    m02 = r00 * x0 + r10 * x1 + r20 * x2
    m12 = r01 * x0 + r11 * x1 + r21 * x2
    m22 = r02 * x0 + r12 * x1 + r22 * x2
    m20 = r02 * xi00 + r12 * xi10 + r22 * xi20
    m21 = -r02 * sp + r12 * cp
    m00 = r00 * xi00 + r10 * xi10 + r20 * xi20
    m10 = r01 * xi00 + r11 * xi10 + r21 * xi20
    m11 = -r01 * sp + r11 * cp
    sb = np.hypot(m02, m12)
    theta_r = np.arctan2(sb, m22)
    regular = sb > _DEGENERATE
    phi_r = np.where(regular, np.arctan2(m12, m02), 0.0) % TWO_PI
    kappa = np.where(
        regular, np.arctan2(m21, -m20), np.arctan2(m10, m11)
    ) % TWO_PI
    return theta_r, phi_r, kappa


def third_angle_kappa(rot: EulerAngles, x: SpherePoint) -> float:
    """Third zyz angle of rot^{-1} @ frame(x); the spin phase of a rotation at x."""
    _, _, kappa = rotated_frame_coords(rot, x.theta, x.phi)
    return float(kappa)


@dataclass
class SphereGrid:
    """Gauss-Legendre x equiangular product grid.

    theta_nodes are the arccos of Gauss-Legendre nodes (increasing
    colatitude); theta_weights are the matching Gauss-Legendre weights
    (summing to 2). phi columns are uniform with spacing 2*pi/n_phi; the
    per-node measure weight is theta_weight * (2*pi/n_phi), so the weights
    total 4*pi.
    """

    n_theta: int
    n_phi: int
    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    _tables: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def gauss_legendre(cls, n_theta: int, n_phi: int) -> "SphereGrid":
        if n_theta < 1 or n_phi < 1:
            raise ValueError("grid sizes must be positive")
        x, w = np.polynomial.legendre.leggauss(n_theta)
        order = np.argsort(-x)  # increasing colatitude
        return cls(n_theta, n_phi, np.arccos(x[order]), w[order].copy())

    @classmethod
    def for_bandlimit(cls, lmax: int) -> "SphereGrid":
        n = 2 * lmax + 1
        return cls.gauss_legendre(n, n)

    @property
    def phi_nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n_phi) / self.n_phi

    @property
    def phi_weight(self) -> float:
        return TWO_PI / self.n_phi

    @property
    def max_exact_degree(self) -> int:
        """Largest band limit whose products this grid integrates exactly."""
        return min((self.n_theta - 1) // 2, (self.n_phi - 1) // 2)

    def total_measure(self) -> float:
        return float(np.sum(self.theta_weights) * self.phi_weight * self.n_phi)

    def points(self):
        """Mesh of (theta, phi) node coordinates, each shaped (n_theta, n_phi)."""
        return np.meshgrid(self.theta_nodes, self.phi_nodes, indexing="ij")

    def same_nodes(self, other: "SphereGrid") -> bool:
        return (
            self.n_theta == other.n_theta
            and self.n_phi == other.n_phi
            and np.array_equal(self.theta_nodes, other.theta_nodes)
        )
