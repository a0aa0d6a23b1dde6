"""Euler-angle algebra for rotations of the sphere, zyz convention.

A triple (alpha, beta, gamma) names the active rotation

    R = R_z(alpha) @ R_y(beta) @ R_z(gamma)

acting on column vectors in R^3. Canonical ranges are alpha, gamma in
[0, 2*pi) and beta in [0, pi]. Extraction from a matrix with beta = 0 or
beta = pi is degenerate; by convention the first angle is set to 0 and the
whole z-rotation is folded into the third angle, so the third angle stays
well defined wherever it is used as a phase.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EulerAngles",
    "euler_to_matrix",
    "matrix_to_euler",
    "compose",
    "inverse",
]

TWO_PI = 2.0 * np.pi

# sin(beta) at or below this is treated as a pure z-rotation
_DEGENERATE = 1e-12


@dataclass(frozen=True)
class EulerAngles:
    """zyz Euler triple.

    Arbitrary real values are accepted; :meth:`normalized` maps any triple
    to canonical ranges without changing the rotation it names.
    """

    alpha: float
    beta: float
    gamma: float

    @classmethod
    def identity(cls) -> "EulerAngles":
        return cls(0.0, 0.0, 0.0)

    def matrix(self) -> np.ndarray:
        """The 3x3 rotation matrix R_z(alpha) R_y(beta) R_z(gamma)."""
        return euler_to_matrix(self.alpha, self.beta, self.gamma)

    def normalized(self) -> "EulerAngles":
        return matrix_to_euler(self.matrix())

    def isclose(self, other: "EulerAngles", tol: float = 1e-12) -> bool:
        """Compare as rotations (matrix max-norm), not as raw triples."""
        return float(np.max(np.abs(self.matrix() - other.matrix()))) <= tol


def euler_to_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    cg, sg = np.cos(gamma), np.sin(gamma)
    return np.array(
        [
            [ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb],
            [sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb],
            [-sb * cg, sb * sg, cb],
        ]
    )


def matrix_to_euler(rot: np.ndarray) -> EulerAngles:
    """Canonical zyz angles of a rotation matrix.

    beta is recovered from atan2 of (sin beta, cos beta), which is accurate
    near the poles. Degenerate matrices (z-only rotations) return alpha = 0
    with the full z-angle in gamma.
    """
    rot = np.asarray(rot, dtype=float)
    sb = float(np.hypot(rot[0, 2], rot[1, 2]))
    if sb <= _DEGENERATE:
        alpha = 0.0
        beta = 0.0 if rot[2, 2] > 0.0 else float(np.pi)
        gamma = float(np.arctan2(rot[1, 0], rot[1, 1]))
    else:
        alpha = float(np.arctan2(rot[1, 2], rot[0, 2]))
        beta = float(np.arctan2(sb, rot[2, 2]))
        gamma = float(np.arctan2(rot[2, 1], -rot[2, 0]))
    return EulerAngles(alpha % TWO_PI, beta, gamma % TWO_PI)


def compose(a: EulerAngles, b: EulerAngles) -> EulerAngles:
    """Angles of 'apply b, then a': the matrix product a.matrix() @ b.matrix()."""
    return matrix_to_euler(a.matrix() @ b.matrix())


def inverse(a: EulerAngles) -> EulerAngles:
    """Angles of the inverse rotation (matrix transpose)."""
    return matrix_to_euler(a.matrix().T)
