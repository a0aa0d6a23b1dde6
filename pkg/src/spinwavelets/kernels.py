"""Reproducing kernels of fixed-degree subspaces and the bounds they obey.

The degree-l kernel at spin weight s is

    K[s,l](x, y) = sum_m Y[s,l,m](x) * conj(Y[s,l,m](y)),

the integral kernel of the orthogonal projector onto degree l. It also has
a closed form through the Euler angles (a3, b3, g3) of the rotation
frame(y)^{-1} @ frame(x):

    K[s,l](x, y) = (-1)^s sqrt((2l+1)/(4 pi)) * Y[s,l,-s](b3, a3) * e^{-i s g3}
                 = (2l+1)/(4 pi) * d^l_{s,s}(b3) * e^{-i s (a3+g3)},

so |K| is controlled by |d^l_{s,s}|, growing no faster than l^{2|s|+1}.
The scan helpers below measure that growth and the companion Jacobi bound
|(1+t)^k P_n^{(0,k)}(t)| <= 2^k numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .euler import EulerAngles, compose
from .fields import GridField, SpinField
from .sphere import SpherePoint
from .transforms import analyze, grid_table, sy_theta_table
from .validation import check_band_limit
from .wigner import jacobi_all_degrees, wigner_d_column

__all__ = [
    "kernel_sum",
    "kernel_sum_batch",
    "kernel_closed",
    "kernel_closed_batch",
    "project_degree",
    "project_degree_quadrature",
    "kernel_bound_scan",
    "KernelBoundReport",
    "jacobi_bound_check",
    "JacobiBoundReport",
]


def kernel_sum_batch(spin, lmax, theta1, phi1, theta2, phi2) -> np.ndarray:
    """Degree kernels by direct summation over orders.

    All point arrays share one length n. Returns (lmax - |spin| + 1, n)
    complex values, degrees |spin|..lmax.
    """
    check_band_limit(lmax, spin)
    theta1 = np.atleast_1d(np.asarray(theta1, dtype=float))
    phi1 = np.atleast_1d(np.asarray(phi1, dtype=float))
    theta2 = np.atleast_1d(np.asarray(theta2, dtype=float))
    phi2 = np.atleast_1d(np.asarray(phi2, dtype=float))
    t1 = sy_theta_table(spin, lmax, theta1)
    t2 = sy_theta_table(spin, lmax, theta2)
    ms = np.arange(-lmax, lmax + 1)
    h1 = t1 * np.exp(1j * ms[None, :, None] * phi1[None, None, :])
    h2 = t2 * np.exp(1j * ms[None, :, None] * phi2[None, None, :])
    k = np.einsum("lmp,lmp->lp", h1, np.conj(h2))
    return k[abs(spin) :]


def kernel_sum(spin: int, l: int, x: SpherePoint, y: SpherePoint) -> complex:
    """K[spin,l](x, y) summed over the 2l+1 orders."""
    vals = kernel_sum_batch(spin, l, x.theta, x.phi, y.theta, y.phi)
    return complex(vals[-1, 0])


def kernel_closed_batch(spin, lmax, theta1, phi1, theta2, phi2) -> np.ndarray:
    """Degree kernels through the closed single-harmonic form.

    Composes frame(y)^{-1} with frame(x) per pair and evaluates
    (2l+1)/(4 pi) d^l_{s,s}(b3) e^{-i s (a3+g3)} for every degree at once.
    Layout matches :func:`kernel_sum_batch`.
    """
    check_band_limit(lmax, spin)
    theta1 = np.atleast_1d(np.asarray(theta1, dtype=float))
    phi1 = np.atleast_1d(np.asarray(phi1, dtype=float))
    theta2 = np.atleast_1d(np.asarray(theta2, dtype=float))
    phi2 = np.atleast_1d(np.asarray(phi2, dtype=float))
    n = theta1.size
    beta3 = np.empty(n)
    phase3 = np.empty(n)
    for i in range(n):
        rot = compose(
            EulerAngles(0.0, -theta2[i], -phi2[i]),
            EulerAngles(phi1[i], theta1[i], 0.0),
        )
        beta3[i] = rot.beta
        phase3[i] = rot.alpha + rot.gamma
    d = wigner_d_column(lmax, spin, spin, beta3)
    ls = np.arange(abs(spin), lmax + 1)
    pref = (2.0 * ls + 1.0) / (4.0 * np.pi)
    return pref[:, None] * d * np.exp(-1j * spin * phase3)[None, :]


def kernel_closed(spin: int, l: int, x: SpherePoint, y: SpherePoint) -> complex:
    """K[spin,l](x, y) by the closed form; equal to :func:`kernel_sum`."""
    vals = kernel_closed_batch(spin, l, x.theta, x.phi, y.theta, y.phi)
    return complex(vals[-1, 0])


def project_degree(f, l: int) -> SpinField:
    """Orthogonal projection onto degree l, in coefficient space.

    Accepts a SpinField, or a GridField (analyzed at the grid's supported
    band limit first). The projector is idempotent and self-adjoint.
    """
    if isinstance(f, GridField):
        f = analyze(f, f.grid.max_exact_degree)
    if l > f.lmax or l < abs(f.spin):
        raise ValueError(f"degree {l} outside the field's band")
    out = SpinField.zeros(f.spin, f.lmax)
    out.degree_slice(l)[:] = f.degree_slice(l)
    return out


def project_degree_quadrature(f: GridField, l: int) -> GridField:
    """Projection onto degree l by quadrature of the kernel integral.

    Materializes K[s,l](x_i, y_j) on all node pairs and applies the grid
    weights; a deliberately independent route used to cross-check
    :func:`project_degree`.
    """
    grid = f.grid
    spin = f.spin
    tab = grid_table(grid, spin, l)[l]  # (2l+1, n_theta)
    ms = np.arange(-l, l + 1)
    phase = np.exp(1j * np.outer(ms, grid.phi_nodes))
    h = np.einsum("mj,mk->mjk", tab, phase).reshape(2 * l + 1, -1)
    kern = np.einsum("mi,mj->ij", h, np.conj(h))
    w = (grid.theta_weights[:, None] * np.full(grid.n_phi, grid.phi_weight)).ravel()
    out = kern @ (w * f.values.ravel())
    return GridField(spin, grid, out.reshape(grid.n_theta, grid.n_phi))


@dataclass(frozen=True)
class KernelBoundReport:
    """Sampled maxima of |K[s,l]| against the polynomial growth bound.

    ratio[i] = max_abs[i] / max(l,1)^(2|s|+1); the bound says the ratio stays
    bounded, so its tail must not keep growing.
    """

    spin: int
    degrees: np.ndarray
    max_abs: np.ndarray
    ratio: np.ndarray
    n_pairs: int

    def tail_ok(self, window: int = 16, slack: float = 0.05) -> bool:
        tail = self.ratio[-window:]
        return bool(np.max(tail) <= (1.0 + slack) * tail[0])


def kernel_bound_scan(
    spin: int, lmax: int, n_pairs: int = 200, seed: int = 0
) -> KernelBoundReport:
    """Measure max |K[s,l]| over sampled point pairs for each degree.

    Pairs come from a seeded scrambled Halton sequence on the product of two
    spheres, plus coincident pairs (where the kernel attains (2l+1)/(4 pi)).
    """
    check_band_limit(lmax, spin)
    sampler = qmc.Halton(d=4, scramble=True, seed=seed)
    u = sampler.random(n_pairs)
    th1 = np.arccos(1.0 - 2.0 * u[:, 0])
    ph1 = 2.0 * np.pi * u[:, 1]
    th2 = np.arccos(1.0 - 2.0 * u[:, 2])
    ph2 = 2.0 * np.pi * u[:, 3]
    n_diag = min(n_pairs, 32)
    diag_th, diag_ph = th1[:n_diag].copy(), ph1[:n_diag].copy()
    th1 = np.concatenate([th1, diag_th])
    ph1 = np.concatenate([ph1, diag_ph])
    th2 = np.concatenate([th2, diag_th])
    ph2 = np.concatenate([ph2, diag_ph])
    vals = kernel_closed_batch(spin, lmax, th1, ph1, th2, ph2)
    max_abs = np.max(np.abs(vals), axis=1)
    ls = np.arange(abs(spin), lmax + 1)
    denom = np.maximum(ls, 1).astype(float) ** (2 * abs(spin) + 1)
    return KernelBoundReport(spin, ls, max_abs, max_abs / denom, th1.size)


@dataclass(frozen=True)
class JacobiBoundReport:
    """Scan of |(1+t)^k P_n^{(0,k)}(t)| against 2^k on [-1, 1]."""

    nmax: int
    kmax: int
    n_samples: int
    max_excess: float
    slack: float

    @property
    def passed(self) -> bool:
        return self.max_excess <= self.slack


def jacobi_bound_check(
    nmax: int = 30, kmax: int = 30, n_samples: int = 10_000, slack: float = 1e-9
) -> JacobiBoundReport:
    """Verify the weighted Jacobi bound numerically on a uniform t-mesh."""
    t = np.linspace(-1.0, 1.0, n_samples)
    worst = -np.inf
    for k in range(kmax + 1):
        p = jacobi_all_degrees(nmax, 0, k, t)
        excess = np.max(np.abs((1.0 + t) ** k * p)) - 2.0**k
        worst = max(worst, float(excess))
    return JacobiBoundReport(nmax, kmax, n_samples, worst, slack)
