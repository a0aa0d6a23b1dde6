"""Spin-weighted harmonic evaluation, analysis, synthesis, and ladder operators.

Basis convention: the spin-s harmonic of degree l and order m at (theta, phi)
is

    Y[s,l,m](theta, phi) = (-1)^m sqrt((2l+1)/(4 pi)) d^l_{-m,s}(theta) e^{i m phi},

which reduces to the usual orthonormal (Condon-Shortley) scalar harmonics at
s = 0 and satisfies the standard raising/lowering ladder in coefficient
space. All transforms here are plain dense contractions against cached
tables of the real theta factors; grids sized for the band limit make
analysis of a synthesized field exact to roundoff.
"""

from __future__ import annotations

import numpy as np

from .fields import GridField, SpinField
from .sphere import SphereGrid, SpherePoint
from .validation import check_band_limit, check_degree_order
from .wigner import wigner_d_column

__all__ = [
    "sy_eval",
    "synthesize",
    "analyze",
    "evaluate_at",
    "inner_product",
    "eth_raise",
    "eth_lower",
]


def sy_theta_table(spin: int, lmax: int, thetas) -> np.ndarray:
    """Real factors (-1)^m sqrt((2l+1)/4pi) d^l_{-m,spin}(theta).

    Returns ndarray (lmax+1, 2*lmax+1, n_theta); zeros outside the band.
    The full harmonic value is table * exp(i m phi).
    """
    check_band_limit(lmax, spin)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    out = np.zeros((lmax + 1, 2 * lmax + 1, thetas.size))
    norms = np.sqrt((2.0 * np.arange(lmax + 1) + 1.0) / (4.0 * np.pi))
    for m in range(-lmax, lmax + 1):
        lmin = max(abs(m), abs(spin))
        col = wigner_d_column(lmax, -m, spin, thetas)
        out[lmin:, m + lmax, :] = (-1.0) ** (m % 2) * norms[lmin:, None] * col
    return out


def grid_table(grid: SphereGrid, spin: int, lmax: int) -> np.ndarray:
    """Per-grid cache of :func:`sy_theta_table` at the grid's theta nodes."""
    key = (spin, lmax)
    tab = grid._tables.get(key)
    if tab is None:
        tab = sy_theta_table(spin, lmax, grid.theta_nodes)
        grid._tables[key] = tab
    return tab


def sy_eval(spin: int, l: int, m: int, x: SpherePoint) -> complex:
    """Value of the spin-weighted harmonic Y[spin,l,m] at a point."""
    check_degree_order(spin, l, m)
    check_band_limit(l, spin)
    d = wigner_d_column(l, -m, spin, x.theta)[-1, 0]
    norm = np.sqrt((2.0 * l + 1.0) / (4.0 * np.pi))
    return complex((-1.0) ** (m % 2) * norm * d * np.exp(1j * m * x.phi))


def synthesize(c: SpinField, grid: SphereGrid) -> GridField:
    """Evaluate the coefficient expansion on every grid node."""
    L = c.lmax
    tab = grid_table(grid, c.spin, L)
    fm = np.einsum("lmj,lm->mj", tab, c.padded())
    ms = np.arange(-L, L + 1)
    phase = np.exp(1j * np.outer(ms, grid.phi_nodes))
    return GridField(c.spin, grid, np.einsum("mj,mk->jk", fm, phase))


def analyze(f: GridField, lmax: int) -> SpinField:
    """Harmonic coefficients of a sampled field by grid quadrature.

    Exact (to roundoff) whenever f is band-limited to lmax and the grid has
    n_theta, n_phi >= 2*lmax+1.
    """
    check_band_limit(lmax, f.spin)
    if f.grid.max_exact_degree < lmax:
        raise ValueError(
            f"grid ({f.grid.n_theta} x {f.grid.n_phi}) too coarse for "
            f"lmax={lmax}; needs at least {2 * lmax + 1} nodes per axis"
        )
    L = lmax
    tab = grid_table(f.grid, f.spin, L)
    ms = np.arange(-L, L + 1)
    phase = np.exp(-1j * np.outer(ms, f.grid.phi_nodes))
    gm = np.einsum("jk,mk->mj", f.values, phase) * f.grid.phi_weight
    padded = np.einsum("lmj,mj,j->lm", tab, gm, f.grid.theta_weights)
    return SpinField.from_padded(f.spin, L, padded)


def evaluate_at(c: SpinField, thetas, phis) -> np.ndarray:
    """Pointwise values of the expansion at arbitrary (theta, phi) arrays."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    L = c.lmax
    tab = sy_theta_table(c.spin, L, thetas)
    fm = np.einsum("lmj,lm->mj", tab, c.padded())
    ms = np.arange(-L, L + 1)
    phase = np.exp(1j * ms[:, None] * phis[None, :])
    return np.einsum("mj,mj->j", fm, phase)


def inner_product(f: GridField, g: GridField) -> complex:
    """Surface-measure inner product by grid quadrature; conjugate-linear in f."""
    if f.spin != g.spin:
        raise ValueError("inner product requires equal spins")
    if not f.grid.same_nodes(g.grid):
        raise ValueError("fields live on different grids")
    w = f.grid.theta_weights * f.grid.phi_weight
    return complex(np.einsum("j,jk->", w, np.conj(f.values) * g.values))


def _ladder(c: SpinField, new_spin: int, factors: np.ndarray) -> SpinField:
    if abs(new_spin) > c.lmax:
        raise ValueError(
            f"result spin {new_spin} exceeds band limit {c.lmax}"
        )
    src = c.padded()
    out = np.zeros_like(src)
    lo = max(abs(c.spin), abs(new_spin))
    for l in range(lo, c.lmax + 1):
        out[l] = factors[l] * src[l]
    return SpinField.from_padded(new_spin, c.lmax, out)


def eth_raise(c: SpinField) -> SpinField:
    """Spin-raising operator in coefficient space.

    Multiplies each degree by +sqrt((l-s)(l+s+1)) and raises the spin
    weight by one. Annihilates the bottom degree when s >= 0.
    """
    s = c.spin
    ls = np.arange(c.lmax + 1, dtype=float)
    factors = np.sqrt(np.maximum(0.0, (ls - s) * (ls + s + 1.0)))
    return _ladder(c, s + 1, factors)


def eth_lower(c: SpinField) -> SpinField:
    """Spin-lowering operator in coefficient space.

    Multiplies each degree by -sqrt((l+s)(l-s+1)) and lowers the spin
    weight by one. The composition lower(raise(f)) at spin 0 acts as
    -l(l+1), the surface Laplacian.
    """
    s = c.spin
    ls = np.arange(c.lmax + 1, dtype=float)
    factors = -np.sqrt(np.maximum(0.0, (ls + s) * (ls - s + 1.0)))
    return _ladder(c, s - 1, factors)
