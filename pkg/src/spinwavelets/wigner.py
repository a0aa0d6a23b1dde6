"""Jacobi polynomials, associated Legendre functions, and Wigner d / D matrices.

The small-d matrix element d^l_{m,k}(beta) is evaluated through a closed form
in terms of Jacobi polynomials,

    d^l_{m,k}(beta) = 2^{-k} * sqrt[(l-k)!(l+k)! / ((l-m)!(l+m)!)]
                      * sin(beta)^{k-m} * (1+cos(beta))^m
                      * P^{(k-m, k+m)}_{l-k}(cos(beta)),

valid on the index region 0 <= m <= k where every power is a non-negative
integer. Arbitrary (m, k) are reduced to that region with the exact
symmetries

    d^l_{m,k} = (-1)^{m-k} d^l_{k,m} = (-1)^{m-k} d^l_{-m,-k},
    d^l_{m,k}(beta) = (-1)^{l-m} d^l_{m,-k}(pi - beta),

so no singular power is ever formed. Factorial ratios go through gammaln to
stay finite for degrees up to the supported cap.

Conventions: d^l(0) is the identity; the big-D element is
D^{km}_l(alpha, beta, gamma) = exp(-i k alpha) d^l_{k,m}(beta) exp(-i m gamma),
the matrix of the rotation in the degree-l harmonic basis (row index k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .euler import EulerAngles
from .validation import LMAX_CAP

__all__ = [
    "jacobi_poly",
    "jacobi_all_degrees",
    "legendre_assoc",
    "wigner_d",
    "wigner_d_column",
    "wigner_d_tables",
    "WignerTable",
    "wigner_D",
    "wigner_D_matrix",
]


def jacobi_all_degrees(nmax: int, a: int, b: int, t) -> np.ndarray:
    """P_n^{(a,b)}(t) for every n = 0..nmax by the three-term recurrence.

    Parameters
    ----------
    nmax : highest polynomial degree.
    a, b : non-negative integer Jacobi parameters.
    t : array_like, evaluation points.

    Returns
    -------
    ndarray of shape (nmax+1,) + t.shape.
    """
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    if a < 0 or b < 0:
        raise ValueError("Jacobi parameters must be non-negative")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty((nmax + 1,) + t.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = (a + 1) + (a + b + 2) * (t - 1.0) / 2.0
    for n in range(2, nmax + 1):
        c1 = 2.0 * n * (n + a + b) * (2 * n + a + b - 2)
        c2t = (2 * n + a + b - 1) * (2 * n + a + b) * (2 * n + a + b - 2)
        c2c = (2 * n + a + b - 1) * (a * a - b * b)
        c3 = 2.0 * (n + a - 1) * (n + b - 1) * (2 * n + a + b)
        out[n] = ((c2t * t + c2c) * out[n - 1] - c3 * out[n - 2]) / c1
    return out


def jacobi_poly(n: int, a: int, b: int, t):
    """P_n^{(a,b)}(t); scalar in, scalar out."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    vals = jacobi_all_degrees(n, a, b, t_arr)[n]
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(vals[0])
    return vals


def legendre_assoc(l: int, m: int, t):
    """Associated Legendre P_l^m(t) without the Condon-Shortley factor.

    P_1^1(t) = +sqrt(1-t^2). Upward recurrence in the degree from
    P_m^m = (2m-1)!! (1-t^2)^{m/2}.
    """
    if m < 0 or m > l:
        raise ValueError("requires 0 <= m <= l")
    t_in = t
    t = np.atleast_1d(np.asarray(t, dtype=float))
    somx2 = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    pmm = np.ones_like(t)
    for i in range(1, m + 1):
        pmm = pmm * (2 * i - 1) * somx2
    if l == m:
        out = pmm
    else:
        pmmp1 = (2 * m + 1) * t * pmm
        if l == m + 1:
            out = pmmp1
        else:
            for ll in range(m + 2, l + 1):
                pll = ((2 * ll - 1) * t * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
                pmm, pmmp1 = pmmp1, pll
            out = pmmp1
    if np.isscalar(t_in) or np.asarray(t_in).ndim == 0:
        return float(out[0])
    return out


def _reduce_indices(m: int, k: int):
    """Map (m, k) into 0 <= m <= k.

    Returns (m, k, parity, flip): the reduced indices, a constant parity
    exponent, and whether the angle flips to pi - beta. When flip is set the
    total sign also carries a factor (-1)^l.
    """
    parity = 0
    flip = False
    if (m > 0 > k) or (m < 0 < k):
        parity += -m
        k = -k
        flip = True
    if m < 0 or k < 0:
        parity += m - k
        m, k = -m, -k
    if m > k:
        parity += m - k
        m, k = k, m
    return m, k, parity, flip


def wigner_d_column(lmax: int, m: int, k: int, beta) -> np.ndarray:
    """d^l_{m,k}(beta) for every degree l = max(|m|,|k|) .. lmax.

    Parameters
    ----------
    lmax : highest degree (capped at 128).
    m, k : row and column indices, |m|, |k| <= lmax.
    beta : array_like of angles.

    Returns
    -------
    ndarray of shape (lmax - max(|m|,|k|) + 1, beta.size).
    """
    if lmax > LMAX_CAP:
        raise ValueError(f"lmax={lmax} exceeds the supported cap {LMAX_CAP}")
    lmin = max(abs(m), abs(k))
    if lmin > lmax:
        raise ValueError(f"|m|={abs(m)}, |k|={abs(k)} exceed lmax={lmax}")
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    mm, kk, parity, flip = _reduce_indices(m, k)
    b = np.pi - beta if flip else beta
    t = np.cos(b)
    ls = np.arange(lmin, lmax + 1)
    logpref = 0.5 * (
        gammaln(ls - kk + 1.0)
        + gammaln(ls + kk + 1.0)
        - gammaln(ls - mm + 1.0)
        - gammaln(ls + mm + 1.0)
    )
    pref = np.exp(logpref) * 2.0 ** (-kk)
    base = np.sin(b) ** (kk - mm) * (1.0 + t) ** mm
    jac = jacobi_all_degrees(lmax - kk, kk - mm, kk + mm, t)
    vals = pref[:, None] * base[None, :] * jac
    if flip:
        signs = (-1.0) ** ((parity + ls) % 2)
        vals = vals * signs[:, None]
    elif parity % 2:
        vals = -vals
    return vals


def wigner_d(l: int, m: int, k: int, beta: float) -> float:
    """Single small-d element d^l_{m,k}(beta)."""
    col = wigner_d_column(l, m, k, float(beta))
    return float(col[-1, 0])


def wigner_d_tables(lmax: int, betas) -> np.ndarray:
    """Dense small-d tables at several angles.

    Returns ndarray of shape (n_beta, lmax+1, 2*lmax+1, 2*lmax+1) with
    entry [b, l, i+lmax, j+lmax] = d^l_{i,j}(beta_b), zero where |i| or |j|
    exceeds l.
    """
    betas = np.atleast_1d(np.asarray(betas, dtype=float))
    out = np.zeros((lmax + 1, 2 * lmax + 1, 2 * lmax + 1, betas.size))
    for m in range(-lmax, lmax + 1):
        for k in range(-lmax, lmax + 1):
            lmin = max(abs(m), abs(k))
            out[lmin:, m + lmax, k + lmax, :] = wigner_d_column(lmax, m, k, betas)
    return np.moveaxis(out, -1, 0)


@dataclass(frozen=True)
class WignerTable:
    """All small-d elements up to a band limit at one angle.

    entries[l, m+lmax, k+lmax] = d^l_{m,k}(beta); entries outside |m|,|k| <= l
    are zero. d^l(0) is the identity and every d^l(beta) is orthogonal.
    """

    lmax: int
    beta: float
    entries: np.ndarray

    @classmethod
    def build(cls, lmax: int, beta: float) -> "WignerTable":
        return cls(lmax, float(beta), wigner_d_tables(lmax, float(beta))[0])

    def value(self, l: int, m: int, k: int) -> float:
        if l > self.lmax or abs(m) > l or abs(k) > l:
            raise ValueError("indices out of range for this table")
        return float(self.entries[l, m + self.lmax, k + self.lmax])

    def matrix(self, l: int) -> np.ndarray:
        """The (2l+1) x (2l+1) matrix d^l, rows m = -l..l, columns k = -l..l."""
        if l > self.lmax:
            raise ValueError("degree out of range for this table")
        sl = slice(self.lmax - l, self.lmax + l + 1)
        return self.entries[l, sl, sl].copy()


def wigner_D(l: int, k: int, m: int, rot: EulerAngles) -> complex:
    """Rotation matrix element D^{km}_l(rot) in the degree-l harmonic basis."""
    d = wigner_d(l, k, m, rot.beta)
    return complex(np.exp(-1j * k * rot.alpha) * d * np.exp(-1j * m * rot.gamma))


def wigner_D_matrix(l: int, rot: EulerAngles) -> np.ndarray:
    """Full (2l+1) x (2l+1) matrix D^l(rot), rows k = -l..l, columns m = -l..l."""
    table = WignerTable.build(l, rot.beta)
    ms = np.arange(-l, l + 1)
    ek = np.exp(-1j * ms * rot.alpha)
    em = np.exp(-1j * ms * rot.gamma)
    return ek[:, None] * table.matrix(l) * em[None, :]
