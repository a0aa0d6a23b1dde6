"""Containers for spin-weighted fields in coefficient and grid form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sphere import SphereGrid
from .validation import check_band_limit, check_degree_order, check_spin

__all__ = ["SpinField", "GridField"]


@dataclass
class SpinField:
    """Band-limited spin-weighted function, stored by harmonic coefficients.

    Coefficients are flat, degree-major, order m running -l..l inside each
    degree, degrees running |spin|..lmax. Length (lmax+1)^2 - spin^2.
    """

    spin: int
    lmax: int
    coeffs: np.ndarray

    def __post_init__(self):
        check_spin(self.spin)
        check_band_limit(self.lmax, self.spin)
        c = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        n = self.n_coeffs(self.spin, self.lmax)
        if c.shape != (n,):
            raise ValueError(
                f"expected {n} coefficients for spin={self.spin}, "
                f"lmax={self.lmax}; got shape {c.shape}"
            )
        self.coeffs = c

    @staticmethod
    def n_coeffs(spin: int, lmax: int) -> int:
        return (lmax + 1) ** 2 - spin * spin

    def index(self, l: int, m: int) -> int:
        check_degree_order(self.spin, l, m)
        if l > self.lmax:
            raise ValueError(f"degree l={l} above band limit {self.lmax}")
        return l * l - self.spin * self.spin + l + m

    def get(self, l: int, m: int) -> complex:
        return complex(self.coeffs[self.index(l, m)])

    @classmethod
    def zeros(cls, spin: int, lmax: int) -> "SpinField":
        return cls(spin, lmax, np.zeros(cls.n_coeffs(spin, lmax), dtype=complex))

    @classmethod
    def unit(cls, spin: int, l: int, m: int, lmax: int) -> "SpinField":
        out = cls.zeros(spin, lmax)
        out.coeffs[out.index(l, m)] = 1.0
        return out

    @classmethod
    def random(cls, spin: int, lmax: int, rng: np.random.Generator) -> "SpinField":
        n = cls.n_coeffs(spin, lmax)
        return cls(spin, lmax, rng.standard_normal(n) + 1j * rng.standard_normal(n))

    def padded(self) -> np.ndarray:
        """Dense (lmax+1, 2*lmax+1) array, entry [l, m+lmax]; zeros off-band."""
        L, s = self.lmax, abs(self.spin)
        out = np.zeros((L + 1, 2 * L + 1), dtype=complex)
        for l in range(s, L + 1):
            start = l * l - s * s
            out[l, L - l : L + l + 1] = self.coeffs[start : start + 2 * l + 1]
        return out

    @classmethod
    def from_padded(cls, spin: int, lmax: int, padded: np.ndarray) -> "SpinField":
        L, s = lmax, abs(spin)
        out = cls.zeros(spin, lmax)
        for l in range(s, L + 1):
            start = l * l - s * s
            out.coeffs[start : start + 2 * l + 1] = padded[l, L - l : L + l + 1]
        return out

    def degree_slice(self, l: int) -> np.ndarray:
        """View of the coefficients of one degree, orders -l..l."""
        start = self.index(l, -l)
        return self.coeffs[start : start + 2 * l + 1]

    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def conjugate(self) -> "SpinField":
        """Coefficients of the pointwise complex conjugate (spin flips sign)."""
        out = SpinField.zeros(-self.spin, self.lmax)
        s = self.spin
        for l in range(abs(s), self.lmax + 1):
            src = self.degree_slice(l)[::-1]  # order -m
            ms = np.arange(-l, l + 1)
            out.degree_slice(l)[:] = (-1.0) ** ((s + ms) % 2) * np.conj(src)
        return out

    def copy(self) -> "SpinField":
        return SpinField(self.spin, self.lmax, self.coeffs.copy())

    def __add__(self, other: "SpinField") -> "SpinField":
        if self.spin != other.spin or self.lmax != other.lmax:
            raise ValueError("field layouts differ")
        return SpinField(self.spin, self.lmax, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpinField") -> "SpinField":
        if self.spin != other.spin or self.lmax != other.lmax:
            raise ValueError("field layouts differ")
        return SpinField(self.spin, self.lmax, self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "SpinField":
        return SpinField(self.spin, self.lmax, self.coeffs * complex(scalar))

    __rmul__ = __mul__


@dataclass
class GridField:
    """Samples of a spin-weighted function on a :class:`SphereGrid`."""

    spin: int
    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        check_spin(self.spin)
        v = np.ascontiguousarray(self.values, dtype=np.complex128)
        if v.shape != (self.grid.n_theta, self.grid.n_phi):
            raise ValueError(
                f"values shape {v.shape} does not match grid "
                f"({self.grid.n_theta}, {self.grid.n_phi})"
            )
        self.values = v

    def copy(self) -> "GridField":
        return GridField(self.spin, self.grid, self.values.copy())
