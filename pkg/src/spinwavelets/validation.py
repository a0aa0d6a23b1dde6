"""Small argument and array validators shared across the package."""

from __future__ import annotations

import numpy as np

# Band limits above this are out of scope for the dense-table algorithms here.
LMAX_CAP = 128


def check_band_limit(lmax: int, spin: int = 0) -> None:
    if not isinstance(lmax, (int, np.integer)):
        raise TypeError(f"lmax must be an integer, got {type(lmax).__name__}")
    if lmax < abs(spin):
        raise ValueError(f"lmax={lmax} is below |spin|={abs(spin)}")
    if lmax > LMAX_CAP:
        raise ValueError(f"lmax={lmax} exceeds the supported cap {LMAX_CAP}")


def check_spin(spin: int) -> None:
    if not isinstance(spin, (int, np.integer)):
        raise TypeError(f"spin must be an integer, got {type(spin).__name__}")


def check_degree_order(spin: int, l: int, m: int) -> None:
    if l < abs(spin):
        raise ValueError(f"degree l={l} is below |spin|={abs(spin)}")
    if abs(m) > l:
        raise ValueError(f"order m={m} out of range for degree l={l}")


def as_complex_2d(X, n_cols: int, name: str = "X") -> np.ndarray:
    """Validate a 2-D complex matrix with a fixed column count, finite entries."""
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {X.shape}")
    if X.shape[1] != n_cols:
        raise ValueError(f"{name} must have {n_cols} columns, got {X.shape[1]}")
    X = np.ascontiguousarray(X, dtype=np.complex128)
    if not np.all(np.isfinite(X.real)) or not np.all(np.isfinite(X.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return X
