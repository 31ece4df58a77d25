"""Fourier-multiplier operators and norms on periodic fields.

All multipliers act in the ``xi_k = k/L`` convention of :mod:`lognls.grid`:
the free group ``e^{it Laplacian}`` has symbol ``e^{-i (2 pi |xi|)^2 t}`` and
the fractional derivative ``D^s`` has symbol ``(2 pi |xi|)^s``.
"""

from __future__ import annotations

import numpy as np

from .grid import FieldState, Geometry

__all__ = [
    "free_propagator",
    "fractional_derivative",
    "spectral_gradient",
    "sobolev_norm",
    "lp_norm",
]

TWO_PI = 2.0 * np.pi


def propagator_phase(geometry: Geometry, t: float) -> np.ndarray:
    """Unimodular symbol ``e^{-i (2 pi |xi|)^2 t}`` on the FFT-ordered grid."""
    return np.exp(-1j * TWO_PI**2 * geometry.xi_sq * t)


def apply_multiplier(values: np.ndarray, symbol: np.ndarray) -> np.ndarray:
    return np.fft.ifftn(symbol * np.fft.fftn(values))


def free_propagator(state: FieldState, t: float) -> FieldState:
    """Apply the free Schrodinger group over time ``t`` (an L2 isometry)."""
    if not np.isfinite(t):
        raise ValueError("propagation time must be finite")
    values = apply_multiplier(state.values, propagator_phase(state.geometry, t))
    return FieldState(state.geometry, values, state.time + t)


def fractional_symbol(geometry: Geometry, s: float) -> np.ndarray:
    """Symbol ``(2 pi |xi|)^s``; the zero mode is 1 for s=0 and 0 otherwise."""
    mod = TWO_PI * np.sqrt(geometry.xi_sq)
    if s == 0:
        return np.ones(geometry.shape)
    with np.errstate(divide="ignore"):
        sym = np.where(mod > 0, mod, 1.0) ** s
    sym[(0,) * geometry.d] = 0.0  # s < 0 symbol is singular at xi = 0
    return sym


def fractional_derivative(state: FieldState, s: float) -> FieldState:
    """Apply ``D^s``. For s < 0 the mean mode is projected out."""
    if not -2.0 <= s <= 2.0:
        raise ValueError(f"s must lie in [-2, 2], got {s}")
    values = apply_multiplier(state.values, fractional_symbol(state.geometry, s))
    return FieldState(state.geometry, values, state.time)


def spectral_gradient(state: FieldState) -> tuple[np.ndarray, ...]:
    """Per-axis partial derivatives, symbol ``2 pi i xi_j`` (Nyquist zeroed)."""
    geometry = state.geometry
    hat = np.fft.fftn(state.values)
    out = []
    for axis, xi in enumerate(geometry.xi):
        sym = (TWO_PI * 1j) * xi
        # the odd symbol has no symmetric partner at the Nyquist index
        index = [slice(None)] * geometry.d
        index[axis] = geometry.N // 2
        sym[tuple(index)] = 0.0
        out.append(np.fft.ifftn(sym * hat))
    return tuple(out)


def sobolev_norm(state: FieldState, s: float) -> float:
    """Inhomogeneous H^s norm ``(L^d sum_k (1 + (2 pi |xi_k|)^2)^s |a_k|^2)^{1/2}``."""
    if not 0.0 <= s <= 2.0:
        raise ValueError(f"s must lie in [0, 2], got {s}")
    geometry = state.geometry
    coeffs = np.fft.fftn(state.values) / geometry.size
    weight = (1.0 + TWO_PI**2 * geometry.xi_sq) ** s
    return float(np.sqrt(geometry.volume * np.sum(weight * np.abs(coeffs) ** 2)))


def lp_norm(state: FieldState, p: float) -> float:
    """Rectangle-rule L^p norm; ``p = inf`` returns the max modulus."""
    if not p >= 1:
        raise ValueError(f"p must lie in [1, inf], got {p}")
    mod = np.abs(state.values)
    if np.isinf(p):
        return float(mod.max())
    return float((state.geometry.cell_volume * np.sum(mod**p)) ** (1.0 / p))
