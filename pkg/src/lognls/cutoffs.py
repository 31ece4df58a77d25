"""Radial cutoff functions.

Two distinct cutoffs are used downstream and kept separate on purpose:

* the smooth spatial cutoff ``phi_R`` (1 on ``|x| <= R/2``, 0 on ``|x| >= R``)
  with analytic radial derivative and Laplacian, used by the localization
  experiment;
* the sharp ball indicator ``chi_{B_R}``, used by the local-smoothing scan.

The complex-plane cutoff ``theta`` (1 on ``|z| <= 1/2``, 0 on ``|z| >= 1``)
splits the logarithmic nonlinearity into its small- and large-modulus parts.

All transition profiles are the quintic smoothstep
``q(r) = 1 - (6 r^5 - 15 r^4 + 10 r^3)`` mapped linearly onto the transition
annulus: C^2, explicit derivatives, and exactly 1/2 at the annulus midpoint.
"""

from __future__ import annotations

import numpy as np

from .grid import Geometry

__all__ = [
    "spatial_cutoff",
    "spatial_cutoff_radial_derivative",
    "spatial_cutoff_laplacian",
    "complex_cutoff",
    "cutoff_on_grid",
    "ball_indicator",
]


def _smoothstep(r):
    # 6r^5 - 15r^4 + 10r^3 on [0, 1]; q = 1 - _smoothstep
    return r * r * r * (10.0 + r * (6.0 * r - 15.0))


def _smoothstep_d1(r):
    # 30r^4 - 60r^3 + 30r^2 = 30 r^2 (r - 1)^2
    return 30.0 * r * r * (r - 1.0) * (r - 1.0)


def _smoothstep_d2(r):
    # 120r^3 - 180r^2 + 60r = 60 r (2r - 1)(r - 1)
    return 60.0 * r * (2.0 * r - 1.0) * (r - 1.0)


def _profile(rho, inner: float, outer: float):
    """1 below ``inner``, 0 above ``outer``, quintic ramp between."""
    rho = np.asarray(rho, dtype=float)
    r = np.clip((rho - inner) / (outer - inner), 0.0, 1.0)
    return 1.0 - _smoothstep(r)


def spatial_cutoff(x, R: float):
    """phi_R at radius ``|x|``: 1 on ``|x| <= R/2``, 0 on ``|x| >= R``."""
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    return _profile(np.abs(x), R / 2.0, R)


def spatial_cutoff_radial_derivative(x, R: float):
    """d(phi_R)/d|x|; sup-norm scales as 1/R (quintic ramp: 3.75/R)."""
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    rho = np.abs(np.asarray(x, dtype=float))
    half = R / 2.0
    r = np.clip((rho - half) / half, 0.0, 1.0)
    inside = (rho > half) & (rho < R)
    return np.where(inside, -_smoothstep_d1(r) / half, 0.0)


def spatial_cutoff_laplacian(x, R: float, d: int):
    """Laplacian of phi_R in dimension ``d``; sup-norm scales as 1/R^2.

    For a radial profile P(|x|) this is P'' + (d-1) P'/|x|; the ramp starts
    at |x| = R/2 > 0 so the 1/|x| factor is regular on the support of P'.
    """
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rho = np.abs(np.asarray(x, dtype=float))
    half = R / 2.0
    r = np.clip((rho - half) / half, 0.0, 1.0)
    inside = (rho > half) & (rho < R)
    d1 = -_smoothstep_d1(r) / half
    d2 = -_smoothstep_d2(r) / (half * half)
    safe_rho = np.where(inside, rho, 1.0)
    return np.where(inside, d2 + (d - 1) * d1 / safe_rho, 0.0)


def complex_cutoff(z):
    """theta at ``|z|``: 1 on ``|z| <= 1/2``, 0 on ``|z| >= 1``, values in [0, 1]."""
    return _profile(np.abs(z), 0.5, 1.0)


def cutoff_on_grid(geometry: Geometry, R: float, center: tuple[float, ...] | None = None):
    """phi_R, its gradient components, and its Laplacian sampled on the grid.

    Returns ``(phi, grad, lap)`` where ``grad`` is a tuple of d arrays; the
    gradient is the analytic ``P'(|x|) (x - c)/|x|``.
    """
    if center is None:
        center = (geometry.L / 2,) * geometry.d
    rho = geometry.radius(center)
    phi = spatial_cutoff(rho, R)
    d1 = spatial_cutoff_radial_derivative(rho, R)
    safe_rho = np.where(rho > 0, rho, 1.0)
    grad = tuple((x - c) / safe_rho * d1 for x, c in zip(geometry.coords, center))
    lap = spatial_cutoff_laplacian(rho, R, geometry.d)
    return phi, grad, lap


def ball_indicator(geometry: Geometry, R: float, center: tuple[float, ...] | None = None) -> np.ndarray:
    """Sharp indicator of the ball of radius R (1.0 inside, 0.0 outside)."""
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    return (geometry.radius(center) <= R).astype(float)
