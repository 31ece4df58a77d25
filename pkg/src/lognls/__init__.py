"""Spectral workbench for the logarithmic Schrodinger equation.

Split-step Fourier evolution of ``i u_t + Lap u + lam u log|u|^2
(+ mu |u|^alpha u) = 0`` on periodic grids, plus the verification
experiments built on it: flow-stability ratios, pointwise-inequality
sweeps, dispersive-estimate scans, and regularization-limit studies.
"""

from ._kernels import BACKEND as kernel_backend

__all__ = ["kernel_backend"]
__version__ = "0.1.0"
