"""Periodic grids, field containers, and the discrete Fourier-series transform.

Conventions (normative for the snapshot file format):

* grid points ``x_j = j L / N`` per axis, row-major storage;
* frequency index set ``{-N/2, ..., N/2 - 1}`` per axis, ``xi_k = k / L``,
  stored in FFT order (``0, 1, ..., N/2-1, -N/2, ..., -1``);
* Fourier-series coefficients ``a_hat_k = N^{-d} sum_j u(x_j) e^{-2 pi i k.j/N}``,
  so Parseval reads ``||u||_{L^2}^2 = L^d sum_k |a_hat_k|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Geometry",
    "FieldState",
    "SpectralField",
    "make_geometry",
    "forward_transform",
    "inverse_transform",
]


@dataclass(frozen=True)
class Geometry:
    """Rectangular periodic grid: ``N`` points per axis on ``[0, L)^d``."""

    d: int
    L: float
    N: int

    def __post_init__(self):
        if self.d not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.d}")
        if self.N < 8 or self.N % 2 != 0:
            raise ValueError(f"N must be even and >= 8, got {self.N}")
        if not (np.isfinite(self.L) and self.L > 0):
            raise ValueError(f"period L must be positive and finite, got {self.L}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.d

    @property
    def size(self) -> int:
        return self.N**self.d

    @property
    def dx(self) -> float:
        return self.L / self.N

    @property
    def cell_volume(self) -> float:
        return (self.L / self.N) ** self.d

    @property
    def volume(self) -> float:
        return self.L**self.d

    @cached_property
    def axis(self) -> np.ndarray:
        """Coordinates ``x_j = j L / N`` along one axis."""
        return np.arange(self.N) * self.dx

    @cached_property
    def coords(self) -> tuple[np.ndarray, ...]:
        """Per-axis coordinate arrays broadcast to the full grid shape."""
        return tuple(np.meshgrid(*([self.axis] * self.d), indexing="ij"))

    @cached_property
    def xi_axis(self) -> np.ndarray:
        """Frequencies ``k / L`` along one axis, FFT order."""
        return np.fft.fftfreq(self.N, d=self.dx)

    @cached_property
    def xi(self) -> tuple[np.ndarray, ...]:
        """Per-axis frequency arrays broadcast to the full grid shape."""
        return tuple(np.meshgrid(*([self.xi_axis] * self.d), indexing="ij"))

    @cached_property
    def xi_sq(self) -> np.ndarray:
        """``|xi_k|^2`` on the full grid, FFT order."""
        out = np.zeros(self.shape)
        for component in self.xi:
            out += component**2
        return out

    def radius(self, center: tuple[float, ...] | None = None) -> np.ndarray:
        """Euclidean distance from ``center`` (default: box center, no wrap)."""
        if center is None:
            center = (self.L / 2,) * self.d
        if len(center) != self.d:
            raise ValueError(f"center must have {self.d} components")
        out = np.zeros(self.shape)
        for x, c in zip(self.coords, center):
            out += (x - c) ** 2
        return np.sqrt(out)


def make_geometry(d: int, L: float, N: int) -> Geometry:
    """Validated constructor for :class:`Geometry`."""
    return Geometry(d=d, L=float(L), N=int(N))


def _as_locked_complex(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.shape != shape:
        raise ValueError(f"value array has shape {arr.shape}, expected {shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FieldState:
    """Complex samples of the solution on a :class:`Geometry`, at one time.

    The value array is copied and locked read-only at construction; states
    are safe to share between threads.
    """

    geometry: Geometry
    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        arr = _as_locked_complex(self.values, self.geometry.shape)
        if not np.all(np.isfinite(arr)):
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", arr)

    def with_values(self, values, time: float | None = None) -> "FieldState":
        return FieldState(self.geometry, values, self.time if time is None else time)


@dataclass(frozen=True)
class SpectralField:
    """Fourier-series coefficients of a field, FFT mode ordering.

    ``time`` is carried through so forward/inverse round trips preserve the
    full state.
    """

    geometry: Geometry
    coeffs: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_locked_complex(self.coeffs, self.geometry.shape))


def forward_transform(state: FieldState) -> SpectralField:
    """Coefficients ``a_hat_k = N^{-d} sum_j u(x_j) e^{-2 pi i k.j/N}``."""
    coeffs = np.fft.fftn(state.values) / state.geometry.size
    return SpectralField(state.geometry, coeffs, state.time)


def inverse_transform(spec: SpectralField) -> FieldState:
    """Inverse of :func:`forward_transform`; round trip is the identity."""
    values = np.fft.ifftn(spec.coeffs) * spec.geometry.size
    return FieldState(spec.geometry, values, spec.time)
