"""Pure-numpy implementations of the hot kernels.

Semantics are shared with the compiled backend (``_compiled.pyx``); the
parity suite in ``tests/test_kernels.py`` holds the two together.
"""

from __future__ import annotations

import numpy as np

# moduli below this are treated as exactly 0 in phase computations: the log
# of a denormal modulus would contribute pure phase noise
MODULUS_FLOOR = 1e-280
# |phase| beyond 2^53 has lost every significant digit
PHASE_OVERFLOW = 2.0**53

REG_EXACT, REG_SHIFTED, REG_FLOOR = 0, 1, 2


def _log_modulus(m: np.ndarray) -> np.ndarray:
    """log|z| with the 0 -> 0 convention (finite everywhere)."""
    with np.errstate(divide="ignore"):
        return np.where(m > 0.0, np.log(np.where(m > 0.0, m, 1.0)), 0.0)


def nl_phase(z: np.ndarray, dt: float, lam: float, mu: float, alpha: float,
             eps: float, mode: int) -> tuple[np.ndarray, int]:
    """Pointwise exact flow of the nonlinear substep.

    Maps ``z -> z exp(i dt (lam*logterm + mu |z|^alpha))`` where ``logterm``
    is ``log|z|^2`` (exact), ``log(|z|^2 + eps^2)`` (shifted) or
    ``log(max(|z|, eps)^2)`` (floored). Moduli below ``MODULUS_FLOOR`` pass
    through unchanged. Returns the rotated array and the count of phases
    that overflowed 2^53 or went non-finite.
    """
    z = np.asarray(z, dtype=np.complex128)
    m = np.abs(z)
    live = m >= MODULUS_FLOOR
    safe_m = np.where(live, m, 1.0)
    if mode == REG_EXACT:
        logterm = 2.0 * np.log(safe_m)
    elif mode == REG_SHIFTED:
        logterm = 2.0 * np.log(np.hypot(safe_m, eps))
    elif mode == REG_FLOOR:
        logterm = 2.0 * np.log(np.maximum(safe_m, eps))
    else:
        raise ValueError(f"unknown regularization mode {mode}")
    with np.errstate(over="ignore", invalid="ignore"):
        phase = (dt * lam) * logterm
        if mu != 0.0:
            phase = phase + (dt * mu) * safe_m**alpha
        overflow = int(np.count_nonzero(
            live & (~np.isfinite(phase) | (np.abs(phase) > PHASE_OVERFLOW))))
        out = np.where(live, z * np.exp(1j * phase), z)
    return out, overflow


def _theta(m: np.ndarray) -> np.ndarray:
    # quintic smoothstep ramp on [1/2, 1]; matches lognls.cutoffs.complex_cutoff
    r = np.clip(2.0 * m - 1.0, 0.0, 1.0)
    return 1.0 - r * r * r * (10.0 + r * (6.0 * r - 15.0))


def _log_plus(m: np.ndarray) -> np.ndarray:
    return np.log(np.maximum(m, 1.0))


def ch_sweep(z: np.ndarray, w: np.ndarray, bound: float = np.inf) -> tuple[float, int, int]:
    """Max of ``|Im[(conj(z-w))(z log|z| - w log|w|)]| / |z-w|^2`` over pairs.

    Returns ``(max_ratio, argmax_index, violations)`` with violations counted
    against ``bound`` at 1e-12 relative slack; coincident pairs score 0.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    t = z * _log_modulus(np.abs(z)) - w * _log_modulus(np.abs(w))
    diff = z - w
    den = diff.real**2 + diff.imag**2
    num = np.abs(diff.real * t.imag - diff.imag * t.real)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), 0.0)
    idx = int(np.argmax(ratio))
    violations = int(np.count_nonzero(ratio > bound * (1.0 + 1e-12)))
    return float(ratio[idx]), idx, violations


def _g1(z: np.ndarray, m: np.ndarray, lam: float) -> np.ndarray:
    return (lam * _theta(m) * 2.0 * _log_modulus(m)) * z


def g1_sweep(z: np.ndarray, w: np.ndarray, delta: float, lam: float = 1.0,
             bound: float = np.inf) -> tuple[float, int, int]:
    """Max of ``delta |g1(z)-g1(w)| / |z-w|^{1-delta}``; the empirical c1."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    dg = _g1(z, np.abs(z), lam) - _g1(w, np.abs(w), lam)
    dist = np.abs(z - w)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(dist > 0.0,
                         delta * np.abs(dg) / np.where(dist > 0.0, dist, 1.0) ** (1.0 - delta),
                         0.0)
    idx = int(np.argmax(ratio))
    violations = int(np.count_nonzero(ratio > bound * (1.0 + 1e-12)))
    return float(ratio[idx]), idx, violations


def g2_sweep(z: np.ndarray, w: np.ndarray, lam: float = 1.0,
             bound: float = np.inf) -> tuple[float, int, int]:
    """Max of ``|g2(z)-g2(w)| / ((1 + log+|z| + log+|w|) |z-w|)``; empirical c2."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    mz, mw = np.abs(z), np.abs(w)
    g2z = (lam * (1.0 - _theta(mz)) * 2.0 * _log_modulus(mz)) * z
    g2w = (lam * (1.0 - _theta(mw)) * 2.0 * _log_modulus(mw)) * w
    dist = np.abs(z - w)
    weight = 1.0 + _log_plus(mz) + _log_plus(mw)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(dist > 0.0,
                         np.abs(g2z - g2w) / (weight * np.where(dist > 0.0, dist, 1.0)),
                         0.0)
    idx = int(np.argmax(ratio))
    violations = int(np.count_nonzero(ratio > bound * (1.0 + 1e-12)))
    return float(ratio[idx]), idx, violations
