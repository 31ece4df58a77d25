"""The logarithmic nonlinearity, its regularizations, and inequality sweeps.

Pointwise pieces: ``g(z) = lam z log|z|^2`` with the 0 log 0 = 0 convention,
the cutoff split ``g = g1 + g2`` at modulus ~1/2..1, the power perturbation
``h(z) = mu |z|^alpha z``, and two epsilon-regularizations of the log.

The sweep drivers turn existence-of-constant inequalities into measured
numbers: each draws a deterministic seeded sample cloud (log-uniform moduli
plus structured families near the extremizers) and records the max ratio in
an :class:`IneqReport`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .cutoffs import complex_cutoff

__all__ = [
    "NonlinearitySpec",
    "IneqReport",
    "g",
    "g_regularized",
    "split_g1_g2",
    "h",
    "ch_ratio",
    "g1_holder_ratio",
    "g2_log_ratio",
    "log_growth_bound_holds",
    "sweep_ch",
    "sweep_g1_constants",
    "sweep_g2_constant",
    "fit_log_growth_constants",
]

REG_FAMILIES = ("exact", "shifted_log", "floor_log")
_REG_MODE = {"exact": _kernels.REG_EXACT,
             "shifted_log": _kernels.REG_SHIFTED,
             "floor_log": _kernels.REG_FLOOR}


@dataclass(frozen=True)
class NonlinearitySpec:
    """Parameters of ``lam u log|u|^2 + mu |u|^alpha u`` and its regularization.

    ``lam = 0`` is allowed (linear flow, used as a control); ``mu = 0``
    disables the power term. ``epsilon = 0`` is only meaningful for the
    exact family.
    """

    lam: float = 1.0
    mu: float = 0.0
    alpha: float = 2.0
    reg_family: str = "exact"
    epsilon: float = 0.0

    def __post_init__(self):
        if self.reg_family not in REG_FAMILIES:
            raise ValueError(f"reg_family must be one of {REG_FAMILIES}, got {self.reg_family!r}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.reg_family == "exact" and self.epsilon != 0:
            raise ValueError("epsilon must be 0 for the exact family")
        if self.reg_family != "exact" and self.epsilon <= 0:
            raise ValueError(f"{self.reg_family} requires epsilon > 0")
        if self.alpha <= 0:
            raise ValueError(f"alpha must satisfy 0 < alpha < 4/(d-2)_+, got {self.alpha}")
        for name in ("lam", "mu", "alpha", "epsilon"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def reg_mode(self) -> int:
        return _REG_MODE[self.reg_family]

    def validate_alpha(self, d: int) -> None:
        """Enforce 0 < alpha < 4/(d-2)_+ for the given dimension."""
        ceiling = np.inf if d <= 2 else 4.0 / (d - 2)
        if not 0 < self.alpha < ceiling:
            raise ValueError(
                f"alpha={self.alpha} outside 0 < alpha < 4/(d-2)_+ for d={d}")


def _log_modulus(m):
    with np.errstate(divide="ignore"):
        return np.where(m > 0.0, np.log(np.where(m > 0.0, m, 1.0)), 0.0)


def g(z, lam: float):
    """``lam z log|z|^2``, with 0 at z = 0."""
    zc = np.asarray(z, dtype=np.complex128)
    out = (2.0 * lam * _log_modulus(np.abs(zc))) * zc
    return out if np.ndim(z) else complex(out)


def g_regularized(z, spec: NonlinearitySpec):
    """Regularized log nonlinearity; reduces to :func:`g` pointwise as eps -> 0."""
    zc = np.asarray(z, dtype=np.complex128)
    if spec.reg_family == "exact":
        out = (2.0 * spec.lam * _log_modulus(np.abs(zc))) * zc
    elif spec.reg_family == "shifted_log":
        out = (2.0 * spec.lam * np.log(np.hypot(np.abs(zc), spec.epsilon))) * zc
    else:  # floor_log
        out = (2.0 * spec.lam * np.log(np.maximum(np.abs(zc), spec.epsilon))) * zc
    return out if np.ndim(z) else complex(out)


def split_g1_g2(z, lam: float):
    """Cutoff split ``(g1, g2) = (theta g, (1-theta) g)``; ``g1 + g2 == g`` exactly."""
    zc = np.asarray(z, dtype=np.complex128)
    gz = (2.0 * lam * _log_modulus(np.abs(zc))) * zc
    g1 = complex_cutoff(zc) * gz
    g2 = gz - g1
    if np.ndim(z):
        return g1, g2
    return complex(g1), complex(g2)


def h(z, mu: float, alpha: float):
    """Power perturbation ``mu |z|^alpha z``."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    zc = np.asarray(z, dtype=np.complex128)
    out = (mu * np.abs(zc) ** alpha) * zc
    return out if np.ndim(z) else complex(out)


def _pair_arrays(z, w):
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    w = np.atleast_1d(np.asarray(w, dtype=np.complex128))
    return np.broadcast_arrays(z, w)


def ch_ratio(z, w):
    """``|Im[(conj(z-w))(z log|z| - w log|w|)]| / |z-w|^2`` (0 when z = w).

    The Cazenave-Haraux monotonicity inequality states this never exceeds 1.
    """
    zb, wb = _pair_arrays(z, w)
    t = zb * _log_modulus(np.abs(zb)) - wb * _log_modulus(np.abs(wb))
    diff = zb - wb
    den = diff.real**2 + diff.imag**2
    num = np.abs(diff.real * t.imag - diff.imag * t.real)
    out = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), 0.0)
    return out if np.ndim(z) or np.ndim(w) else float(out[0])


def g1_holder_ratio(z, w, delta: float, lam: float = 1.0):
    """``delta |g1(z)-g1(w)| / |z-w|^{1-delta}``: the empirical Hoelder constant.

    Suprema of this quantity over the unit disk stay bounded as delta -> 0;
    that is exactly the 1/delta growth of the g1 difference bound.
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    zb, wb = _pair_arrays(z, w)
    g1z = split_g1_g2(zb, lam)[0]
    g1w = split_g1_g2(wb, lam)[0]
    dist = np.abs(zb - wb)
    out = np.where(dist > 0.0,
                   delta * np.abs(g1z - g1w) / np.where(dist > 0.0, dist, 1.0) ** (1.0 - delta),
                   0.0)
    return out if np.ndim(z) or np.ndim(w) else float(out[0])


def g2_log_ratio(z, w, lam: float = 1.0):
    """``|g2(z)-g2(w)| / ((1 + log+|z| + log+|w|) |z-w|)``."""
    zb, wb = _pair_arrays(z, w)
    g2z = split_g1_g2(zb, lam)[1]
    g2w = split_g1_g2(wb, lam)[1]
    dist = np.abs(zb - wb)
    weight = 1.0 + np.log(np.maximum(np.abs(zb), 1.0)) + np.log(np.maximum(np.abs(wb), 1.0))
    out = np.where(dist > 0.0,
                   np.abs(g2z - g2w) / (weight * np.where(dist > 0.0, dist, 1.0)),
                   0.0)
    return out if np.ndim(z) or np.ndim(w) else float(out[0])


def log_growth_bound_holds(z, delta: float, c1: float, c2: float, lam: float = 1.0):
    """Whether ``|g(z)| <= (c1/delta)|z|^{1-delta} + c2 |z| log+|z|`` holds."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    zc = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    m = np.abs(zc)
    lhs = 2.0 * abs(lam) * m * np.abs(_log_modulus(m))
    rhs = (c1 / delta) * m ** (1.0 - delta) + c2 * m * np.log(np.maximum(m, 1.0))
    out = lhs <= rhs
    return out if np.ndim(z) else bool(out[0])


@dataclass(frozen=True)
class IneqReport:
    """Outcome of one inequality sweep."""

    inequality: str
    delta: float | None
    samples: int
    max_ratio: float
    argmax_pair: tuple[complex, complex]
    violations: int

    def to_json_dict(self) -> dict:
        z, w = self.argmax_pair
        return {
            "inequality": self.inequality,
            "delta": self.delta,
            "samples": self.samples,
            "max_ratio": self.max_ratio,
            "argmax": [z.real, z.imag, w.real, w.imag],
            "violations": self.violations,
        }


_BATCH = 1 << 18


def _log_uniform(rng, n, lo, hi):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), n))


def _phases(rng, n):
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))


def _split_counts(n, fractions):
    counts = [int(n * f) for f in fractions[:-1]]
    counts.append(n - sum(counts))
    return counts


def _structured_pairs(rng, n, lo, hi, structure):
    """One batch of sample pairs.

    ``structure`` allocates fractions to (independent, w_zero, antipodal,
    near) families; moduli are log-uniform on [lo, hi], phases uniform. The
    near family uses relative offsets log-uniform in [1e-8, 1].
    """
    n_ind, n_zero, n_anti, n_near = _split_counts(n, structure)
    parts_z, parts_w = [], []
    if n_ind:
        parts_z.append(_log_uniform(rng, n_ind, lo, hi) * _phases(rng, n_ind))
        parts_w.append(_log_uniform(rng, n_ind, lo, hi) * _phases(rng, n_ind))
    if n_zero:
        parts_z.append(_log_uniform(rng, n_zero, lo, hi) * _phases(rng, n_zero))
        parts_w.append(np.zeros(n_zero, dtype=np.complex128))
    if n_anti:
        za = _log_uniform(rng, n_anti, lo, hi) * _phases(rng, n_anti)
        parts_z.append(za)
        parts_w.append(-za)
    if n_near:
        zn = _log_uniform(rng, n_near, lo, hi) * _phases(rng, n_near)
        offset = _log_uniform(rng, n_near, 1e-8, 1.0) * _phases(rng, n_near)
        wn = zn * (1.0 + offset)
        big = np.abs(wn) > hi
        wn[big] = wn[big] / np.abs(wn[big]) * hi
        parts_z.append(zn)
        parts_w.append(wn)
    return np.concatenate(parts_z), np.concatenate(parts_w)


def _run_sweep(kernel, kernel_args, n_samples, seed, lo, hi, structure):
    """Batched max-reduction over seeded sample pairs."""
    seeds = np.random.SeedSequence(seed).spawn((n_samples + _BATCH - 1) // _BATCH)
    best = -np.inf
    best_pair = (0j, 0j)
    violations = 0
    done = 0
    for child in seeds:
        n = min(_BATCH, n_samples - done)
        rng = np.random.default_rng(child)
        z, w = _structured_pairs(rng, n, lo, hi, structure)
        ratio, idx, viol = kernel(z, w, *kernel_args)
        violations += viol
        if ratio > best:
            best = ratio
            best_pair = (complex(z[idx]), complex(w[idx]))
        done += n
    return best, best_pair, violations


def sweep_ch(n_samples: int = 1_000_000, seed: int = 0) -> IneqReport:
    """Sweep the Cazenave-Haraux ratio over pairs spanning moduli 1e-12..1e12."""
    best, pair, violations = _run_sweep(
        _kernels.ch_sweep, (1.0,), n_samples, seed,
        1e-12, 1e12, (0.8, 0.1, 0.0, 0.1))
    return IneqReport("cazenave_haraux", None, n_samples, best, pair, violations)


def sweep_g1_constants(deltas, n_samples: int = 1_000_000, seed: int = 0,
                       lam: float = 1.0) -> dict[float, IneqReport]:
    """Empirical c1(delta) over one shared unit-disk sample set.

    Moduli reach down to 1e-220 so the extremizing scale ``e^{-1/delta}`` is
    covered for every requested delta.
    """
    seeds = np.random.SeedSequence(seed).spawn((n_samples + _BATCH - 1) // _BATCH)
    best = {d: (-np.inf, (0j, 0j)) for d in deltas}
    done = 0
    for child in seeds:
        n = min(_BATCH, n_samples - done)
        rng = np.random.default_rng(child)
        z, w = _structured_pairs(rng, n, 1e-220, 1.0, (0.5, 0.2, 0.15, 0.15))
        for d in deltas:
            ratio, idx, _ = _kernels.g1_sweep(z, w, d, lam)
            if ratio > best[d][0]:
                best[d] = (ratio, (complex(z[idx]), complex(w[idx])))
        done += n
    return {d: IneqReport("g1_holder", d, n_samples, best[d][0], best[d][1], 0)
            for d in deltas}


def sweep_g2_constant(n_samples: int = 1_000_000, seed: int = 0,
                      lam: float = 1.0, max_modulus: float = 1e6) -> IneqReport:
    """Empirical c2 for the large-modulus log-Lipschitz bound on g2."""
    best, pair, violations = _run_sweep(
        _kernels.g2_sweep, (lam,), n_samples, seed,
        1e-2, max_modulus, (0.7, 0.1, 0.0, 0.2))
    return IneqReport("g2_log_lipschitz", None, n_samples, best, pair, violations)


def fit_log_growth_constants(delta: float, n_samples: int = 200_000, seed: int = 0,
                             lam: float = 1.0) -> tuple[float, float]:
    """Brute-force (c1, c2) for ``|g(z)| <= (c1/delta)|z|^{1-delta} + c2 |z| log+|z|``.

    c2 is the sup of ``|g|/(|z| log|z|)`` over moduli > 1, c1 the sup of the
    residual small-modulus part; validate on fresh samples before trusting.
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    rng = np.random.default_rng(seed)
    m_big = _log_uniform(rng, n_samples // 2, 1.0 + 1e-9, 1e12)
    lhs_big = 2.0 * abs(lam) * m_big * np.log(m_big)
    c2 = float(np.max(lhs_big / (m_big * np.log(m_big))))
    m = _log_uniform(rng, n_samples, 1e-300, 1e12)
    lhs = 2.0 * abs(lam) * m * np.abs(np.log(m))
    rest = np.maximum(lhs - c2 * m * np.log(np.maximum(m, 1.0)), 0.0)
    c1 = float(np.max(delta * rest * m ** (delta - 1.0)))
    return c1, c2
