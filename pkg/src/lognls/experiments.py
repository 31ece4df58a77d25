"""Verification experiments: stability ratios, standing waves, dispersive
scans, localization-error decay, regularization limits, and the power-form
Gronwall checker.

Every experiment returns a small result object carrying the measured series
and a boolean verdict with its slack; the CLI serializes these into reports.
Scans are embarrassingly parallel over seeds/parameters and reduce in a
deterministic order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cutoffs import ball_indicator, cutoff_on_grid
from .evolution import SolverConfig, Trajectory, evolve
from .grid import FieldState, Geometry
from .nonlinearity import NonlinearitySpec
from .operators import TWO_PI, fractional_symbol, propagator_phase, sobolev_norm

__all__ = [
    "RandomFieldSpec",
    "ScanResult",
    "SolutionPairBound",
    "StabilityResult",
    "GaussonResult",
    "LimitResult",
    "GronwallVerdict",
    "make_random_field",
    "l2_distance",
    "fit_loglog_slope",
    "stability_experiment",
    "gausson_profile",
    "gausson_ansatz_residual",
    "gausson_experiment",
    "regularization_limit_experiment",
    "spacetime_l4_ratio",
    "zygmund_scan",
    "free_wave_source",
    "local_smoothing_scan",
    "localization_error_experiment",
    "power_gronwall_check",
]


def _parallel_map(fn, items):
    """Ordered map over independent tasks; LOGNLS_THREADS sets the pool size.

    Serial by default: the desk-scale grids are GIL-bound (many small FFTs),
    where extra threads only add contention. Results are collected in
    submission order either way, so the reduction is deterministic.
    """
    items = list(items)
    workers = int(os.environ.get("LOGNLS_THREADS", "1"))
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# random data


@dataclass(frozen=True)
class RandomFieldSpec:
    """Seeded H^s data generator parameters.

    ``spectral_slope`` defaults to ``target_s + d/2 + 0.1``, just above the
    summability threshold, so the field barely lives in the target space.
    """

    target_s: float
    target_norm: float
    seed: int
    spectral_slope: float | None = None

    def slope_for(self, d: int) -> float:
        slope = self.spectral_slope
        if slope is None:
            slope = self.target_s + d / 2 + 0.1
        if slope <= self.target_s + d / 2:
            raise ValueError(
                f"spectral_slope must exceed target_s + d/2 = {self.target_s + d / 2}")
        return slope


def make_random_field(spec: RandomFieldSpec, geometry: Geometry) -> FieldState:
    """Gaussian spectral field normalized to ``sobolev_norm(., target_s)``."""
    slope = spec.slope_for(geometry.d)
    rng = np.random.default_rng(spec.seed)
    zeta = rng.standard_normal(geometry.shape) + 1j * rng.standard_normal(geometry.shape)
    envelope = (1.0 + TWO_PI**2 * geometry.xi_sq) ** (-slope / 2.0)
    values = np.fft.ifftn(envelope * zeta) * geometry.size
    state = FieldState(geometry, values, 0.0)
    if spec.target_norm == 0:
        return FieldState(geometry, np.zeros(geometry.shape, dtype=complex), 0.0)
    current = sobolev_norm(state, spec.target_s)
    return FieldState(geometry, values * (spec.target_norm / current), 0.0)


def l2_distance(a: FieldState, b: FieldState) -> float:
    if a.geometry != b.geometry:
        raise ValueError("fields live on different geometries")
    return float(np.sqrt(a.geometry.cell_volume * np.sum(np.abs(a.values - b.values) ** 2)))


def fit_loglog_slope(x, y) -> tuple[float, float]:
    """Least-squares slope of log y vs log x and its RMS residual."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 3:
        raise ValueError("slope fit needs at least 3 points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("slope fit needs positive data")
    coeffs = np.polyfit(np.log(x), np.log(y), 1)
    fitted = np.polyval(coeffs, np.log(x))
    residual = float(np.sqrt(np.mean((np.log(y) - fitted) ** 2)))
    return float(coeffs[0]), residual


@dataclass
class ScanResult:
    """Parameter scan outcome with optional log-log slope fit."""

    parameter: str
    values: list[float]
    measured: list[float]
    slope: float | None
    residual: float | None
    verdict: bool | None
    slack: float | None
    extras: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SolutionPairBound:
    """Max of two trajectories' H^s norms over the horizon."""

    M: float
    s: float

    @staticmethod
    def from_trajectories(u: Trajectory, v: Trajectory, s: float) -> "SolutionPairBound":
        norms = [sobolev_norm(snap, s) for snap in (*u.snapshots, *v.snapshots)]
        return SolutionPairBound(M=float(max(norms)), s=s)


# ---------------------------------------------------------------------------
# stability of the flow map


@dataclass
class StabilityResult:
    times: list[float]
    ratios: list[float]
    exponent: float
    normalized_sup: float
    tol: float
    verdict: bool
    pair_bound: SolutionPairBound | None = None

    @property
    def slack(self) -> float:
        return 1.0 + self.tol - self.normalized_sup


def stability_experiment(u0: FieldState, v0: FieldState, spec: NonlinearitySpec,
                         config: SolverConfig, tol: float = 0.05,
                         bound_s: float | None = None) -> StabilityResult:
    """Track ``||u-v|| / ||u0-v0||`` against the Lipschitz envelope ``e^{2|lam| t}``.

    The verdict asserts ``sup_t ratio(t) e^{-2|lam| t} <= 1 + tol``.
    """
    if spec.mu != 0:
        raise ValueError("stability experiment requires mu = 0")
    d0 = l2_distance(u0, v0)
    norm0 = float(np.sqrt(u0.geometry.cell_volume * np.sum(np.abs(u0.values) ** 2)))
    if d0 < 1e-14 * norm0:
        raise ValueError("degenerate pair: ||u0 - v0|| below 1e-14 ||u0||")
    traj_u = evolve(u0, spec, config)
    traj_v = evolve(v0, spec, config)
    times, ratios = [], []
    for su, sv in zip(traj_u.snapshots, traj_v.snapshots):
        times.append(su.time - u0.time)
        ratios.append(l2_distance(su, sv) / d0)
    normalized = [r * np.exp(-2.0 * abs(spec.lam) * t) for t, r in zip(times, ratios)]
    sup = float(max(normalized))
    bound = None
    if bound_s is not None:
        bound = SolutionPairBound.from_trajectories(traj_u, traj_v, bound_s)
    return StabilityResult(times=times, ratios=ratios, exponent=2.0 * abs(spec.lam),
                           normalized_sup=sup, tol=tol, verdict=sup <= 1.0 + tol,
                           pair_bound=bound)


# ---------------------------------------------------------------------------
# Gausson standing wave


def gausson_profile(geometry: Geometry, lam: float, omega: float) -> FieldState:
    """Standing-wave profile ``e^{(omega + d lam)/(2 lam)} e^{-lam |x - c|^2 / 2}``.

    Requires lam > 0; rejects boxes whose boundary truncates the Gaussian
    above 1e-10 of its peak.
    """
    if not lam > 0:
        raise ValueError(f"Gausson profile requires lam > 0, got {lam}")
    rho2 = geometry.radius() ** 2
    peak = np.exp((omega + geometry.d * lam) / (2.0 * lam))
    values = peak * np.exp(-0.5 * lam * rho2)
    boundary = np.exp(-0.5 * lam * (geometry.L / 2.0) ** 2)
    if boundary > 1e-10:
        raise ValueError(
            f"box too small: boundary amplitude {boundary:.2e} of peak exceeds 1e-10")
    return FieldState(geometry, values.astype(complex), 0.0)


def gausson_ansatz_residual(geometry: Geometry, lam: float, omega: float) -> float:
    """Max grid residual of ``-omega phi + Lap phi + lam phi log phi^2``.

    The Laplacian is evaluated spectrally and the log from the sampled
    values, i.e. with the same operators the solver uses.
    """
    phi = gausson_profile(geometry, lam, omega).values
    hat = np.fft.fftn(phi)
    lap = np.fft.ifftn(-(TWO_PI**2) * geometry.xi_sq * hat)
    log_term = 2.0 * np.log(np.abs(phi))
    residual = -omega * phi + lap + lam * phi * log_term
    return float(np.max(np.abs(residual)))


@dataclass
class GaussonResult:
    times: list[float]
    rel_errors: list[float]
    ansatz_residual: float
    final_error: float
    tol: float
    verdict: bool

    @property
    def slack(self) -> float:
        return self.tol - max(self.rel_errors)


def gausson_experiment(omega: float, lam: float, geometry: Geometry,
                       config: SolverConfig, tol: float = 1e-4) -> GaussonResult:
    """Evolve the Gausson and measure ``||u(t) - e^{i omega t} phi|| / ||phi||``."""
    phi = gausson_profile(geometry, lam, omega)
    spec = NonlinearitySpec(lam=lam)
    traj = evolve(phi, spec, config)
    norm_phi = float(np.sqrt(geometry.cell_volume * np.sum(np.abs(phi.values) ** 2)))
    times, errors = [], []
    for snap in traj.snapshots:
        target = np.exp(1j * omega * snap.time) * phi.values
        err = float(np.sqrt(geometry.cell_volume * np.sum(np.abs(snap.values - target) ** 2)))
        times.append(snap.time)
        errors.append(err / norm_phi)
    worst = max(errors)
    return GaussonResult(times=times, rel_errors=errors,
                         ansatz_residual=gausson_ansatz_residual(geometry, lam, omega),
                         final_error=errors[-1], tol=tol, verdict=worst <= tol)


# ---------------------------------------------------------------------------
# regularization limits


@dataclass
class LimitResult:
    epsilons: list[float]
    cross_distances: list[float]
    cauchy_shifted: list[float]
    cauchy_floored: list[float]
    verdict: bool

    @property
    def slack(self) -> float:
        ratios = [b / a for a, b in zip(self.cross_distances, self.cross_distances[1:])]
        return 1.0 - max(ratios) if ratios else 0.0


def regularization_limit_experiment(u0: FieldState, base: NonlinearitySpec,
                                    epsilons, config: SolverConfig) -> LimitResult:
    """Compare shifted-log and floored-log evolutions as epsilon decreases.

    Reports the cross-family distance at the final time and the within-family
    Cauchy increments; the verdict requires both to decrease monotonically.
    """
    epsilons = [float(e) for e in epsilons]
    if len(epsilons) < 3:
        raise ValueError("need at least 3 epsilon values")
    if any(b >= a for a, b in zip(epsilons, epsilons[1:])):
        raise ValueError("epsilon sequence must be strictly decreasing")

    def final(family: str, eps: float) -> FieldState:
        spec = NonlinearitySpec(lam=base.lam, mu=base.mu, alpha=base.alpha,
                                reg_family=family, epsilon=eps)
        return evolve(u0, spec, config).snapshots[-1]

    tasks = [("shifted_log", e) for e in epsilons] + [("floor_log", e) for e in epsilons]
    finals = _parallel_map(lambda fe: final(*fe), tasks)
    shifted = finals[:len(epsilons)]
    floored = finals[len(epsilons):]
    cross = [l2_distance(a, b) for a, b in zip(shifted, floored)]
    cauchy_s = [l2_distance(a, b) for a, b in zip(shifted, shifted[1:])]
    cauchy_f = [l2_distance(a, b) for a, b in zip(floored, floored[1:])]
    # "decreasing" up to convergence: once a family has effectively reached
    # its limit (e.g. the floored log is exact for eps below min |u|), its
    # increments sit at roundoff and count as converged
    floor_tol = 1e-12 * float(np.sqrt(u0.geometry.cell_volume
                                      * np.sum(np.abs(u0.values) ** 2)))

    def decreasing(seq) -> bool:
        return all(b < a or b < floor_tol for a, b in zip(seq, seq[1:]))

    verdict = decreasing(cross) and decreasing(cauchy_s) and decreasing(cauchy_f)
    return LimitResult(epsilons=epsilons, cross_distances=cross,
                       cauchy_shifted=cauchy_s, cauchy_floored=cauchy_f, verdict=verdict)


# ---------------------------------------------------------------------------
# dispersive scans


def _zygmund_coefficients(n_grid: int, L: float, seed: int, slope: float) -> np.ndarray:
    """Random spectral data drawn in mode order 0, +1, -1, +2, -2, ...

    The ordered draws make the same sample index share its low modes across
    resolutions, so per-N max ratios are directly comparable.
    """
    rng = np.random.default_rng(seed)
    order = [0]
    for k in range(1, n_grid // 2):
        order.extend([k, -k])
    order.append(-n_grid // 2)
    draws = rng.standard_normal((n_grid, 2))
    coeffs = np.zeros(n_grid, dtype=complex)
    for slot, k in enumerate(order):
        xi = k / L
        amp = (1.0 + (TWO_PI * xi) ** 2) ** (-slope / 2.0)
        coeffs[k] = amp * (draws[slot, 0] + 1j * draws[slot, 1])
    return coeffs


def spacetime_l4_ratio(coeffs: np.ndarray, geometry: Geometry, t_final: float,
                       time_samples: int) -> float:
    """``||U(t) u0||_{L^4([0,T] x torus)} / ||u0||_{L^2}`` for spectral data.

    Free evolution is exact per mode; time integration is trapezoid on
    ``time_samples + 1`` nodes.
    """
    l2 = float(np.sqrt(geometry.volume * np.sum(np.abs(coeffs) ** 2)))
    if l2 == 0:
        raise ValueError("degenerate sample: zero initial data")
    omega = TWO_PI**2 * geometry.xi_sq
    taus = np.linspace(0.0, t_final, time_samples + 1)
    space_l4 = np.empty(taus.size)
    for i, tau in enumerate(taus):
        u = np.fft.ifftn(coeffs * np.exp(-1j * omega * tau)) * geometry.size
        space_l4[i] = geometry.cell_volume * float(np.sum(np.abs(u) ** 4))
    return float(np.trapezoid(space_l4, taus)) ** 0.25 / l2


def zygmund_scan(n_list, t_final: float, samples_per_n: int, seed: int,
                 L: float = TWO_PI, time_samples: int = 256, slope: float = 0.6,
                 growth_tol: float = 0.10, false_scaling: bool = False) -> ScanResult:
    """Space-time L^4 over L^2 ratio of the free group on the 1-D torus.

    For each N the max ratio over seeded samples is recorded; the verdict
    requires the max to grow by less than ``growth_tol`` per N-doubling.
    ``false_scaling`` multiplies ratios by N^{1/4} (negative control).
    """
    if time_samples < 256:
        raise ValueError("time quadrature needs at least 256 samples")
    n_list = [int(n) for n in n_list]

    def max_ratio(n_grid: int) -> float:
        geometry = Geometry(1, L, n_grid)

        def one(j: int) -> float:
            coeffs = _zygmund_coefficients(n_grid, L, seed + j, slope)
            return spacetime_l4_ratio(coeffs, geometry, t_final, time_samples)

        return max(_parallel_map(one, range(samples_per_n)))

    measured = [max_ratio(n) for n in n_list]
    if false_scaling:
        measured = [m * n**0.25 / n_list[0] ** 0.25 for m, n in zip(measured, n_list)]
    growth = [b / a - 1.0 for a, b in zip(measured, measured[1:])]
    verdict = all(gf < growth_tol for gf in growth)
    slope_fit, residual = (fit_loglog_slope(n_list, measured)
                           if len(n_list) >= 3 else (None, None))
    return ScanResult(parameter="N", values=[float(n) for n in n_list], measured=measured,
                      slope=slope_fit, residual=residual, verdict=verdict,
                      slack=growth_tol - max(growth),
                      extras={"growth_per_doubling": growth,
                              "false_scaling": false_scaling})


def free_wave_source(geometry: Geometry, seed: int, k_max: int):
    """Time-dependent source ``f(t) = U(t) w0`` with w0 band-limited to |k| <= k_max.

    Every retained mode travels at its own group velocity, which exercises
    the transit saturation of the smoothing estimate at all tested radii.
    """
    rng = np.random.default_rng(seed)
    zeta = rng.standard_normal(geometry.shape) + 1j * rng.standard_normal(geometry.shape)
    band = geometry.xi_sq <= (k_max / geometry.L) ** 2
    coeffs = np.where(band, zeta, 0.0)
    omega = TWO_PI**2 * geometry.xi_sq

    def source(t: float) -> np.ndarray:
        return np.fft.ifftn(coeffs * np.exp(-1j * omega * t))

    return source


def local_smoothing_scan(s: float, r_list, geometry: Geometry, source,
                         t_final: float, time_steps: int = 1024,
                         center: tuple[float, ...] | None = None,
                         false_normalization: bool = False,
                         ratio_tol: float = 2.0) -> ScanResult:
    """Ratio ``||D^s Phi[chi_R f]||_{L2([0,T] x B_R)} / (R^s ||chi_R f||)``.

    The verdict requires max/min of the ratio over the R list below
    ``ratio_tol``. ``false_normalization`` divides by R^{s+1/2} instead
    (negative control; the spread then exceeds the tolerance).
    """
    if not 0 < s <= 1:
        raise ValueError(f"s must lie in (0, 1], got {s}")
    r_list = [float(r) for r in r_list]
    for r in r_list:
        if r > geometry.L / 4:
            raise ValueError(f"R = {r} exceeds box/4 = {geometry.L / 4} (truncation pollution)")
    dt = t_final / time_steps
    step_symbol = propagator_phase(geometry, dt)
    d_s = fractional_symbol(geometry, s)
    chis = [ball_indicator(geometry, r, center) for r in r_list]
    f0 = source(0.0)
    acc = [np.zeros(geometry.shape, dtype=complex) for _ in r_list]
    prev = [np.fft.fftn(chi * f0) for chi in chis]
    num_sq = np.zeros((len(r_list), time_steps + 1))
    den_sq = np.zeros((len(r_list), time_steps + 1))
    for j, chi in enumerate(chis):
        den_sq[j, 0] = geometry.cell_volume * float(np.sum(chi * np.abs(f0) ** 2))
    for i in range(1, time_steps + 1):
        f_i = source(i * dt)
        for j, chi in enumerate(chis):
            cur = np.fft.fftn(chi * f_i)
            acc[j] = step_symbol * (acc[j] + 0.5 * dt * prev[j]) + 0.5 * dt * cur
            prev[j] = cur
            smooth = np.fft.ifftn(d_s * acc[j])
            num_sq[j, i] = geometry.cell_volume * float(np.sum(chi * np.abs(smooth) ** 2))
            den_sq[j, i] = geometry.cell_volume * float(np.sum(chi * np.abs(f_i) ** 2))
    taus = np.linspace(0.0, t_final, time_steps + 1)
    measured = []
    exponent = s + 0.5 if false_normalization else s
    for j, r in enumerate(r_list):
        num = float(np.sqrt(np.trapezoid(num_sq[j], taus)))
        den = float(np.sqrt(np.trapezoid(den_sq[j], taus)))
        if den == 0:
            raise ValueError("degenerate source: no mass inside the ball")
        measured.append(num / (r**exponent * den))
    spread = max(measured) / min(measured)
    slope_fit, residual = (fit_loglog_slope(r_list, measured)
                           if len(r_list) >= 3 else (None, None))
    return ScanResult(parameter="R", values=r_list, measured=measured,
                      slope=slope_fit, residual=residual,
                      verdict=spread < ratio_tol, slack=ratio_tol - spread,
                      extras={"spread": spread, "normalization_exponent": exponent})


# ---------------------------------------------------------------------------
# localization error


def localization_error_experiment(trajectory: Trajectory, s: float, r_list,
                                  center: tuple[float, ...] | None = None,
                                  slope_slack: float = 0.2) -> ScanResult:
    """Decay of the cutoff-commutator Duhamel term with the cutoff radius.

    For each R the source ``-i (2 grad(phi_R) . grad(u) + Lap(phi_R) u)`` is
    integrated against the free group over the stored trajectory and its
    space-time norm on the ball is measured. The verdict accepts a fitted
    log-log slope at most ``-s + slope_slack``; the scheduled weight
    ``|B_R|^{1/(2 log R)}`` is tabulated alongside.
    """
    if not 0 < s < 1:
        raise ValueError(f"s must lie in (0, 1), got {s}")
    snaps = trajectory.snapshots
    if len(snaps) < 3:
        raise ValueError("trajectory must be stored at quadrature cadence")
    geometry = snaps[0].geometry
    r_list = [float(r) for r in r_list]
    for r in r_list:
        if r > geometry.L / 4:
            raise ValueError(f"R = {r} exceeds box/4 = {geometry.L / 4} (truncation pollution)")
    times = np.array([snap.time for snap in snaps])
    dt = float(times[1] - times[0])
    if not np.allclose(np.diff(times), dt, rtol=1e-9, atol=0.0):
        raise ValueError("trajectory snapshots must be equispaced")

    # spectral gradients of every snapshot, shared across radii
    grad_syms = []
    for axis, xi in enumerate(geometry.xi):
        sym = (TWO_PI * 1j) * xi
        index = [slice(None)] * geometry.d
        index[axis] = geometry.N // 2
        sym[tuple(index)] = 0.0
        grad_syms.append(sym)
    hats = [np.fft.fftn(snap.values) for snap in snaps]
    grads = [[np.fft.ifftn(sym * hat) for sym in grad_syms] for hat in hats]

    step_symbol = propagator_phase(geometry, dt)
    measured = []
    weights = []
    for r in r_list:
        _, grad_phi, lap_phi = cutoff_on_grid(geometry, r, center)
        chi = ball_indicator(geometry, r, center)

        def source_at(i: int) -> np.ndarray:
            total = lap_phi * snaps[i].values
            for gp, gu in zip(grad_phi, grads[i]):
                total = total + 2.0 * gp * gu
            return -1j * total

        acc = np.zeros(geometry.shape, dtype=complex)
        prev = np.fft.fftn(source_at(0))
        err_sq = np.zeros(len(snaps))
        for i in range(1, len(snaps)):
            cur = np.fft.fftn(source_at(i))
            acc = step_symbol * (acc + 0.5 * dt * prev) + 0.5 * dt * cur
            prev = cur
            e_r = np.fft.ifftn(acc)
            err_sq[i] = geometry.cell_volume * float(np.sum(chi * np.abs(e_r) ** 2))
        measured.append(float(np.sqrt(np.trapezoid(err_sq, times - times[0]))))
        ball_volume = 2.0 * r if geometry.d == 1 else np.pi * r**2
        weights.append(float(ball_volume ** (0.5 / np.log(r))))

    slope_fit, residual = fit_loglog_slope(r_list, measured)
    target = -s + slope_slack
    return ScanResult(parameter="R", values=r_list, measured=measured,
                      slope=slope_fit, residual=residual,
                      verdict=slope_fit <= target, slack=target - slope_fit,
                      extras={"scheduled_weights": weights,
                              "delta_schedule": [1.0 / np.log(r) for r in r_list],
                              "cutoff_profile": "quintic smoothstep (C^2)"})


# ---------------------------------------------------------------------------
# Gronwall


@dataclass
class GronwallVerdict:
    premise_holds: bool
    conclusion_holds: bool | None
    max_excess: float | None
    saturation_gap: float | None

    @property
    def verdict(self) -> bool:
        return bool(self.premise_holds and self.conclusion_holds)

    @property
    def slack(self) -> float | None:
        return None if self.max_excess is None else -self.max_excess


def power_gronwall_check(a: float, b: float, delta: float, times, f_samples,
                         premise_rtol: float = 1e-9) -> GronwallVerdict:
    """Check ``f <= a + (b/delta) int f^{1-delta}`` implies ``f <= (a^d + b t)^{1/d}``.

    The premise is verified by trapezoid quadrature first; if it fails, no
    conclusion verdict is issued. ``max_excess`` is the worst signed
    violation of the conclusion bound, ``saturation_gap`` the worst absolute
    gap (zero means the bound is saturated).
    """
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    t = np.asarray(times, dtype=float)
    f = np.asarray(f_samples, dtype=float)
    if t.shape != f.shape or t.ndim != 1 or t.size < 2:
        raise ValueError("times and f_samples must be matching 1-D arrays, length >= 2")
    if t[0] != 0 or np.any(np.diff(t) <= 0):
        raise ValueError("times must start at 0 and increase")
    if np.any(f < 0) or not np.all(np.isfinite(f)):
        raise ValueError("f must be nonnegative and finite")

    powered = f ** (1.0 - delta)
    integral = np.concatenate(([0.0], np.cumsum(0.5 * np.diff(t) * (powered[1:] + powered[:-1]))))
    premise_rhs = a + (b / delta) * integral
    premise = bool(np.all(f <= premise_rhs * (1.0 + premise_rtol) + 1e-300))
    if not premise:
        return GronwallVerdict(premise_holds=False, conclusion_holds=None,
                               max_excess=None, saturation_gap=None)
    bound = (a**delta + b * t) ** (1.0 / delta)
    excess = f - bound
    max_excess = float(np.max(excess))
    conclusion = bool(max_excess <= 1e-12 * max(1.0, float(np.max(bound))))
    return GronwallVerdict(premise_holds=True, conclusion_holds=conclusion,
                           max_excess=max_excess,
                           saturation_gap=float(np.max(np.abs(excess))))
