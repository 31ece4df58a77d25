"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s``. Budget on a 2-core box
is a few minutes; the flow-stability criterion dominates.
"""

import time

import numpy as np

from lognls.evolution import SolverConfig, evolve, integral_square_identity_gap
from lognls.experiments import (
    RandomFieldSpec,
    gausson_profile,
    _parallel_map,
    fit_loglog_slope,
    free_wave_source,
    gausson_ansatz_residual,
    gausson_experiment,
    local_smoothing_scan,
    localization_error_experiment,
    make_random_field,
    power_gronwall_check,
    regularization_limit_experiment,
    stability_experiment,
    zygmund_scan,
)
from lognls.grid import FieldState, make_geometry
from lognls.nonlinearity import NonlinearitySpec, sweep_ch, sweep_g1_constants
from lognls.operators import lp_norm


def report(number: int, name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} ({name}): {detail}",
          flush=True)
    assert ok, f"criterion {number} ({name}): {detail}"


def modulated_gausson(geometry, lam=1.0, modulation=0.05):
    rho2 = geometry.radius() ** 2
    phi = np.exp(geometry.d / 2.0) * np.exp(-0.5 * lam * rho2)
    mod = 1.0 + modulation * np.cos(2 * np.pi * 2 * (geometry.axis - geometry.L / 2)
                                    / geometry.L)
    return FieldState(geometry, (phi * mod).astype(complex))


class TestAcceptance:
    def test_02_cazenave_haraux_inequality(self):
        start = time.time()
        result = sweep_ch(1_000_000, seed=20)
        elapsed = time.time() - start
        ok = result.violations == 0 and result.max_ratio <= 1.0 + 1e-12 and elapsed < 10
        report(2, "CH inequality", ok,
               f"max ratio {result.max_ratio:.6f}, violations {result.violations}, "
               f"{elapsed:.1f}s over 1e6 pairs")

    def test_03_g1_constant_uniform_in_delta(self):
        start = time.time()
        deltas = (0.5, 0.1, 0.02, 0.005)
        reports = sweep_g1_constants(deltas, 1_000_000, seed=30)
        elapsed = time.time() - start
        c1 = {d: reports[d].max_ratio for d in deltas}
        spread = max(c1.values()) / min(c1.values())
        ok = spread < 2.0 and elapsed < 60
        report(3, "1/delta constant uniformity", ok,
               "c1(delta) = " + ", ".join(f"{d}: {c1[d]:.4f}" for d in deltas)
               + f"; max/min {spread:.3f}, {elapsed:.1f}s")

    def test_09_power_gronwall(self):
        worst_gap = 0.0
        sound = True
        for a in (0.1, 1.0, 10.0):
            for b in (0.1, 1.0):
                for delta in (0.5, 0.1):
                    times = np.linspace(0.0, 1.0, 513)
                    f = (a**delta + b * times) ** (1.0 / delta)
                    verdict = power_gronwall_check(a, b, delta, times, f)
                    sound = sound and verdict.premise_holds and verdict.conclusion_holds
                    worst_gap = max(worst_gap, verdict.saturation_gap)
                    # premise violator must yield no conclusion verdict
                    bad = power_gronwall_check(a, b, delta, times, 1.5 * f + 1.0)
                    sound = sound and not bad.premise_holds and bad.conclusion_holds is None
        ok = sound and worst_gap < 1e-8
        report(9, "power Gronwall", ok,
               f"equality-family worst gap {worst_gap:.2e}; premise soundness held")

    def test_10_time_integral_identity(self):
        g = make_geometry(1, 8.0, 64)
        rng = np.random.default_rng(100)
        a = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        b = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        times = np.linspace(0.0, 1.0, 2049)
        fields = [FieldState(g, 2 * a + a * np.cos(2 * np.pi * t) + b * np.sin(np.pi * t),
                             time=t) for t in times]
        gap = integral_square_identity_gap(fields)
        ok = gap < 1e-6
        report(10, "square-expansion identity", ok,
               f"relative gap {gap:.2e} over 2048 steps")

    def test_04_charge_and_energy_drift(self):
        geometry = make_geometry(1, 40.0, 256)
        u0 = modulated_gausson(geometry)
        spec = NonlinearitySpec(lam=1.0)
        drifts = []
        charge_ok = True
        charge_worst = 0.0
        for dt in (4e-3, 2e-3, 1e-3, 5e-4):
            traj = evolve(u0, spec, SolverConfig(dt=dt, t_final=1.0, snapshot_every=10))
            energies = [o.energy for o in traj.observables]
            charges = [o.charge for o in traj.observables]
            drifts.append(max(abs(e - energies[0]) for e in energies))
            rate = max(abs(q - charges[0]) for q in charges) / (charges[0] * 1.0)
            charge_worst = max(charge_worst, rate)
            charge_ok = charge_ok and rate < 1e-12
        ratios = [d1 / d2 for d1, d2 in zip(drifts, drifts[1:])]
        energy_ok = all(3.2 < r < 4.8 for r in ratios)
        report(4, "charge/energy drift", charge_ok and energy_ok,
               f"charge drift rate {charge_worst:.2e} (< 1e-12); energy drift "
               f"ratios {['%.2f' % r for r in ratios]} in [3.2, 4.8]")

    def test_05_gausson_standing_wave(self):
        geometry = make_geometry(1, 40.0, 1024)
        residual = gausson_ansatz_residual(geometry, 1.0, 0.0)
        result = gausson_experiment(0.0, 1.0, geometry,
                                    SolverConfig(dt=5e-4, t_final=5.0, snapshot_every=500),
                                    tol=1e-4)
        deviation = max(result.rel_errors)
        # the standing-wave trajectory is itself an acceptance trajectory:
        # its charge drift per unit time must sit at roundoff
        traj = evolve(gausson_profile(geometry, 1.0, 0.0), NonlinearitySpec(lam=1.0),
                      SolverConfig(dt=5e-4, t_final=5.0, snapshot_every=1000))
        charges = [o.charge for o in traj.observables]
        drift_rate = max(abs(q - charges[0]) for q in charges) / (charges[0] * 5.0)
        ok = residual < 1e-10 and deviation < 1e-4 and drift_rate < 1e-12
        report(5, "Gausson", ok,
               f"ansatz residual {residual:.2e} (< 1e-10); dynamic deviation "
               f"{deviation:.2e} (< 1e-4); charge drift {drift_rate:.2e}")

    def test_06_zygmund_l4_bound(self):
        start = time.time()
        result = zygmund_scan([32, 64, 128, 256], 1.0, 50, seed=60)
        elapsed = time.time() - start
        growth = result.extras["growth_per_doubling"]
        ok = result.verdict and all(g < 0.10 for g in growth) and elapsed < 120
        report(6, "Zygmund L4 bound", ok,
               f"max ratios {['%.4f' % m for m in result.measured]}; growth per "
               f"doubling {['%+.2f%%' % (100 * g) for g in growth]}; {elapsed:.1f}s")

    def test_07_local_smoothing(self):
        geometry = make_geometry(1, 256.0, 4096)
        source = free_wave_source(geometry, seed=70, k_max=700)
        result = local_smoothing_scan(0.5, [4, 8, 16, 32], geometry, source, 1.0,
                                      time_steps=1024)
        control = local_smoothing_scan(0.5, [4, 8, 16, 32], geometry, source, 1.0,
                                       time_steps=1024, false_normalization=True)
        spread = result.extras["spread"]
        control_spread = control.extras["spread"]
        ok = spread < 2.0 and control_spread > 2.0
        report(7, "local smoothing", ok,
               f"Q(R) spread {spread:.3f} (< 2); false-normalization control "
               f"spread {control_spread:.3f} (> 2)")

    def test_08_localization_error_decay(self):
        geometry = make_geometry(1, 256.0, 4096)
        spec = NonlinearitySpec(lam=1.0)
        t_final = 0.0625
        r_list = [8.0, 16.0, 32.0, 64.0]

        def one(seed):
            u0 = make_random_field(RandomFieldSpec(0.5, 1.0, seed), geometry)
            traj = evolve(u0, spec, SolverConfig(dt=t_final / 512, t_final=t_final,
                                                 snapshot_every=1))
            return localization_error_experiment(traj, 0.5, r_list)

        results = _parallel_map(one, [80, 81, 82])
        mean_curve = np.exp(np.mean([np.log(r.measured) for r in results], axis=0))
        slope, _ = fit_loglog_slope(r_list, mean_curve)
        weights = results[0].extras["scheduled_weights"]
        weights_ok = all(w <= np.e for w in weights)
        ok = slope <= -0.3 and weights_ok
        report(8, "localization error decay", ok,
               f"fitted slope {slope:.3f} (<= -0.3); scheduled weights "
               f"{['%.3f' % w for w in weights]} all <= e")

    def test_11_uniqueness_by_limits(self):
        geometry = make_geometry(1, 2 * np.pi, 256)
        config = SolverConfig(dt=1e-3, t_final=1.0, snapshot_every=10**9)
        epsilons = [1e-2, 1e-3, 1e-4]

        u0_random = make_random_field(RandomFieldSpec(0.5, 1.0, 110), geometry)
        res_a = regularization_limit_experiment(u0_random, NonlinearitySpec(lam=1.0),
                                                epsilons, config)
        ratios_a = [d1 / d2 for d1, d2 in zip(res_a.cross_distances,
                                              res_a.cross_distances[1:])]

        x = geometry.coords[0]
        u0_floor = FieldState(geometry, 1.0 + 0.1 * np.exp(2j * np.pi * x / geometry.L))
        res_b = regularization_limit_experiment(
            u0_floor, NonlinearitySpec(lam=1.0, mu=-1.0, alpha=2.0), epsilons, config)
        ratios_b = [d1 / d2 for d1, d2 in zip(res_b.cross_distances,
                                              res_b.cross_distances[1:])]

        ok = (res_a.verdict and res_b.verdict
              and all(r >= 2.0 for r in ratios_a) and all(r >= 2.0 for r in ratios_b))
        report(11, "uniqueness by limits", ok,
               f"D(eps) decade ratios: random H^1/2 {['%.0fx' % r for r in ratios_a]}, "
               f"modulus-floor mu=-1 {['%.0fx' % r for r in ratios_b]} (>= 2x)")

    def test_01_lipschitz_flow_bound(self):
        start = time.time()
        geometry = make_geometry(1, 32.0, 512)
        config = SolverConfig(dt=1e-4, t_final=1.0, snapshot_every=100)
        rels = np.geomspace(1e-3, 1e-1, 20)
        worst = 0.0
        for lam_index, lam in enumerate((1.0, -1.0)):
            spec = NonlinearitySpec(lam=lam)

            def one(job):
                index, rel = job
                seed = 1000 * (lam_index + 1) + 2 * index
                u0 = make_random_field(RandomFieldSpec(1.0, 1.0, seed), geometry)
                pert = make_random_field(RandomFieldSpec(1.0, 1.0, seed + 1), geometry)
                scale = rel * lp_norm(u0, 2) / lp_norm(pert, 2)
                v0 = FieldState(geometry, u0.values + scale * pert.values)
                return stability_experiment(u0, v0, spec, config, tol=0.05)

            results = _parallel_map(one, list(enumerate(rels)))
            worst = max(worst, max(r.normalized_sup for r in results))
        elapsed = time.time() - start
        ok = worst <= 1.05 and elapsed < 300
        report(1, "Lipschitz flow bound", ok,
               f"sup_t ratio * exp(-2|lam|t) = {worst:.6f} (<= 1.05) over 20 pairs "
               f"per lam in {{+1, -1}}; {elapsed:.0f}s")
