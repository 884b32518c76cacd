import numpy as np
import pytest

from simplexdyn import (
    DelayConfig,
    DomainViolationError,
    Favorability,
    HistoryBuffer,
    SimplexState,
    Trajectory,
    beta_sweep,
    classify_regime,
    effective_c,
    find_fixed_point,
    simulate_delayed,
    step,
    step_delayed,
)
from simplexdyn.delay import GLOBAL_MAX, PER_COMPONENT, local_extrema

BENCH_C = np.array([0.9, 0.85, 0.95, 0.8])
BENCH_P0 = np.array([0.25, 0.26, 0.24, 0.25])


def bench_config(beta, mode=PER_COMPONENT, tau=30):
    return DelayConfig(c_base=Favorability(BENCH_C), beta=beta, tau=tau,
                       baseline_mode=mode)


def traj_from_first_coordinate(x):
    states = tuple(SimplexState(np.array([v, 1 - v])) for v in x)
    return Trajectory(states=states, times=tuple(range(len(x))),
                      steps_taken=len(x) - 1, converged=False, final_residual=1.0)


class TestDelayConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            bench_config(-0.1)
        with pytest.raises(ValueError):
            DelayConfig(Favorability(BENCH_C), beta=1.0, tau=-1)
        with pytest.raises(ValueError):
            DelayConfig(Favorability(BENCH_C), beta=1.0, tau=3, baseline_mode="median")

    def test_baseline_modes(self):
        np.testing.assert_array_equal(bench_config(1.0).baseline(), BENCH_C)
        np.testing.assert_array_equal(
            bench_config(1.0, mode=GLOBAL_MAX).baseline(), np.full(4, 0.95))


class TestHistoryBuffer:
    def test_warm_start_and_rotation(self):
        a = SimplexState(np.array([0.5, 0.5]))
        b = SimplexState(np.array([0.4, 0.6]))
        c = SimplexState(np.array([0.3, 0.7]))
        buf = HistoryBuffer(a, tau=2)
        assert len(buf) == 3
        assert buf.delayed is a and buf.current is a
        buf.push(b)
        buf.push(c)
        assert buf.delayed is a and buf.current is c
        buf.push(b)
        assert buf.delayed is b  # the original prehistory has rolled off

    def test_tau_zero_is_instantaneous(self):
        a = SimplexState(np.array([0.5, 0.5]))
        buf = HistoryBuffer(a, tau=0)
        b = SimplexState(np.array([0.4, 0.6]))
        buf.push(b)
        assert buf.delayed is b and buf.current is b


class TestEffectiveC:
    def test_feedback_off_returns_baseline(self):
        buf = HistoryBuffer(SimplexState(BENCH_P0), tau=5)
        np.testing.assert_array_equal(effective_c(buf, bench_config(0.0)), BENCH_C)

    def test_hand_value_per_component(self):
        buf = HistoryBuffer(SimplexState(np.full(4, 0.25)), tau=3)
        cfg = bench_config(1.2)
        np.testing.assert_allclose(effective_c(buf, cfg), [0.6, 0.55, 0.65, 0.5],
                                   atol=1e-15)

    def test_uses_delayed_share_not_current(self):
        old = SimplexState(np.array([0.7, 0.3]))
        cfg = DelayConfig(Favorability(np.array([0.9, 0.9])), beta=1.0, tau=1)
        buf = HistoryBuffer(old, tau=1)
        buf.push(SimplexState(np.array([0.2, 0.8])))
        np.testing.assert_allclose(effective_c(buf, cfg), [0.9 - 0.7, 0.9 - 0.3],
                                   atol=1e-15)

    def test_values_may_go_negative(self):
        buf = HistoryBuffer(SimplexState(np.array([0.9, 0.1])), tau=0)
        cfg = DelayConfig(Favorability(np.array([0.5, 0.5])), beta=2.0, tau=0)
        assert effective_c(buf, cfg)[0] < 0


class TestStepDelayed:
    def test_beta_zero_is_exactly_the_static_step(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n = int(rng.integers(2, 6))
            p = SimplexState(rng.dirichlet(np.ones(n)))
            c = Favorability(rng.uniform(0.05, 1.0, n))
            cfg = DelayConfig(c, beta=0.0, tau=int(rng.integers(0, 5)),
                              baseline_mode=PER_COMPONENT)
            np.testing.assert_array_equal(
                step_delayed(HistoryBuffer(p, cfg.tau), cfg).p, step(p, c).p)

    def test_vertex_stays_put(self):
        vertex = SimplexState(np.array([0.0, 1.0, 0.0, 0.0]))
        out = step_delayed(HistoryBuffer(vertex, 4), bench_config(1.2))
        np.testing.assert_array_equal(out.p, vertex.p)

    def test_simplex_conservation(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            p = SimplexState(rng.dirichlet(np.ones(4)))
            out = step_delayed(HistoryBuffer(p, 2), bench_config(rng.uniform(0, 3)))
            assert abs(out.p.sum() - 1.0) < 1e-12
            assert np.all(out.p >= 0)

    def test_domain_violation_names_component(self):
        # 3 + (0.9 - 50*0.5) * 0.5 is well below zero
        skew = SimplexState(np.array([0.5, 0.3, 0.1, 0.1]))
        cfg = bench_config(50.0)
        with pytest.raises(DomainViolationError, match="component 1"):
            step_delayed(HistoryBuffer(skew, 2), cfg)


class TestSimulateDelayed:
    def test_beta_zero_reduces_to_static_fixed_point(self):
        cfg = bench_config(0.0)
        traj = simulate_delayed(SimplexState(BENCH_P0), cfg, steps=5000, transient=4000)
        static = find_fixed_point(SimplexState(BENCH_P0), Favorability(BENCH_C))
        np.testing.assert_allclose(traj.final.p, static.p_inf.p, atol=1e-8)

    def test_deterministic_reruns_are_identical(self):
        cfg = bench_config(1.5)
        one = simulate_delayed(SimplexState(BENCH_P0), cfg, steps=3000, transient=1000)
        two = simulate_delayed(SimplexState(BENCH_P0), cfg, steps=3000, transient=1000)
        np.testing.assert_array_equal(one.as_array(), two.as_array())

    def test_records_post_transient_only(self):
        cfg = bench_config(1.5)
        traj = simulate_delayed(SimplexState(BENCH_P0), cfg, steps=500, transient=200)
        assert traj.times[0] == 200
        assert traj.times[-1] == 500
        assert len(traj.states) == 301

    def test_every_recorded_state_on_the_simplex(self):
        cfg = bench_config(3.0, mode=GLOBAL_MAX)
        traj = simulate_delayed(SimplexState(BENCH_P0), cfg, steps=3000, transient=0)
        arr = traj.as_array()
        assert np.all(arr >= 0)
        np.testing.assert_allclose(arr.sum(axis=1), 1.0, atol=1e-12)

    def test_domain_violation_reports_step_index(self):
        cfg = bench_config(60.0)
        with pytest.raises(DomainViolationError, match="at step"):
            simulate_delayed(SimplexState(BENCH_P0), cfg, steps=2000, transient=0)

    def test_validates_budget(self):
        with pytest.raises(ValueError):
            simulate_delayed(SimplexState(BENCH_P0), bench_config(1.0),
                             steps=100, transient=100)


class TestClassifyRegime:
    def test_constant_tail(self):
        report = classify_regime(traj_from_first_coordinate(np.full(3000, 0.37)))
        assert report.regime == "fixed_point"
        np.testing.assert_allclose(report.tail_extrema, [0.37])

    def test_exact_two_cycle(self):
        report = classify_regime(traj_from_first_coordinate(np.tile([0.4, 0.6], 1500)))
        assert report.regime == "periodic"
        assert report.period == 2

    def test_two_incommensurate_tones(self):
        t = np.arange(3000)
        x = 0.5 + 0.15 * np.sin(0.31 * t) + 0.1 * np.sin(0.31 * np.sqrt(2) * t)
        report = classify_regime(traj_from_first_coordinate(x))
        assert report.regime == "quasi_periodic"

    def test_broadband_signal_is_aperiodic(self):
        y = np.empty(3000)
        y[0] = 0.4
        for k in range(2999):
            y[k + 1] = 3.9 * y[k] * (1 - y[k])
        report = classify_regime(traj_from_first_coordinate(0.3 + 0.4 * y))
        assert report.regime == "aperiodic"

    def test_insufficient_tail_rejected(self):
        with pytest.raises(ValueError):
            classify_regime(traj_from_first_coordinate(np.full(100, 0.5)), window=2000)

    def test_benchmark_weak_feedback_reaches_fixed_point(self):
        traj = simulate_delayed(SimplexState(BENCH_P0), bench_config(1.2),
                                steps=20_000, transient=18_000)
        assert classify_regime(traj, window=2000).regime == "fixed_point"


class TestLocalExtrema:
    def test_alternating_peaks_and_troughs(self):
        x = np.array([0.0, 1.0, 0.0, -1.0, 0.0, 1.0, 0.0])
        np.testing.assert_array_equal(local_extrema(x), [1.0, -1.0, 1.0])

    def test_monotone_has_none(self):
        assert local_extrema(np.linspace(0, 1, 50)).size == 0


class TestBetaSweep:
    def test_ordered_and_deterministic(self):
        betas = [0.0, 0.5, 1.0]
        cfg = bench_config(0.0)
        p0 = SimplexState(BENCH_P0)
        one = beta_sweep(p0, cfg, betas, steps=4000, transient=3000)
        two = beta_sweep(p0, cfg, betas, steps=4000, transient=3000)
        assert [s.beta for s in one] == betas
        for a, b in zip(one, two):
            assert a.regime == b.regime
            np.testing.assert_array_equal(a.extrema, b.extrema)

    def test_weak_feedback_band_is_all_fixed_points(self):
        betas = np.linspace(0.0, 1.0, 6)
        samples = beta_sweep(SimplexState(BENCH_P0), bench_config(0.0, mode=GLOBAL_MAX),
                             betas, steps=15_000, transient=13_000)
        assert all(s.regime == "fixed_point" for s in samples)
        assert all(s.extrema.size == 1 for s in samples)

    def test_domain_violation_becomes_error_sample(self):
        samples = beta_sweep(SimplexState(BENCH_P0), bench_config(0.0),
                             [0.5, 60.0, 1.0], steps=4000, transient=3000)
        assert samples[0].regime == "fixed_point"
        assert samples[1].regime == "error"
        assert samples[1].error is not None
        assert samples[2].regime == "fixed_point"

    def test_parallel_matches_serial(self):
        betas = [0.4, 0.8, 1.2, 1.6]
        cfg = bench_config(0.0, mode=GLOBAL_MAX)
        p0 = SimplexState(BENCH_P0)
        serial = beta_sweep(p0, cfg, betas, steps=3000, transient=2000)
        parallel = beta_sweep(p0, cfg, betas, steps=3000, transient=2000, workers=2)
        for a, b in zip(serial, parallel):
            assert a.regime == b.regime
            np.testing.assert_array_equal(a.extrema, b.extrema)
