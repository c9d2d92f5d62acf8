import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from relosc import (
    InsufficientSpan,
    IntegratorConfig,
    InvalidRequest,
    StepSizeUnderflow,
    Superluminal,
    Trajectory,
    exact_amplitude,
    exact_period,
    first_integral,
    freq_ratio,
    integrate,
    invariant_drift,
    measure_amplitude,
    measure_period,
    numeric_solution,
    oracle_report,
    solve,
    trial_solution,
)


def test_config_validation():
    with pytest.raises(InvalidRequest):
        IntegratorConfig(t_end=0.0)
    with pytest.raises(InvalidRequest):
        IntegratorConfig(t_end=1.0, rel_tol=-1e-9)
    with pytest.raises(InvalidRequest):
        IntegratorConfig(t_end=1.0, max_step=float("inf"))


def test_trajectory_shape(numeric_08):
    traj, period = numeric_08
    assert traj.t[0] == 0.0
    assert traj.t[-1] == pytest.approx(10 * period, abs=0)
    assert np.all(np.diff(traj.t) > 0)
    assert np.all(np.diff(traj.t) <= 0.1 + 1e-15)
    assert (traj.x[0], traj.xdot[0]) == (0.0, 0.8)
    assert traj.label == "numeric"


def test_first_integral_drift_08(numeric_08):
    traj, _ = numeric_08
    assert invariant_drift(traj) <= 1e-10
    assert np.all(np.abs(traj.xdot) < 1)


def test_classical_round_trip():
    traj = integrate(0.01, IntegratorConfig(t_end=2 * math.pi))
    assert traj.xdot[-1] == pytest.approx(0.01, abs=1e-6)
    # the true period exceeds 2 pi by ~ 2 pi * 3 beta**2 / 16, so x(2 pi) lags slightly
    lag = exact_period(0.01) - 2 * math.pi
    assert traj.x[-1] == pytest.approx(-0.01 * lag, rel=1e-3)
    assert abs(traj.x[-1]) < 1.5e-6


def test_amplitude_from_first_integral(numeric_08):
    traj, _ = numeric_08
    assert exact_amplitude(0.8) == pytest.approx(math.sqrt(4 / 3), rel=1e-15)
    assert measure_amplitude(traj) == pytest.approx(math.sqrt(4 / 3), abs=1e-6)
    assert np.max(np.abs(traj.x)) <= math.sqrt(4 / 3) + 1e-10


def test_matches_independent_scipy_solver():
    def rhs(t, y):
        return [y[1], -((1 - y[1] ** 2) ** 1.5) * y[0]]

    t_end = 30.0
    ref = solve_ivp(rhs, (0, t_end), [0.0, 0.7], method="DOP853", rtol=1e-13, atol=1e-13)
    ours = integrate(0.7, IntegratorConfig(t_end=t_end))
    np.testing.assert_allclose([ours.x[-1], ours.xdot[-1]], ref.y[:, -1], atol=1e-9)


def test_time_reversal():
    cfg = IntegratorConfig(t_end=25.0)
    t, x, v, _ = solve(0.0, 0.8, cfg)
    _, xb, vb, _ = solve(x[-1], -v[-1], cfg)
    assert xb[-1] == pytest.approx(0.0, abs=1e-8)
    assert vb[-1] == pytest.approx(-0.8, abs=1e-8)


def test_superluminal_start_rejected():
    with pytest.raises(Superluminal):
        solve(0.0, 1.0, IntegratorConfig(t_end=1.0))


def test_step_size_underflow():
    with pytest.raises(StepSizeUnderflow):
        solve(0.0, 0.9, IntegratorConfig(t_end=10.0, rel_tol=1e-300, abs_tol=1e-300))


def test_first_integral_definition():
    assert first_integral(0.0, 0.8) == pytest.approx(2 / 3, abs=1e-15)
    assert first_integral(math.sqrt(4 / 3), 0.0) == pytest.approx(2 / 3, abs=1e-15)


def test_exact_period_classical_limit():
    assert exact_period(1e-4) == pytest.approx(2 * math.pi, abs=1e-6)


def test_exact_period_series():
    # small-beta expansion T = 2 pi (1 + 3 beta**2 / 16 + ...) from the quadrature form
    b = 1e-2
    assert exact_period(b) == pytest.approx(2 * math.pi * (1 + 3 * b * b / 16), rel=1e-7)


def test_exact_period_monotone():
    betas = np.round(np.arange(0.05, 1.0, 0.05), 12)
    periods = [exact_period(b) for b in betas]
    assert np.all(np.diff(periods) > 0)


@pytest.mark.parametrize("b", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_oracles_agree(b):
    T = exact_period(b)
    traj = integrate(b, IntegratorConfig(t_end=3.5 * T))
    assert abs(measure_period(traj) - T) / T <= 1e-8


def test_measure_period_on_trial_solution():
    s = trial_solution(0.5)
    traj = s.sample(5 * s.period_hint, 20001)
    assert measure_period(traj) == pytest.approx(2 * math.pi / freq_ratio(0.5), abs=1e-8)


def test_measure_period_insufficient_span():
    with pytest.raises(InsufficientSpan):
        measure_period(Trajectory(np.linspace(0, 10, 50), np.zeros(50), np.zeros(50), "zero", 0.5))
    s = trial_solution(0.5)
    with pytest.raises(InsufficientSpan):
        measure_period(s.sample(1.5 * s.period_hint, 500))


def test_numeric_handle():
    h = numeric_solution(0.8)
    x, v, a = h(0.0)
    assert abs(x) <= h.ic_tol and abs(v - 0.8) <= h.ic_tol
    assert h.period_hint == pytest.approx(exact_period(0.8), rel=1e-8)
    t = np.linspace(0, h.t_end, 777)
    x, v, a = h(t)
    assert np.max(np.abs(first_integral(x, v) - 2 / 3)) <= 1e-10
    np.testing.assert_allclose(a, -((1 - v * v) ** 1.5) * x)
    np.testing.assert_array_equal(h.position(t), h.position(t))
    with pytest.raises(InvalidRequest):
        h(h.t_end + 1.0)


def test_oracle_report():
    rep = oracle_report(0.6)
    assert rep.exact_period > 2 * math.pi
    assert rep.exact_amplitude == pytest.approx(math.sqrt(0.5))
    assert rep.invariant_drift <= 1e-10
