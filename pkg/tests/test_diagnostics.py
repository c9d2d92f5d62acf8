import math

import numpy as np
import pytest

from relosc import (
    InvalidRequest,
    MethodReport,
    energy_series,
    evaluate_method,
    exact_amplitude,
    exact_period,
    hbm_omega,
    hbm_solution,
    integrate,
    IntegratorConfig,
    mechanical_energy,
    numeric_solution,
    sweep,
    trial_solution,
)
from relosc.diagnostics import make_handle, potential_frequency, trajectory_energy


def test_trial_series_flat():
    s = trial_solution(0.8)
    es = energy_series(s, 2 * s.period_hint, 2000)
    assert es.t.size == 2000
    np.testing.assert_array_equal(es.total, es.kinetic + es.potential)
    assert np.all(es.kinetic >= 0)
    assert np.max(np.abs(es.total - 2 / 3)) <= 1e-12
    assert es.freq_ratio == trial_solution(0.8).freq_ratio


def test_hbm_series_deviation():
    for mode in ("native", "eq10"):
        h = hbm_solution(0.8)
        es = energy_series(h, 2 * h.period_hint, 2000, freq_override=potential_frequency(h, mode))
        assert es.peak_to_peak > 1e-3
        h = hbm_solution(0.05)
        es = energy_series(h, 2 * h.period_hint, 2000, freq_override=potential_frequency(h, mode))
        assert es.peak_to_peak <= 1e-3


def test_window_forms_and_validation():
    s = trial_solution(0.3)
    a = energy_series(s, (1.0, 5.0), 11)
    assert a.t[0] == 1.0 and a.t[-1] == 5.0
    with pytest.raises(InvalidRequest):
        energy_series(s, 5.0, 1)
    with pytest.raises(InvalidRequest):
        energy_series(s, (3.0, 1.0), 10)


def test_potential_frequency_modes():
    h, t = hbm_solution(0.8), trial_solution(0.8)
    assert potential_frequency(h) == hbm_omega(0.8)
    assert potential_frequency(t) == t.freq_ratio
    assert potential_frequency(h, "eq10") == t.freq_ratio
    assert potential_frequency(t, "eq22") == hbm_omega(0.8)
    with pytest.raises(InvalidRequest):
        potential_frequency(t, "bogus")


def test_evaluate_trial():
    rep = evaluate_method(trial_solution(0.8), 0.8)
    assert rep.ok
    assert rep.max_abs_deviation <= 1e-12
    assert rep.period_estimate == pytest.approx(2 * math.pi * 0.36**-0.75, abs=1e-3)
    assert rep.period_estimate == pytest.approx(13.5193, abs=1e-3)
    assert rep.amplitude_estimate == pytest.approx(trial_solution(0.8).amplitude, rel=1e-10)
    assert rep.amplitude_error_vs_oracle == pytest.approx(
        abs(trial_solution(0.8).amplitude - exact_amplitude(0.8)) / exact_amplitude(0.8), rel=1e-8)
    assert rep.initial_velocity_error == 0.0
    assert rep.max_abs_deviation >= rep.peak_to_peak / 2 - 1e-15


def test_evaluate_hbm():
    rep = evaluate_method(hbm_solution(0.8), 0.8)
    assert rep.period_estimate == pytest.approx(7.3659, abs=1e-3)
    assert rep.initial_velocity_error == pytest.approx(hbm_solution(0.8).initial_velocity_error)
    assert rep.freq_ratio_used == hbm_omega(0.8)
    assert rep.max_abs_deviation >= rep.peak_to_peak / 2 - 1e-15


def test_evaluate_numeric():
    rep = evaluate_method(numeric_solution(0.8), 0.8)
    assert rep.period_error_vs_oracle <= 1e-8
    assert rep.amplitude_error_vs_oracle <= 1e-9


def test_evaluate_rejects_mismatch_and_low_density():
    with pytest.raises(InvalidRequest):
        evaluate_method(trial_solution(0.8), 0.7)
    with pytest.raises(InvalidRequest):
        evaluate_method(trial_solution(0.8), n_samples=1000)


@pytest.mark.parametrize("method", ["hbm", "numeric"])
def test_sampling_density_independence(method):
    h = make_handle(method, 0.8)
    a = evaluate_method(h, n_samples=2000)
    b = evaluate_method(h, n_samples=4000)
    for f in ("mean_total", "max_abs_deviation", "peak_to_peak", "period_estimate", "amplitude_estimate"):
        va, vb = getattr(a, f), getattr(b, f)
        assert abs(va - vb) <= 0.01 * abs(vb), f


@pytest.mark.parametrize("b", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_trial_flatness_and_mean_law(b):
    rep = evaluate_method(trial_solution(b))
    assert rep.max_abs_deviation <= 1e-12
    assert abs(rep.mean_total - ((1 - b * b) ** -0.5 - 1)) <= 1e-12


def test_hbm_degradation_monotone():
    ptp = [evaluate_method(hbm_solution(b)).peak_to_peak for b in (0.1, 0.4, 0.8)]
    assert ptp[0] < ptp[1] < ptp[2]


def test_sweep_ordering_and_monotone_energy():
    betas = [round(0.1 * i, 12) for i in range(1, 10)]
    reps = sweep(betas, ["trial"])
    assert len(reps) == 9
    assert [r.beta.value for r in reps] == betas
    assert np.all(np.diff([r.mean_total for r in reps]) > 0)


def test_sweep_three_methods():
    reps = sweep([0.8], ["trial", "hbm", "ode"])
    assert [r.method for r in reps] == ["trial", "hbm", "numeric"]
    devs = [r.max_abs_deviation for r in reps]
    assert devs[0] == min(devs)


def test_sweep_validation():
    with pytest.raises(InvalidRequest):
        sweep([0.5], [])
    with pytest.raises(InvalidRequest):
        sweep([], ["trial"])
    with pytest.raises(InvalidRequest):
        sweep([0.5], ["magic"])


def test_sweep_records_cell_failure():
    bad = IntegratorConfig(t_end=5.0)  # too short for two zero crossings
    reps = sweep([0.5], ["trial", "numeric"], numeric_config=bad)
    assert reps[0].ok
    assert not reps[1].ok
    assert "InsufficientSpan" in reps[1].error
    assert reps[1].mean_total is None


def test_sweep_deterministic():
    a = sweep([0.3, 0.8], ["trial", "hbm", "numeric"])
    b = sweep([0.3, 0.8], ["trial", "hbm", "numeric"])
    assert [r.as_dict() for r in a] == [r.as_dict() for r in b]


def test_trajectory_energy_of_oracle(numeric_08):
    traj, _ = numeric_08
    es = trajectory_energy(traj)
    # the exact motion does not conserve the trial-solution potential's total
    assert es.peak_to_peak > 0.1
    np.testing.assert_array_equal(es.total, es.kinetic + es.potential)
