"""Energy conservation as an accuracy metric for approximate solutions.

Any :class:`~relosc.core.SolutionHandle` is pushed through the kinetic and
potential energy formulas; the flatness of their sum, together with period
and amplitude errors against the numerical oracle, form a
:class:`MethodReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from relosc.analytic import freq_ratio, trial_solution
from relosc.core import (
    Beta,
    BetaLike,
    InvalidRequest,
    RelOscError,
    SolutionHandle,
    Trajectory,
    make_beta,
)
from relosc.dynamics import kinetic_energy, mechanical_energy, potential_energy
from relosc.hbm import hbm_omega, hbm_solution
from relosc.oracle import IntegratorConfig, exact_amplitude, exact_period, measure_period, numeric_solution

METHODS = ("trial", "hbm", "numeric")
METHOD_ALIASES = {"ode": "numeric", "analytic": "trial"}
FREQ_MODES = ("native", "eq10", "eq22")

# evaluate_method sampling
ENERGY_SAMPLES = 4001
PERIOD_WINDOW = 3.5
PERIOD_DT = 0.005


@dataclass(frozen=True, eq=False)
class EnergySeries:
    t: np.ndarray
    x: np.ndarray
    kinetic: np.ndarray
    potential: np.ndarray
    total: np.ndarray
    label: str
    beta: Beta
    freq_ratio: float

    @property
    def mean_total(self) -> float:
        return float(np.mean(self.total))

    @property
    def peak_to_peak(self) -> float:
        return float(np.max(self.total) - np.min(self.total))

    @property
    def max_abs_deviation(self) -> float:
        """Largest ``|total - E|`` with ``E`` fixed by the initial conditions."""
        return float(np.max(np.abs(self.total - mechanical_energy(self.beta))))


@dataclass(frozen=True)
class MethodReport:
    beta: Beta
    method: str
    freq_ratio_used: float | None = None
    mean_total: float | None = None
    max_abs_deviation: float | None = None
    peak_to_peak: float | None = None
    period_estimate: float | None = None
    period_error_vs_oracle: float | None = None
    amplitude_estimate: float | None = None
    amplitude_error_vs_oracle: float | None = None
    initial_velocity_error: float | None = None
    error: str | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.error is None

    def as_dict(self) -> dict:
        return {
            "beta": self.beta.value,
            "method": self.method,
            "freq_ratio_used": self.freq_ratio_used,
            "mean_total": self.mean_total,
            "max_abs_deviation": self.max_abs_deviation,
            "peak_to_peak": self.peak_to_peak,
            "period_estimate": self.period_estimate,
            "period_error_vs_oracle": self.period_error_vs_oracle,
            "amplitude_estimate": self.amplitude_estimate,
            "amplitude_error_vs_oracle": self.amplitude_error_vs_oracle,
            "initial_velocity_error": self.initial_velocity_error,
            "error": self.error,
        }


def resolve_method(label: str) -> str:
    name = METHOD_ALIASES.get(label, label)
    if name not in METHODS:
        raise InvalidRequest(f"unknown method {label!r}; expected one of {', '.join(METHODS)}")
    return name


def make_handle(method: str, beta: BetaLike, numeric_config: IntegratorConfig | None = None):
    """Build the solution handle for a method label."""
    b = make_beta(beta)
    name = resolve_method(method)
    if name == "trial":
        return trial_solution(b)
    if name == "hbm":
        return hbm_solution(b)
    return numeric_solution(b, numeric_config)


def potential_frequency(handle: SolutionHandle, mode: str = "native") -> float:
    """Frequency ratio to insert in the potential energy for ``handle``.

    ``native`` uses the harmonic-balance frequency for harmonic-balance
    handles and the trial-solution law otherwise; ``eq10``/``eq22`` force
    the trial-solution or harmonic-balance law for every handle.
    """
    if mode not in FREQ_MODES:
        raise InvalidRequest(f"unknown frequency mode {mode!r}; expected one of {FREQ_MODES}")
    if mode == "eq22" or (mode == "native" and handle.label == "hbm"):
        return hbm_omega(handle.beta)
    return freq_ratio(handle.beta)


def energy_series(handle: SolutionHandle, window, n_samples: int = 2000,
                  freq_override: float | None = None) -> EnergySeries:
    """Sample kinetic, potential and total energy uniformly over ``window``.

    ``window`` is either the end time (start at 0) or a ``(t0, t1)`` pair.
    The potential uses the trial-solution frequency ratio unless
    ``freq_override`` is given.
    """
    if n_samples < 2:
        raise InvalidRequest("n_samples must be at least 2")
    t0, t1 = (0.0, window) if np.isscalar(window) else window
    if not t1 > t0:
        raise InvalidRequest(f"window must have positive length, got ({t0!r}, {t1!r})")
    w = freq_ratio(handle.beta) if freq_override is None else float(freq_override)
    t = np.linspace(t0, t1, n_samples)
    x, xdot, _ = handle.evaluate(t)
    kin = np.asarray(kinetic_energy(xdot))
    pot = np.asarray(potential_energy(handle.beta, x, w))
    return EnergySeries(t, x, kin, pot, kin + pot, handle.label, handle.beta, w)


def _measure_handle_period(handle: SolutionHandle) -> float:
    span = PERIOD_WINDOW * handle.period_hint
    n = max(4000, int(math.ceil(span / PERIOD_DT)) + 1)
    traj = handle.sample(span, n)
    return measure_period(traj)


def _measure_amplitude(handle: SolutionHandle, period: float) -> float:
    """Largest ``|x|`` over one period, with the turning point located by root finding."""
    t = np.linspace(0.0, period, 4001)
    x, v, _ = handle.evaluate(t)
    i = int(np.argmax(np.abs(x)))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, t.size - 1)]
    vel = lambda s: float(handle.velocity(s))  # noqa: E731
    if vel(lo) * vel(hi) < 0.0:
        ts = brentq(vel, lo, hi, xtol=1e-14)
        return float(abs(handle.position(ts)))
    return float(abs(x[i]))


def evaluate_method(handle: SolutionHandle, beta: BetaLike | None = None,
                    freq_mode: str = "native", n_samples: int = ENERGY_SAMPLES) -> MethodReport:
    """Energy, period and amplitude metrics for one handle.

    The energy window is two measured periods. The period reference is
    :func:`~relosc.oracle.exact_period` and the amplitude reference is the
    exact turning point ``sqrt(2 (gamma0 - 1))``.
    """
    b = handle.beta if beta is None else make_beta(beta)
    if b != handle.beta:
        raise InvalidRequest(f"handle was built for beta={handle.beta.value!r}, not {b.value!r}")
    if n_samples < 2000:
        raise InvalidRequest("at least 2000 energy samples are required")
    w = potential_frequency(handle, freq_mode)
    period = _measure_handle_period(handle)
    series = energy_series(handle, 2.0 * period, n_samples, freq_override=w)
    ref_period = exact_period(b)
    ref_amp = exact_amplitude(b)
    amp = _measure_amplitude(handle, period)
    v0 = float(handle.velocity(0.0))
    return MethodReport(
        beta=b,
        method=handle.label,
        freq_ratio_used=w,
        mean_total=series.mean_total,
        max_abs_deviation=series.max_abs_deviation,
        peak_to_peak=series.peak_to_peak,
        period_estimate=period,
        period_error_vs_oracle=abs(period - ref_period) / ref_period,
        amplitude_estimate=amp,
        amplitude_error_vs_oracle=abs(amp - ref_amp) / ref_amp,
        initial_velocity_error=v0 - b.value,
    )


def sweep(betas, methods, freq_mode: str = "native",
          numeric_config: IntegratorConfig | None = None) -> list[MethodReport]:
    """Evaluate every (beta, method) pair, beta-major.

    A numerical failure in one cell is stored in that report's ``error``
    field; the remaining cells still run.
    """
    betas = list(betas)
    methods = list(methods)
    if not betas:
        raise InvalidRequest("betas must not be empty")
    if not methods:
        raise InvalidRequest("methods must not be empty")
    betas = [make_beta(b) for b in betas]
    names = [resolve_method(m) for m in methods]
    if freq_mode not in FREQ_MODES:
        raise InvalidRequest(f"unknown frequency mode {freq_mode!r}")

    reports = []
    for b in betas:
        for name in names:
            try:
                handle = make_handle(name, b, numeric_config)
                reports.append(evaluate_method(handle, b, freq_mode))
            except RelOscError as exc:
                reports.append(MethodReport(beta=b, method=name, error=f"{type(exc).__name__}: {exc}"))
    return reports


def trajectory_energy(traj: Trajectory, freq_override: float | None = None) -> EnergySeries:
    """Energy series of stored samples, e.g. a trajectory read back from disk."""
    w = freq_ratio(traj.beta) if freq_override is None else float(freq_override)
    kin = np.asarray(kinetic_energy(traj.xdot))
    pot = np.asarray(potential_energy(traj.beta, traj.x, w))
    return EnergySeries(traj.t, traj.x, kin, pot, kin + pot, traj.label, traj.beta, w)
