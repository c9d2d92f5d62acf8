"""Numerical ground truth for ``xddot + (1 - xdot**2)**1.5 x = 0``.

Nothing here uses the analytic approximations. The equation has the exact
first integral ``gamma - 1 + x**2/2`` (``d gamma/dt = gamma**3 xdot xddot =
-x xdot``), which fixes the turning point ``x_max = sqrt(2 (gamma0 - 1))``
and reduces the period to a bounded quadrature after ``x = x_max sin(theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate as _quad
from scipy.interpolate import BPoly, CubicHermiteSpline
from scipy.optimize import brentq

from relosc.core import (
    Beta,
    BetaLike,
    InsufficientSpan,
    InvalidRequest,
    QuadratureFailure,
    SolutionHandle,
    StepSizeUnderflow,
    Superluminal,
    Trajectory,
    make_beta,
)
from relosc.dynamics import kinetic_energy, mechanical_energy

# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B = _A[6]
_E = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# PI step control (Hairer & Wanner, DOPRI5 defaults)
_SAFETY = 0.9
_PI_BETA = 0.04
_EXPO = 0.2 - 0.75 * _PI_BETA
_FAC_MIN = 0.2
_FAC_MAX = 10.0


@dataclass(frozen=True)
class IntegratorConfig:
    t_end: float
    rel_tol: float = 1e-12
    abs_tol: float = 1e-12
    max_step: float = 0.1

    def __post_init__(self):
        for name in ("t_end", "rel_tol", "abs_tol", "max_step"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                raise InvalidRequest(f"{name} must be a positive finite number, got {v!r}")


def _rhs(x: float, v: float) -> tuple[float, float]:
    w = (1.0 - v) * (1.0 + v)
    if w <= 0.0:
        return v, math.nan
    return v, -w * math.sqrt(w) * x


def solve(x0: float, v0: float, config: IntegratorConfig):
    """Integrate from ``(x0, v0)`` at ``t = 0`` to ``config.t_end``.

    Returns arrays ``(t, x, v, a)`` at the accepted steps, ``a`` being the
    acceleration. The last step is clipped to land on ``t_end`` exactly.
    """
    if not abs(v0) < 1.0:
        raise Superluminal(f"initial |xdot| = {abs(v0)!r} >= 1")
    t_end, rtol, atol, hmax = config.t_end, config.rel_tol, config.abs_tol, config.max_step

    t, x, v = 0.0, float(x0), float(v0)
    kx, kv = _rhs(x, v)
    ts, xs, vs, accs = [t], [x], [v], [kv]

    # starting step from the size of the derivatives (Hairer's hinit, first guess)
    d0 = math.hypot(x / (atol + rtol * abs(x)), v / (atol + rtol * abs(v)))
    d1 = math.hypot(kx / (atol + rtol * abs(x)), kv / (atol + rtol * abs(v)))
    h = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h = min(h, hmax, t_end)
    err_old = 1e-4
    rejected = False

    while t < t_end:
        if h < 16 * np.finfo(float).eps * max(1.0, abs(t)):
            raise StepSizeUnderflow(f"step size {h:.3g} underflowed at t = {t!r}")
        last = t + h >= t_end
        if last:
            h = t_end - t

        kxs, kvs = [kx], [kv]
        for i in range(1, 7):
            row = _A[i]
            xi = x + h * sum(a * k for a, k in zip(row, kxs))
            vi = v + h * sum(a * k for a, k in zip(row, kvs))
            fx, fv = _rhs(xi, vi)
            kxs.append(fx)
            kvs.append(fv)
        x_new = x + h * sum(b * k for b, k in zip(_B, kxs))
        v_new = v + h * sum(b * k for b, k in zip(_B, kvs))
        ex = h * sum(e * k for e, k in zip(_E, kxs))
        ev = h * sum(e * k for e, k in zip(_E, kvs))

        sx = atol + rtol * max(abs(x), abs(x_new))
        sv = atol + rtol * max(abs(v), abs(v_new))
        err = math.hypot(ex / sx, ev / sv) / math.sqrt(2.0)
        if not math.isfinite(err):
            h *= _FAC_MIN
            rejected = True
            continue

        if err <= 1.0:
            if not abs(v_new) < 1.0:
                raise Superluminal(f"accepted step produced |xdot| = {abs(v_new)!r} at t = {t + h!r}")
            t = t_end if last else t + h
            x, v = x_new, v_new
            kx, kv = kxs[6], kvs[6]
            ts.append(t)
            xs.append(x)
            vs.append(v)
            accs.append(kv)
            # h_new = h / fac with fac clipped to [1/_FAC_MAX, 1/_FAC_MIN]
            fac = err**_EXPO / err_old**_PI_BETA / _SAFETY
            fac = max(1.0 / _FAC_MAX, min(1.0 / _FAC_MIN, fac))
            h_new = h / fac
            if rejected:
                h_new = min(h_new, h)
            h = min(h_new, hmax)
            err_old = max(err, 1e-4)
            rejected = False
        else:
            h /= min(1.0 / _FAC_MIN, err**_EXPO / _SAFETY)
            rejected = True

    return np.array(ts), np.array(xs), np.array(vs), np.array(accs)


def integrate(beta: BetaLike, config: IntegratorConfig) -> Trajectory:
    """Trajectory from the initial conditions ``x(0) = 0``, ``xdot(0) = beta``."""
    b = make_beta(beta)
    t, x, v, _ = solve(0.0, b.value, config)
    return Trajectory(t, x, v, "numeric", b)


def first_integral(x, xdot):
    """``gamma - 1 + x**2 / 2``, conserved exactly by the equation of motion."""
    x = np.asarray(x, dtype=float)
    return kinetic_energy(xdot) + 0.5 * x * x


def invariant_drift(traj: Trajectory) -> float:
    """Largest deviation of :func:`first_integral` from its initial-condition value."""
    e0 = mechanical_energy(traj.beta)
    return float(np.max(np.abs(first_integral(traj.x, traj.xdot) - e0)))


def exact_amplitude(beta: BetaLike) -> float:
    """Turning point of the exact motion, ``sqrt(2 (gamma0 - 1))``."""
    return math.sqrt(2.0 * mechanical_energy(beta))


def exact_period(beta: BetaLike) -> float:
    """Period from ``4 * integral_0^x_max dx / xdot``.

    With ``x = x_max sin(theta)`` one has ``gamma - 1 = (gamma0 - 1) cos(theta)**2``
    and the integrand collapses to ``sqrt(2) gamma / sqrt(gamma + 1)``, bounded
    on ``[0, pi/2]``.
    """
    e = mechanical_energy(beta)

    def integrand(theta):
        g = 1.0 + e * math.cos(theta) ** 2
        return math.sqrt(2.0) * g / math.sqrt(g + 1.0)

    out = _quad.quad(integrand, 0.0, 0.5 * math.pi, epsabs=1e-10, epsrel=1e-13,
                     limit=200, full_output=1)
    if len(out) > 3:
        raise QuadratureFailure(f"period quadrature did not converge: {out[3]}")
    return 4.0 * out[0]


def _upward_crossings(t, x, xdot) -> np.ndarray:
    spline = CubicHermiteSpline(t, x, xdot)
    idx = np.nonzero((x[:-1] < 0.0) & (x[1:] >= 0.0))[0]
    roots = []
    for i in idx:
        if x[i + 1] == 0.0:
            r = t[i + 1]
        else:
            r = brentq(spline, t[i], t[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
        if spline(r, 1) > 0.0:
            roots.append(r)
    return np.array(roots)


def measure_period(traj: Trajectory) -> float:
    """Mean spacing of upward zero crossings of ``x``.

    Each crossing is located on the cubic Hermite interpolant built from the
    ``(x, xdot)`` samples. Raises :class:`InsufficientSpan` with fewer than
    two crossings after ``t = 0``.
    """
    roots = _upward_crossings(traj.t, traj.x, traj.xdot)
    if roots.size < 2:
        raise InsufficientSpan(f"need two upward zero crossings, found {roots.size}")
    return float((roots[-1] - roots[0]) / (roots.size - 1))


def _acceleration(x, xdot):
    return -((1.0 - xdot) * (1.0 + xdot)) ** 1.5 * x


def _jerk(x, xdot, xddot):
    w = (1.0 - xdot) * (1.0 + xdot)
    return 3.0 * np.sqrt(w) * xdot * xddot * x - w**1.5 * xdot


def measure_amplitude(traj: Trajectory) -> float:
    """Largest ``|x|`` at the turning points of a trajectory.

    Turning points are the sign changes of ``xdot``, refined on its cubic
    Hermite interpolant (slopes from the equation of motion). Falls back to
    the largest sampled ``|x|`` when no turning point is spanned.
    """
    t, x, v = traj.t, traj.x, traj.xdot
    vel = CubicHermiteSpline(t, v, _acceleration(x, v))
    pos = CubicHermiteSpline(t, x, v)
    best = float(np.max(np.abs(x)))
    for i in np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]:
        r = brentq(vel, t[i], t[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
        best = max(best, abs(float(pos(r))))
    return best


class NumericSolution(SolutionHandle):
    """Dense output of an integrated trajectory as a solution handle.

    Position and velocity come from quintic Hermite interpolation on the
    accepted steps (values plus first and second derivatives, the latter from
    the equation of motion); the acceleration is the equation of motion at the
    interpolated state.
    """

    label = "numeric"

    def __init__(self, traj: Trajectory, config: IntegratorConfig):
        self.beta = traj.beta
        self.trajectory = traj
        self.config = config
        self.ic_tol = config.abs_tol
        acc = _acceleration(traj.x, traj.xdot)
        jerk = _jerk(traj.x, traj.xdot, acc)
        self._x = BPoly.from_derivatives(traj.t, np.column_stack([traj.x, traj.xdot, acc]),
                                         extrapolate=False)
        self._v = BPoly.from_derivatives(traj.t, np.column_stack([traj.xdot, acc, jerk]),
                                         extrapolate=False)

    @property
    def t_end(self) -> float:
        return float(self.trajectory.t[-1])

    @cached_property
    def period_hint(self) -> float:
        return measure_period(self.trajectory)

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0) or np.any(t > self.t_end):
            raise InvalidRequest(f"numeric solution is only defined on [0, {self.t_end!r}]")
        x = self._x(t)
        v = self._v(t)
        if not np.all(np.abs(v) < 1.0):
            raise Superluminal("interpolated velocity reached light speed")
        a = _acceleration(x, v)
        return x, v, a


def numeric_solution(beta: BetaLike, config: IntegratorConfig | None = None,
                     periods: float = 10.0) -> NumericSolution:
    """Integrate and wrap as a handle; by default spans ``periods`` exact periods."""
    b = make_beta(beta)
    if config is None:
        config = IntegratorConfig(t_end=periods * exact_period(b))
    return NumericSolution(integrate(b, config), config)


@dataclass(frozen=True)
class OracleReport:
    beta: Beta
    exact_period: float
    exact_amplitude: float
    invariant_drift: float


def oracle_report(beta: BetaLike, config: IntegratorConfig | None = None) -> OracleReport:
    b = make_beta(beta)
    period = exact_period(b)
    if config is None:
        config = IntegratorConfig(t_end=10 * period)
    traj = integrate(b, config)
    return OracleReport(b, period, exact_amplitude(b), invariant_drift(traj))
