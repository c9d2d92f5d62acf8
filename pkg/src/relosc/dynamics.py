"""Relativistic momentum, force and energies in normalized units.

Momentum is in units of ``m0 c``, force in ``m0 w0 c``, energy in ``m0 c**2``.
Functions broadcast over numpy arrays. The frequency ratio entering the Hook
force and potential defaults to the trial-solution law; pass ``omega`` to
evaluate them with another approximation's frequency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from relosc.analytic import freq_ratio
from relosc.core import BetaLike, QuadratureFailure, Superluminal, make_beta

QUAD_ABS_TOL = 1e-12


@dataclass(frozen=True)
class EnergyBreakdown:
    kinetic: float
    potential: float

    @property
    def total(self) -> float:
        return self.kinetic + self.potential


def _subluminal(xdot) -> np.ndarray:
    v = np.asarray(xdot, dtype=float)
    if not np.all(np.abs(v) < 1.0):
        raise Superluminal(f"|xdot| must be < 1, got max {np.max(np.abs(v))!r}")
    return v


def _inv_gamma_sq(v: np.ndarray) -> np.ndarray:
    return (1.0 - v) * (1.0 + v)


def _scalarize(a):
    return a.item() if isinstance(a, np.ndarray) and a.ndim == 0 else a


def momentum(xdot):
    """``xdot / sqrt(1 - xdot**2)``."""
    v = _subluminal(xdot)
    return _scalarize(v / np.sqrt(_inv_gamma_sq(v)))


def force_general(xdot, xddot):
    """Time derivative of the relativistic momentum, ``gamma**3 xddot``."""
    v = _subluminal(xdot)
    a = np.asarray(xddot, dtype=float)
    return _scalarize(_inv_gamma_sq(v) ** -1.5 * a)


def _omega(beta, omega):
    return freq_ratio(beta) if omega is None else float(omega)


def hook_force(beta: BetaLike, x, omega: float | None = None):
    """``-W**2 x (1 - beta**2 + W**2 x**2)**-1.5`` with ``W`` the frequency ratio."""
    b = make_beta(beta)
    w2 = _omega(b, omega) ** 2
    x = np.asarray(x, dtype=float)
    return _scalarize(-w2 * x * (b.one_minus_sq + w2 * x * x) ** -1.5)


def kinetic_energy(xdot):
    """``(1 - xdot**2)**-0.5 - 1``, written to avoid cancellation at small speed."""
    v = _subluminal(xdot)
    ig2 = _inv_gamma_sq(v)
    s = np.sqrt(ig2)
    # gamma - 1 == v**2 / (s (1 + s))
    return _scalarize(v * v / (s * (1.0 + s)))


def kinetic_energy_from_momentum(p):
    """``sqrt(p**2 + 1) - 1``: the momentum form of :func:`kinetic_energy`."""
    p = np.asarray(p, dtype=float)
    return _scalarize(p * p / (np.sqrt(p * p + 1.0) + 1.0))


def potential_energy(beta: BetaLike, x, omega: float | None = None):
    """``(1 - beta**2)**-0.5 - (1 - beta**2 + W**2 x**2)**-0.5``; zero at ``x = 0``."""
    b = make_beta(beta)
    w2 = _omega(b, omega) ** 2
    x = np.asarray(x, dtype=float)
    a = b.one_minus_sq
    q = w2 * x * x
    # a**-0.5 - (a + q)**-0.5 rearranged to stay accurate for small q
    ra, raq = np.sqrt(a), np.sqrt(a + q)
    return _scalarize(q / (ra * raq * (ra + raq)))


def potential_from_force(beta: BetaLike, x: float, omega: float | None = None) -> float:
    """Minus the integral of :func:`hook_force` from 0 to ``x`` by adaptive quadrature."""
    b = make_beta(beta)
    x = float(x)
    if x == 0.0:
        return 0.0
    w = _omega(b, omega)
    out = integrate.quad(
        lambda s: hook_force(b, s, w), 0.0, x,
        epsabs=QUAD_ABS_TOL, epsrel=0.0, limit=200, full_output=1,
    )
    if len(out) > 3:
        raise QuadratureFailure(f"quadrature of the Hook force did not converge: {out[3]}")
    value, err = out[0], out[1]
    if err > QUAD_ABS_TOL:
        raise QuadratureFailure(f"quadrature error estimate {err:.3g} exceeds {QUAD_ABS_TOL:g}")
    return -value


def mechanical_energy(beta: BetaLike) -> float:
    """Total energy fixed by the initial conditions, ``(1 - beta**2)**-0.5 - 1``."""
    return float(kinetic_energy(make_beta(beta).value))


def energy_breakdown(beta: BetaLike, x: float, xdot: float,
                     omega: float | None = None) -> EnergyBreakdown:
    return EnergyBreakdown(float(kinetic_energy(xdot)), float(potential_energy(beta, x, omega)))
