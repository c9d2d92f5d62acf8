"""Single-harmonic trial solution ``x(t) = A sin(Omega t)`` and its laws.

With ``Omega = (1 - beta**2)**(3/4)`` and ``A = beta / Omega`` the trial
solution meets the initial conditions exactly but is not an exact solution
of the equation of motion; :meth:`TrialSolution.residual` exposes the defect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from relosc.core import Beta, BetaLike, SolutionHandle, make_beta


def freq_ratio(beta: BetaLike) -> float:
    """Relativistic to natural angular frequency, ``(1 - beta**2)**0.75``."""
    b = make_beta(beta)
    return math.exp(0.75 * math.log(b.one_minus_sq))


def amplitude(beta: BetaLike) -> float:
    """Trial-solution amplitude ``beta / freq_ratio(beta)``."""
    b = make_beta(beta)
    return b.value / freq_ratio(b)


def period_ratio(beta: BetaLike) -> float:
    """``T(beta) / T0``; diverges as beta approaches 1."""
    return 1.0 / freq_ratio(beta)


@dataclass(frozen=True)
class TrialSolution(SolutionHandle):
    beta: Beta
    freq_ratio: float
    amplitude: float

    label = "trial"
    ic_tol = 0.0

    @property
    def period_hint(self) -> float:
        return 2.0 * math.pi / self.freq_ratio

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        phase = self.freq_ratio * t
        s, c = np.sin(phase), np.cos(phase)
        x = self.amplitude * s
        xdot = self.beta.value * c
        xddot = -self.amplitude * self.freq_ratio**2 * s
        return x, xdot, xddot

    def residual(self, t):
        """Left side of ``xddot + (1 - xdot**2)**1.5 x`` along the trial solution.

        Equals ``A sin(Omega t) [(1 - beta**2 cos**2(Omega t))**1.5 - Omega**2]``;
        zero only where ``x`` itself vanishes.
        """
        t = np.asarray(t, dtype=float)
        phase = self.freq_ratio * t
        s = np.sin(phase)
        c2 = np.cos(phase) ** 2
        return self.amplitude * s * ((1.0 - self.beta.value**2 * c2) ** 1.5 - self.freq_ratio**2)


def trial_solution(beta: BetaLike) -> TrialSolution:
    b = make_beta(beta)
    return TrialSolution(b, freq_ratio(b), amplitude(b))
