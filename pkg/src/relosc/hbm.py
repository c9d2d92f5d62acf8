"""Three-harmonic harmonic-balance approximation (Mickens).

    x(t) = c1 sin(w t) + c3 sin(3 w t) + c5 sin(5 w t)
    w    = ((2 - 2 beta**2) / (2 - beta**2))**(1/4)

with ``c1 = (beta/w)(1 + beta**2/8 + 3 beta**4/64)``,
``c3 = -(beta**3/(24 w))(1 + 3 beta**2/128)`` and ``c5 = 3 beta**5/(640 w)``.
The ansatz meets ``xdot(0) = beta`` only approximately; see
:attr:`HbmSolution.initial_velocity_error`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from relosc.core import Beta, BetaLike, SolutionHandle, make_beta


def hbm_omega(beta: BetaLike) -> float:
    b = make_beta(beta)
    b2 = b.value**2
    return (2.0 * b.one_minus_sq / (2.0 - b2)) ** 0.25


@dataclass(frozen=True)
class HbmSolution(SolutionHandle):
    beta: Beta
    omega: float
    c1: float
    c3: float
    c5: float

    label = "hbm"
    ic_tol = None

    @property
    def period_hint(self) -> float:
        return 2.0 * math.pi / self.omega

    def evaluate(self, t):
        w = self.omega
        phase = w * np.asarray(t, dtype=float)
        s1, s3, s5 = np.sin(phase), np.sin(3 * phase), np.sin(5 * phase)
        k1, k3, k5 = np.cos(phase), np.cos(3 * phase), np.cos(5 * phase)
        x = self.c1 * s1 + self.c3 * s3 + self.c5 * s5
        xdot = w * (self.c1 * k1 + 3 * self.c3 * k3 + 5 * self.c5 * k5)
        xddot = -w * w * (self.c1 * s1 + 9 * self.c3 * s3 + 25 * self.c5 * s5)
        return x, xdot, xddot

    @property
    def initial_velocity(self) -> float:
        return self.omega * (self.c1 + 3 * self.c3 + 5 * self.c5)

    @property
    def initial_velocity_error(self) -> float:
        """``xdot(0) - beta``; nonzero because the ansatz is truncated."""
        return self.initial_velocity - self.beta.value


def hbm_solution(beta: BetaLike) -> HbmSolution:
    b = make_beta(beta)
    v = b.value
    w = hbm_omega(b)
    c1 = v / w * (1 + v**2 / 8 + 3 * v**4 / 64)
    c3 = -(v**3) / (24 * w) * (1 + 3 * v**2 / 128)
    c5 = 3 * v**5 / (640 * w)
    return HbmSolution(b, w, c1, c3, c5)
