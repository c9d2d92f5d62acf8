"""Dimensionless model, validated parameters and the shared solution contract."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np


class RelOscError(Exception):
    """Base class for all errors raised by :mod:`relosc`."""


class OutOfRange(RelOscError, ValueError):
    """Initial relative velocity outside the open interval (0, 1).

    ``kind`` is ``"superluminal"`` for values >= 1 and ``"degenerate"`` for
    values <= 0 (the rest solution).
    """

    def __init__(self, message: str, kind: str):
        super().__init__(message)
        self.kind = kind


class InvalidScale(RelOscError, ValueError):
    pass


class Superluminal(RelOscError, ValueError):
    """A velocity reached or exceeded the speed of light (|xdot| >= 1)."""


class QuadratureFailure(RelOscError, RuntimeError):
    pass


class StepSizeUnderflow(RelOscError, RuntimeError):
    pass


class InsufficientSpan(RelOscError, ValueError):
    pass


class InvalidRequest(RelOscError, ValueError):
    pass


@dataclass(frozen=True)
class Beta:
    """Initial relative velocity ``xdot(0) = Xdot(0) / c``, strictly in (0, 1)."""

    value: float

    def __post_init__(self):
        v = self.value
        if isinstance(v, Beta):
            v = v.value
        try:
            v = float(v)
        except (TypeError, ValueError):
            raise OutOfRange(f"beta must be a real number, got {self.value!r}", "invalid")
        if math.isnan(v):
            raise OutOfRange("beta must not be NaN", "invalid")
        if v >= 1.0:
            raise OutOfRange(
                f"beta = {v!r} is superluminal: the initial velocity may not reach "
                "or exceed the speed of light (beta >= 1 is prohibited)",
                "superluminal",
            )
        if v <= 0.0:
            raise OutOfRange(
                f"beta = {v!r} gives the degenerate rest solution x(t) = 0; "
                "beta must be strictly positive",
                "degenerate",
            )
        object.__setattr__(self, "value", v)

    def __float__(self) -> float:
        return self.value

    @property
    def one_minus_sq(self) -> float:
        """``1 - beta**2`` computed as ``(1 - beta)(1 + beta)``."""
        b = self.value
        return (1.0 - b) * (1.0 + b)

    @property
    def gamma0(self) -> float:
        """Lorentz factor at t = 0."""
        return 1.0 / math.sqrt(self.one_minus_sq)


BetaLike = Union[Beta, float]


def make_beta(value: BetaLike) -> Beta:
    """Validate ``value`` and return a :class:`Beta`.

    Raises :class:`OutOfRange` when ``value <= 0`` or ``value >= 1``.
    """
    if isinstance(value, Beta):
        return value
    return Beta(value)


def to_dimensionless(X, tau, omega0: float, c: float):
    """Convert dimensional position and time to ``(x, t) = (w0 X / c, w0 tau)``."""
    _check_scales(omega0, c)
    return omega0 * np.asarray(X, dtype=float) / c, omega0 * np.asarray(tau, dtype=float)


def from_dimensionless(x, t, omega0: float, c: float):
    """Inverse of :func:`to_dimensionless`: returns ``(X, tau)``."""
    _check_scales(omega0, c)
    return c * np.asarray(x, dtype=float) / omega0, np.asarray(t, dtype=float) / omega0


def _check_scales(omega0, c):
    if not (c > 0):
        raise InvalidScale(f"speed of light c must be positive, got {c!r}")
    if not (omega0 > 0):
        raise InvalidScale(f"natural angular frequency must be positive, got {omega0!r}")


@dataclass(frozen=True)
class OscState:
    t: float
    x: float
    xdot: float

    def __post_init__(self):
        if not abs(self.xdot) < 1.0:
            raise Superluminal(f"|xdot| = {abs(self.xdot)!r} >= 1 at t = {self.t!r}")


class SolutionHandle:
    """Evaluate ``(x, xdot, xddot)`` of some solution of the oscillator at any ``t``.

    Subclasses implement :meth:`evaluate` for array input. ``period_hint`` is
    the producer's own notion of its period and is used only to size sampling
    windows; ``ic_tol`` is the accuracy with which the initial conditions
    ``x(0) = 0, xdot(0) = beta`` are reproduced (``None`` when the producer
    does not claim them, as for the harmonic-balance ansatz).
    """

    label: str = "abstract"
    beta: Beta
    ic_tol: float | None = 0.0

    def evaluate(self, t):
        raise NotImplementedError

    @property
    def period_hint(self) -> float:
        raise NotImplementedError

    def __call__(self, t):
        return self.evaluate(t)

    def position(self, t):
        return self.evaluate(t)[0]

    def velocity(self, t):
        return self.evaluate(t)[1]

    def acceleration(self, t):
        return self.evaluate(t)[2]

    def sample(self, t_end: float, n_samples: int) -> "Trajectory":
        """Uniformly sample ``[0, t_end]`` with ``n_samples`` points."""
        if n_samples < 2:
            raise InvalidRequest("n_samples must be at least 2")
        if not t_end > 0:
            raise InvalidRequest("t_end must be positive")
        t = np.linspace(0.0, t_end, n_samples)
        x, xdot, _ = self.evaluate(t)
        return Trajectory(t, x, xdot, self.label, self.beta)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Samples ``(t, x, xdot)`` at strictly increasing times starting at 0."""

    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray
    label: str
    beta: Beta

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        x = np.array(self.x, dtype=float)
        xdot = np.array(self.xdot, dtype=float)
        if not (t.ndim == x.ndim == xdot.ndim == 1 and t.size == x.size == xdot.size):
            raise InvalidRequest("t, x and xdot must be 1-d arrays of equal length")
        if t.size == 0 or t[0] != 0.0:
            raise InvalidRequest("trajectory must start at t = 0")
        if np.any(np.diff(t) <= 0):
            raise InvalidRequest("trajectory times must be strictly increasing")
        for a in (t, x, xdot):
            a.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "xdot", xdot)
        object.__setattr__(self, "beta", make_beta(self.beta))

    def __len__(self) -> int:
        return self.t.size

    def __getitem__(self, i: int) -> OscState:
        return OscState(float(self.t[i]), float(self.x[i]), float(self.xdot[i]))

    def __iter__(self) -> Iterator[OscState]:
        for i in range(len(self)):
            yield self[i]
