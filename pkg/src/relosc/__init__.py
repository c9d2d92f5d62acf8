"""Relativistic non-dissipative harmonic oscillator: analytic trial solution,
harmonic-balance reference, numerical oracle and energy-conservation diagnostics.

All quantities are dimensionless: position ``x = w0 X / c``, time ``t = w0 tau``,
energies in units of the rest energy and forces in units of ``m0 w0 c``.
"""

from relosc.core import (
    Beta,
    OscState,
    SolutionHandle,
    Trajectory,
    make_beta,
    to_dimensionless,
    from_dimensionless,
    RelOscError,
    OutOfRange,
    InvalidScale,
    Superluminal,
    QuadratureFailure,
    StepSizeUnderflow,
    InsufficientSpan,
    InvalidRequest,
)
from relosc.analytic import (
    TrialSolution,
    freq_ratio,
    amplitude,
    period_ratio,
    trial_solution,
)
from relosc.dynamics import (
    EnergyBreakdown,
    momentum,
    force_general,
    hook_force,
    kinetic_energy,
    potential_energy,
    potential_from_force,
    mechanical_energy,
    energy_breakdown,
)
from relosc.hbm import HbmSolution, hbm_omega, hbm_solution
from relosc.oracle import (
    IntegratorConfig,
    NumericSolution,
    OracleReport,
    integrate,
    exact_period,
    exact_amplitude,
    first_integral,
    measure_amplitude,
    measure_period,
    numeric_solution,
    invariant_drift,
    solve,
    oracle_report,
)
from relosc.diagnostics import (
    EnergySeries,
    MethodReport,
    energy_series,
    evaluate_method,
    sweep,
)

__version__ = "0.1.0"
