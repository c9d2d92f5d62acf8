# %% [markdown]
# # Exact period from two independent routes
#
# The equation of motion conserves gamma - 1 + x^2/2. That gives the exact
# turning point sqrt(2 (gamma0 - 1)) and the period as a bounded quadrature.
# Integrating the ODE and timing zero crossings must give the same number.

# %%
import math

from relosc import IntegratorConfig, exact_amplitude, exact_period, integrate, invariant_drift
from relosc import measure_amplitude, measure_period, period_ratio

for beta in (0.1, 0.5, 0.8, 0.9, 0.99):
    T = exact_period(beta)
    traj = integrate(beta, IntegratorConfig(t_end=5 * T))
    print(f"beta={beta:<5} quadrature T={T:.12f}  measured T={measure_period(traj):.12f}  "
          f"trial T={2 * math.pi * period_ratio(beta):.6f}  drift={invariant_drift(traj):.1e}  "
          f"x_max={measure_amplitude(traj):.8f} (exact {exact_amplitude(beta):.8f})")
