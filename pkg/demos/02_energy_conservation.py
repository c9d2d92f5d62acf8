# %% [markdown]
# # Energy conservation along the trial solution
#
# Kinetic energy gamma - 1 plus the closed-form potential sums to the constant
# (1 - beta^2)^(-1/2) - 1. For beta = 0.8 that is 2/3.

# %%
import numpy as np

from relosc import energy_series, mechanical_energy, potential_energy, potential_from_force, trial_solution

s = trial_solution(0.8)
es = energy_series(s, 2 * s.period_hint, 2000)
print("E(0.8)            =", mechanical_energy(0.8))
print("mean total        =", es.mean_total)
print("max |total - E|   =", es.max_abs_deviation)

# %% [markdown]
# The closed-form potential agrees with direct quadrature of the Hook force.

# %%
for x in (0.25, 0.5, 1.0, s.amplitude):
    print(f"x={x:.4f}  closed form={potential_energy(0.8, x):.15f}  quadrature={potential_from_force(0.8, x):.15f}")
