# %% [markdown]
# # The single-harmonic trial solution
#
# x(t) = A sin(W t) with W = (1 - beta^2)^(3/4) and A = beta / W.
# Both the amplitude and the period grow as beta approaches 1.

# %%
import numpy as np

from relosc import amplitude, freq_ratio, period_ratio, trial_solution

for beta in (0.1, 0.3, 0.5, 0.7):
    print(f"beta={beta:.1f}  W={freq_ratio(beta):.5f}  A={amplitude(beta):.5f}  T/T0={period_ratio(beta):.5f}")

# %% [markdown]
# The trial solution meets x(0) = 0, xdot(0) = beta exactly but leaves a
# residual in the equation of motion wherever x is nonzero.

# %%
s = trial_solution(0.8)
t = np.linspace(0, s.period_hint, 9)
print("t        residual")
for ti, r in zip(t, s.residual(t)):
    print(f"{ti:7.3f}  {r:+.5f}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    t = np.linspace(0, 40, 2000)
    for beta in (0.1, 0.3, 0.5, 0.7):
        plt.plot(t, trial_solution(beta).position(t), label=f"beta={beta}")
    plt.xlabel("t")
    plt.ylabel("x")
    plt.legend()
    plt.savefig("trial_solution.png", dpi=120)
