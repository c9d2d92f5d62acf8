# %% [markdown]
# # The relativistic Hook force
#
# F = -W^2 x (1 - beta^2 + W^2 x^2)^(-3/2) with W from the trial-solution law.
# Substituting W^2 = (1 - beta^2)^(3/2) reduces it to
# -x (1 + sqrt(1 - beta^2) x^2)^(-3/2). For fixed x this tends to -x as
# beta -> 1, so the curve straightens out rather than vanishing.

# %%
import numpy as np

from relosc import hook_force

x = np.linspace(-1, 1, 5)
for beta in (0.05, 0.365, 0.68, 0.995):
    print(f"beta={beta:<6}", "  ".join(f"{f:+.4f}" for f in hook_force(beta, x)))
