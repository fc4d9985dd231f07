# %% [markdown]
# # Logarithmic negativity
#
# The negativity follows from the smallest symplectic eigenvalue of the
# partially transposed covariance matrix.  At resonance it reduces to
# half the log of the frequency ratio.

# %%
import numpy as np

from coupledosc import (
    OscillatorPair,
    Temperature,
    ground_covariance,
    log_negativity,
    log_negativity_resonant,
    normal_modes,
    thermal_covariance,
)

pair = OscillatorPair(1.0, 1.0, 0.5)
cov = ground_covariance(pair)
np.set_printoptions(precision=6, suppress=True)
print("X block:\n", cov.X)
print("P block:\n", cov.P)
print("det X det P =", cov.purity_product(), "(pure state: 1/16)")
result = log_negativity(cov)
m = normal_modes(pair)
print("E_N =", result.log_negativity, " closed form:", 0.5 * np.log2(m.omega_plus / m.omega_minus))

# %% [markdown]
# ## Growth with coupling and loss with temperature

# %%
print(f"{'g/g_c':>6} {'ground':>8} {'bw=5':>8} {'bw=1':>8}")
for q in (0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
    p = OscillatorPair.from_ratios(1.0, q)
    w = normal_modes(p).omega_minus
    row = [log_negativity_resonant(p, Temperature(b / w)).log_negativity for b in (np.inf, 5.0, 1.0)]
    print(f"{q:6.2f} " + " ".join(f"{v:8.4f}" for v in row))

# %% [markdown]
# Off resonance there is no shortcut, but the general path applies unchanged.

# %%
detuned = OscillatorPair(1.0, 2.0, 0.5)
print("detuned ground E_N:", log_negativity(ground_covariance(detuned)).log_negativity)
print("detuned, beta = 3:", log_negativity(thermal_covariance(detuned, Temperature(3.0))).log_negativity)
