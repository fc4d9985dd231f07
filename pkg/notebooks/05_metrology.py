# %% [markdown]
# # Frequency estimation with a coupled probe
#
# Probing the soft mode with a coherent state leaves the noise at the
# vacuum level while the signal scales with d(omega_minus)/d(omega).  Near
# the instability this slope becomes large and beats the standard limit.

# %%
import numpy as np

from coupledosc import (
    OscillatorPair,
    ProbeSpec,
    dressed_frequency_derivative,
    normal_modes,
    snr_bound_interacting,
    snr_bound_squeezed_probe,
)

probe = ProbeSpec(mean_excitation=1.0, time=1.0)
print("coherent baseline:", snr_bound_squeezed_probe(probe).snr_bound)
print("squeezed probe, xi = 0.5:", snr_bound_squeezed_probe(ProbeSpec(1.0, 1.0, 0.5)).snr_bound)

# %% [markdown]
# ## Enhancement near the instability
#
# With Omega much larger than omega the slope approaches exp(2 xi_minus)/2,
# so the bound approaches |alpha|^2 t^2 exp(4 xi_minus).

# %%
print(f"{'g/g_c':>8} {'slope':>10} {'exp(2xi)/2':>11} {'enhancement':>12}")
for q in (0.5, 0.9, 0.99, 0.999, 0.9999):
    pair = OscillatorPair.from_ratios(0.01, q)
    xi = normal_modes(pair).xi_minus
    slope = dressed_frequency_derivative(pair)
    gain = snr_bound_interacting(pair, probe).enhancement_over_sql
    print(f"{q:8.4f} {slope:10.4f} {np.exp(2 * xi) / 2:11.4f} {gain:12.2f}")

# %% [markdown]
# ## Weak coupling costs a little
#
# For small g the slope dips just below 1, by roughly 4 (omega/Omega)^4,
# before the enhancement sets in.

# %%
for ratio in (0.1, 0.05):
    qs = np.linspace(0, 0.99, 1000)
    gains = [snr_bound_interacting(OscillatorPair.from_ratios(ratio, q), probe).enhancement_over_sql for q in qs]
    i = int(np.argmin(gains))
    print(f"omega/Omega = {ratio}: minimum enhancement {gains[i]:.6f} at g/g_c = {qs[i]:.3f}")
