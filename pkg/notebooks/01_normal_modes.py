# %% [markdown]
# # Normal modes of two coupled oscillators
#
# Two oscillators of frequencies omega <= Omega coupled through their
# positions split into a soft mode omega_minus and a stiff mode omega_plus.
# The coupling must stay below g_c = sqrt(omega * Omega); at g_c the soft
# mode goes to zero frequency.

# %%
import numpy as np

from coupledosc import (
    OscillatorPair,
    bogoliubov,
    coupling_from_frequencies,
    normal_modes,
    squeezing_from_frequencies,
)

pair = OscillatorPair(1.0, 2.0, 0.5)
m = normal_modes(pair)
print(f"g_c = {pair.g_c:.6f}, g/g_c = {pair.coupling_ratio:.4f}")
print(f"omega_minus = {m.omega_minus:.6f}, omega_plus = {m.omega_plus:.6f}")
print(f"mixing angle = {m.theta:.6f} rad, xi_minus = {m.xi_minus:.6f}, xi_plus = {m.xi_plus:.6f}")

# %% [markdown]
# The sum of squared frequencies is conserved, while their product drops
# as g^2 grows.

# %%
print("trace check:", m.omega_minus**2 + m.omega_plus**2, "vs", pair.omega**2 + pair.Omega**2)
print("product check:", (m.omega_minus * m.omega_plus) ** 2, "vs",
      pair.omega * pair.Omega * (pair.omega * pair.Omega - pair.g**2))

# %% [markdown]
# ## Squeezing grows without bound near the instability

# %%
print(f"{'g/g_c':>8} {'omega_minus':>12} {'xi_minus':>9}")
for q in (0.0, 0.5, 0.9, 0.99, 0.999, 0.9999):
    m = normal_modes(OscillatorPair.from_ratios(1.0, q))
    print(f"{q:8.4f} {m.omega_minus:12.6f} {m.xi_minus:9.4f}")

# %% [markdown]
# ## Reading the coupling off a measured spectrum
#
# Given the bare and dressed frequencies, the coupling and both squeezing
# parameters follow without any other input.

# %%
measured = (1.0, 2.0, 0.9174353409490471, 2.0391940553016723)
print("g =", coupling_from_frequencies(*measured))
print("(xi_minus, xi_plus) =", squeezing_from_frequencies(*measured))

# %% [markdown]
# ## The Bogoliubov map is symplectic
#
# Rows hold the expansion of (c, c^dag, d, d^dag) on (a, a^dag, b, b^dag).
# The commutator defect measures how far the dressed operators are from
# being canonical bosons.

# %%
t = bogoliubov(pair)
np.set_printoptions(precision=5, suppress=True)
print(t.coeffs)
print("commutator defect:", t.commutator_defect())
