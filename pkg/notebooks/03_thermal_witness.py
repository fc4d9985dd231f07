# %% [markdown]
# # Entanglement at finite temperature
#
# At resonance the thermal witness has a closed form in the two dressed
# populations.  Heating fills the soft mode first, so entanglement survives
# only below a coupling-dependent temperature.

# %%
import numpy as np
from scipy.optimize import brentq

from coupledosc import OscillatorPair, Temperature, duan_thermal_resonant, normal_modes
from coupledosc.sweep import PRESETS, grid, run_sweep

pair = OscillatorPair(1.0, 1.0, 0.5)
wm = normal_modes(pair).omega_minus
for bw in (10.0, 2.0, 1.0, 0.2):
    report = duan_thermal_resonant(pair, Temperature(bw / wm))
    print(f"beta*omega_minus = {bw:5.1f}: witness = {report.value:.6f}, entangled = {report.entangled}")

# %% [markdown]
# ## Threshold temperature against coupling

# %%
def threshold(q):
    p = OscillatorPair.from_ratios(1.0, q)
    w = normal_modes(p).omega_minus
    return brentq(lambda bw: duan_thermal_resonant(p, Temperature(bw / w)).value - 1.0, 1e-3, 1e3)


print(f"{'g/g_c':>6} {'beta*omega_minus at threshold':>30}")
for q in (0.1, 0.3, 0.5, 0.7, 0.9, 0.99):
    print(f"{q:6.2f} {threshold(q):30.4f}")

# %% [markdown]
# ## The full grid
#
# Rows are g/g_c; each row lists the smallest beta*omega_minus on the grid
# where the witness is violated.  Colder is always at least as entangled.

# %%
spec = PRESETS["fig2"]
values = grid(run_sweep(spec), spec)
bw = spec.axis2.values()
for q, row in list(zip(spec.axis1.values(), values))[::7]:
    hits = np.flatnonzero(row < 1)
    print(f"g/g_c = {q:.3f}: entangled for beta*omega_minus >= "
          + (f"{bw[hits[0]]:.3f}" if hits.size else "never on this grid"))
