"""
Single-point reports and two-parameter grid sweeps.

Grids are written as CSV with a fixed column set and 17 significant digits,
so repeated runs are byte-identical.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import DomainError, OscillatorPair, normal_modes
from .gaussian import Temperature, log_negativity, thermal_covariance
from .metrology import ProbeSpec, snr_bound_interacting
from .witness import duan_from_covariance, duan_ground, duan_thermal_resonant

AXES = ("omega_ratio", "g_ratio", "beta_omega_minus")
QUANTITIES = ("duan", "log_negativity", "enhancement")
CSV_COLUMNS = ("axis1", "axis2", "value", "entangled", "display_value", "error")


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in AXES:
            raise DomainError(f"unknown axis {self.name!r}; expected one of {AXES}", "axis name")
        if int(self.count) != self.count or self.count < 2:
            raise DomainError(f"axis {self.name} needs count >= 2", "count >= 2")
        lo, hi = min(self.start, self.stop), max(self.start, self.stop)
        if self.name == "g_ratio" and not (0.0 <= lo and hi < 1.0):
            raise DomainError("g_ratio must lie in [0, 1)", "0 <= g_ratio < 1")
        if self.name == "omega_ratio" and not (0.0 < lo and hi <= 1.0):
            raise DomainError("omega_ratio must lie in (0, 1]", "0 < omega_ratio <= 1")
        if self.name == "beta_omega_minus" and not lo > 0.0:
            raise DomainError("beta_omega_minus must be positive", "beta_omega_minus > 0")

    @classmethod
    def parse(cls, text):
        """Parse ``name:start:stop:count``."""
        try:
            name, start, stop, count = text.split(":")
            start, stop, count = float(start), float(stop), int(count)
        except ValueError:
            raise DomainError(f"axis must be name:start:stop:count, got {text!r}", "axis syntax") from None
        return cls(name, start, stop, count)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Two axes, the remaining fixed parameters and the tabulated quantity.

    ``fixed`` may hold ``Omega`` (default 1), ``omega_ratio`` (default 1),
    ``g_ratio`` (default 0) and one of ``beta`` / ``beta_omega_minus``
    (default: ground state).  When ``beta_omega_minus`` is a coordinate,
    beta is recomputed per cell from that cell's omega_minus.
    """

    axis1: Axis
    axis2: Axis
    quantity: str = "duan"
    clamp_at_one: bool = True
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axis1.name == self.axis2.name:
            raise DomainError("the two axes must differ", "axis1 != axis2")
        if self.quantity not in QUANTITIES:
            raise DomainError(f"unknown quantity {self.quantity!r}; expected one of {QUANTITIES}",
                              "quantity")


PRESETS = {
    "fig1": SweepSpec(Axis("omega_ratio", 0.05, 1.0, 50), Axis("g_ratio", 0.0, 0.99, 50), "duan"),
    "fig2": SweepSpec(Axis("g_ratio", 0.0, 0.99, 50), Axis("beta_omega_minus", 0.1, 10.0, 50), "duan",
                      fixed={"omega_ratio": 1.0}),
}


def resolve_point(params):
    """Pair and temperature for a flat parameter dict (ratios or absolute values)."""
    Omega = float(params.get("Omega", 1.0))
    omega_ratio = float(params.get("omega_ratio", 1.0))
    pair = OscillatorPair.from_ratios(omega_ratio, float(params.get("g_ratio", 0.0)), Omega)
    if params.get("beta_omega_minus") is not None:
        temp = Temperature(float(params["beta_omega_minus"]) / normal_modes(pair).omega_minus)
    else:
        temp = Temperature(float(params.get("beta", math.inf)))
    return pair, temp


def witness_report(pair, temp, modes=None):
    """Witness by the most direct route available for this state."""
    if temp.is_ground:
        return duan_ground(pair, "frequencies_form", modes)
    if pair.is_resonant():
        return duan_thermal_resonant(pair, temp, modes)
    return duan_from_covariance(thermal_covariance(pair, temp, modes), pair)


def evaluate(pair, temp, quantity):
    """Return ``(value, entangled)``; ``entangled`` is None for non-witness quantities."""
    if quantity == "duan":
        report = witness_report(pair, temp)
        return report.value, report.entangled
    if quantity == "log_negativity":
        result = log_negativity(thermal_covariance(pair, temp))
        return result.log_negativity, result.log_negativity > 0
    return snr_bound_interacting(pair, ProbeSpec()).enhancement_over_sql, None


@dataclass(frozen=True)
class Row:
    axis1: float
    axis2: float
    value: float
    entangled: bool | None
    display_value: float
    error: str = ""


def _cell(args):
    spec, x1, x2 = args
    params = {"Omega": 1.0, **spec.fixed, spec.axis1.name: x1, spec.axis2.name: x2}
    try:
        pair, temp = resolve_point(params)
        value, entangled = evaluate(pair, temp, spec.quantity)
    except (DomainError, ArithmeticError, ValueError) as exc:
        return Row(x1, x2, math.nan, None, math.nan, f"{type(exc).__name__}: {exc}")
    shown = min(value, 1.0) if spec.clamp_at_one and spec.quantity == "duan" else value
    return Row(x1, x2, value, entangled, shown)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[Row]:
    """Evaluate every cell, axis1 outer and axis2 inner.

    Failing cells carry NaN and an error message; the sweep continues.
    """
    cells = [(spec, float(x1), float(x2)) for x1 in spec.axis1.values() for x2 in spec.axis2.values()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_cell, cells, chunksize=64))
    return [_cell(c) for c in cells]


def fmt(x):
    return f"{x:.17g}"


def write_csv(rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        entangled = "" if r.entangled is None else ("true" if r.entangled else "false")
        writer.writerow([fmt(r.axis1), fmt(r.axis2), fmt(r.value), entangled,
                         fmt(r.display_value), r.error])


def grid(rows, spec):
    """Values reshaped to (axis1.count, axis2.count)."""
    return np.array([r.value for r in rows]).reshape(spec.axis1.count, spec.axis2.count)


def _number(x):
    # JSON has no inf/nan literals
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, float) and math.isnan(x):
        return None
    return x


def run_point(pair: OscillatorPair, temp: Temperature | None = None,
              probe: ProbeSpec | None = None) -> dict:
    """Everything known about one parameter point, as a JSON-ready dict."""
    temp = temp or Temperature()
    probe = probe or ProbeSpec()
    modes = normal_modes(pair)
    omega, Omega = pair.caller_frequencies
    negativity = log_negativity(thermal_covariance(pair, temp, modes))
    return {
        "input": {
            "omega": omega, "Omega": Omega, "g": pair.g,
            "g_ratio": pair.coupling_ratio, "beta": _number(temp.beta),
            "labels_swapped": pair.swapped,
        },
        "normal_modes": {
            "omega_minus": modes.omega_minus, "omega_plus": modes.omega_plus,
            "theta": modes.theta, "xi_minus": modes.xi_minus, "xi_plus": modes.xi_plus,
            "g_c": pair.g_c,
        },
        "witness": witness_report(pair, temp, modes).as_dict(),
        "negativity": {"nu_tilde_minus": negativity.nu_tilde_minus,
                       "log_negativity": negativity.log_negativity},
        "snr": {"mean_excitation": probe.mean_excitation, "time": probe.time,
                **snr_bound_interacting(pair, probe, modes).as_dict()},
    }
