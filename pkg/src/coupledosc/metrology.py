"""
Signal-to-noise bounds for estimating a bare oscillator frequency.

All bounds are phase-maximised envelopes with a single measurement; scale
by the number of repetitions externally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError, NormalModes, OscillatorPair, normal_modes


@dataclass(frozen=True)
class ProbeSpec:
    """Displaced (and optionally squeezed) probe state.

    ``noise_squeezing`` is the squeezing parameter xi with Var(x) = exp(-2 xi)/4,
    so positive values reduce the noise of the measured quadrature.
    """

    mean_excitation: float = 1.0
    time: float = 1.0
    noise_squeezing: float = 0.0

    def __post_init__(self):
        for name in ("mean_excitation", "time", "noise_squeezing"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite", f"{name} finite")
        if self.mean_excitation < 0:
            raise DomainError("mean_excitation must be >= 0", "mean_excitation >= 0")
        if self.time < 0:
            raise DomainError("time must be >= 0", "time >= 0")


@dataclass(frozen=True)
class SnrReport:
    snr_bound: float
    enhancement_over_sql: float

    def as_dict(self):
        return {"snr_bound": self.snr_bound, "enhancement_over_sql": self.enhancement_over_sql}


def standard_quantum_limit(probe: ProbeSpec) -> float:
    """Coherent-state baseline 4 |alpha|^2 t^2."""
    return 4.0 * probe.mean_excitation * probe.time ** 2


def snr_bound_squeezed_probe(probe: ProbeSpec) -> SnrReport:
    """Bound for a single oscillator probed with a squeezed coherent state."""
    enhancement = math.exp(2.0 * probe.noise_squeezing)
    return SnrReport(standard_quantum_limit(probe) * enhancement, enhancement)


def dressed_frequency_derivative(pair: OscillatorPair, modes: NormalModes | None = None) -> float:
    """d(omega_minus)/d(omega) at fixed Omega and g.

    Differentiating the trace and determinant identities of the normal modes
    gives

        dw_-/dw = (w (W^2 - w^2 + D) - g^2 W) / (2 w_- D),

    with D = w_+^2 - w_-^2 = sqrt((W^2 - w^2)^2 + 4 g^2 w W).  Taking D from
    hypot rather than from the rounded frequencies keeps it nonzero for any
    g > 0, and with w <= W nothing cancels.  At g = 0 the lower mode is the
    bare mode a itself and the derivative is exactly 1 (also at the resonant
    degeneracy, where the formula above is 0/0).
    """
    if pair.g == 0.0:
        return 1.0
    if modes is None:
        modes = normal_modes(pair)
    w, W, g = pair.omega, pair.Omega, pair.g
    split = W * W - w * w
    D = math.hypot(split, 2.0 * g * math.sqrt(w * W))
    return (w * (split + D) - g * g * W) / (2.0 * modes.omega_minus * D)


def offresonant_derivative(pair: OscillatorPair, modes: NormalModes | None = None) -> float:
    """Far-detuned approximation exp(2 xi_-) (1 - g^2/(2 omega Omega))."""
    if modes is None:
        modes = normal_modes(pair)
    return math.exp(2.0 * modes.xi_minus) * (1.0 - pair.g ** 2 / (2.0 * pair.omega * pair.Omega))


def snr_bound_interacting(pair: OscillatorPair, probe: ProbeSpec,
                          modes: NormalModes | None = None) -> SnrReport:
    """Bound for a coherent probe of the lower dressed mode.

    The noise stays at the vacuum level while the signal picks up the factor
    dw_-/dw, so the bound is 4 |alpha|^2 t^2 (dw_-/dw)^2.
    """
    if probe.noise_squeezing != 0.0:
        raise DomainError(
            "the interacting bound is defined for a coherent probe (noise_squeezing = 0)",
            "noise_squeezing == 0",
        )
    enhancement = dressed_frequency_derivative(pair, modes) ** 2
    return SnrReport(standard_quantum_limit(probe) * enhancement, enhancement)
