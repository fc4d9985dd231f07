"""
Duan-Simon inseparability witness for the bare modes a and b.

Quadratures follow the half-normalised convention x = (a + a^dag)/2,
p = (a - a^dag)/(2i), in which each vacuum contributes 1/4 and every
separable state obeys Var(x_a + x_b) + Var(p_a - p_b) >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DomainError, NormalModes, OscillatorPair, normal_modes
from .gaussian import CovarianceMatrix, Temperature, thermal_occupation

BOUND = 1.0
FORMS = ("theta_form", "g_form", "frequencies_form")


@dataclass(frozen=True)
class WitnessReport:
    value: float
    form_used: str
    bound: float = BOUND

    @property
    def entangled(self) -> bool:
        # strict inequality: the separability boundary itself is not a violation
        return self.value < self.bound

    def as_dict(self):
        return {"value": self.value, "bound": self.bound,
                "entangled": self.entangled, "form_used": self.form_used}


def _theta_form(pair, modes):
    w, W = pair.omega, pair.Omega
    wm, wp = modes.omega_minus, modes.omega_plus
    two_t = 2.0 * modes.theta
    mixing = (w - W) * math.cos(two_t) - 2.0 * math.sqrt(w * W) * math.sin(two_t)
    bracket = (w + W) * (wm + wp) - (wm - wp) * mixing
    return (w * W + wm * wp) * bracket / (8.0 * w * wm * W * wp)


def _g_form(pair, modes):
    w, W, g = pair.omega, pair.Omega, pair.g
    wm, wp = modes.omega_minus, modes.omega_plus
    root = math.sqrt((w * w - W * W) ** 2 + 4.0 * w * W * g * g)
    # root = 0 only for the degenerate uncoupled resonance, where wm - wp = 0 as well
    mixing = (4.0 * w * W * g + (w - W) ** 2 * (w + W)) / root if root else 0.0
    bracket = (w + W) * (wm + wp) + (wm - wp) * mixing
    return (w * W + wm * wp) * bracket / (8.0 * w * wm * W * wp)


def _frequencies_form(pair, modes):
    w, W = pair.omega, pair.Omega
    wm, wp = modes.omega_minus, modes.omega_plus
    split = (wp - wm) * (wp + wm)
    bare = abs((W - w) * (W + w))
    # split^2 - bare^2 = 4 g^2 omega Omega; clamp rounding at g = 0
    coupling_term = math.sqrt(max((split - bare) * (split + bare), 0.0))
    bracket = (w + W) * (wm + wp) - (2.0 * math.sqrt(w * W) * coupling_term
                                      + (w + W) * (w - W) ** 2) / (wm + wp)
    return (w * W + wm * wp) * bracket / (8.0 * w * wm * W * wp)


_FORM_FUNCS = {
    "theta_form": _theta_form,
    "g_form": _g_form,
    "frequencies_form": _frequencies_form,
}


def duan_ground(pair: OscillatorPair, form: str = "frequencies_form",
                modes: NormalModes | None = None) -> WitnessReport:
    """Ground-state witness from one of three equivalent closed forms.

    ``theta_form`` uses the mixing angle, ``g_form`` the coupling and
    ``frequencies_form`` only the four bare and dressed frequencies, i.e.
    what a spectroscopy measurement delivers.
    """
    try:
        func = _FORM_FUNCS[form]
    except KeyError:
        raise ValueError(f"unknown form {form!r}; expected one of {FORMS}") from None
    if pair.g == 0.0:
        # the bracket collapses to 4 omega Omega; return the identity without rounding
        return WitnessReport(1.0, form)
    if modes is None:
        modes = normal_modes(pair)
    return WitnessReport(func(pair, modes), form)


def duan_resonant_ground_value(pair: OscillatorPair, modes: NormalModes | None = None) -> float:
    """w_-/(2 omega) + omega/(2 w_+); the ground-state witness at resonance."""
    if modes is None:
        modes = normal_modes(pair)
    return modes.omega_minus / (2.0 * pair.omega) + pair.omega / (2.0 * modes.omega_plus)


def duan_thermal_resonant(pair: OscillatorPair, temp: Temperature,
                          modes: NormalModes | None = None) -> WitnessReport:
    """Thermal witness at resonance from the dressed populations.

    value = exp(-2 xi_-)(n_- + 1/2) + exp(2 xi_+)(n_+ + 1/2).
    Off resonance use ``duan_from_covariance(thermal_covariance(...))``.
    """
    if not pair.is_resonant():
        raise DomainError(
            "thermal closed form holds only for omega == Omega; use duan_from_covariance",
            "omega == Omega",
        )
    if modes is None:
        modes = normal_modes(pair)
    n_minus = thermal_occupation(temp.beta, modes.omega_minus)
    n_plus = thermal_occupation(temp.beta, modes.omega_plus)
    value = (math.exp(-2.0 * modes.xi_minus) * (n_minus + 0.5)
             + math.exp(2.0 * modes.xi_plus) * (n_plus + 0.5))
    return WitnessReport(value, "thermal_resonant")


def halfnormalized_moments(cov: CovarianceMatrix) -> tuple[list[list[float]], list[list[float]]]:
    """Convert canonical blocks to the x = (a + a^dag)/2 convention.

    x_a = sqrt(omega/2) X_a and p_a = P_a / sqrt(2 omega).
    """
    w, W = cov.omega, cov.Omega
    if w is None or W is None:
        raise ValueError("covariance carries no frequency metadata")
    sx = (math.sqrt(w / 2.0), math.sqrt(W / 2.0))
    sp = (1.0 / math.sqrt(2.0 * w), 1.0 / math.sqrt(2.0 * W))
    x = [[cov.X[i, j] * sx[i] * sx[j] for j in range(2)] for i in range(2)]
    p = [[cov.P[i, j] * sp[i] * sp[j] for j in range(2)] for i in range(2)]
    return x, p


def duan_from_covariance(cov: CovarianceMatrix, pair: OscillatorPair) -> WitnessReport:
    """Witness evaluated directly from second moments; valid for any Gaussian state."""
    if cov.omega is None or cov.Omega is None:
        raise DomainError("covariance has no frequency metadata", "covariance built for pair")
    if (not math.isclose(cov.omega, pair.omega, rel_tol=1e-12)
            or not math.isclose(cov.Omega, pair.Omega, rel_tol=1e-12)):
        raise DomainError(
            f"covariance was built for (omega, Omega) = ({cov.omega!r}, {cov.Omega!r}), "
            f"not ({pair.omega!r}, {pair.Omega!r})",
            "covariance built for pair",
        )
    x, p = halfnormalized_moments(cov)
    var_u = x[0][0] + x[1][1] + 2.0 * x[0][1]
    var_v = p[0][0] + p[1][1] - 2.0 * p[0][1]
    return WitnessReport(var_u + var_v, "covariance_form")


def offresonant_limit_value(pair: OscillatorPair, modes: NormalModes | None = None) -> float:
    """w_-/(2 omega) + omega/(2 w_-), the far-detuned approximation of the witness.

    Always >= 1 (arithmetic-geometric mean), so it never signals entanglement.
    Only meaningful for Omega >> omega.
    """
    if modes is None:
        modes = normal_modes(pair)
    ratio = modes.omega_minus / pair.omega
    return 0.5 * ratio + 0.5 / ratio
