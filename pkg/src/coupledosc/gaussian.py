"""
Covariance matrices of ground and thermal states and their log-negativity.

Quadratures are the canonical ones, X_a = (a + a^dag)/sqrt(2 omega) and
P_a = i sqrt(omega/2)(a^dag - a), so the vacuum of mode a has <X_a^2> =
1/(2 omega) and <P_a^2> = omega/2.  Second moments are ordered
(X_a, X_b, P_a, P_b); for the states handled here there are no X-P
correlations and the covariance is block-diagonal, diag(X, P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, NormalModes, OscillatorPair, normal_modes

# Smallest beta * omega_minus accepted for thermal populations.
MIN_BETA_OMEGA = 1e-8
PHYSICALITY_TOL = 1e-10
# 2 nu~_- within this of 1 counts as the separable boundary (floating-point residue).
BOUNDARY_TOL = 1e-14


class IllConditionedCovarianceError(ArithmeticError):
    """The partially transposed covariance has no positive smaller eigenvalue."""


@dataclass(frozen=True)
class Temperature:
    """Inverse temperature with k_B = 1.  ``beta = inf`` is the ground state."""

    beta: float = math.inf

    def __post_init__(self):
        beta = float(self.beta)
        if math.isnan(beta) or beta <= 0:
            raise DomainError(f"beta must be positive, got {beta!r}", "beta > 0")
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_beta_omega(cls, beta_omega, frequency):
        """Temperature whose ``beta * frequency`` equals ``beta_omega``."""
        return cls(beta_omega / frequency)

    @property
    def is_ground(self) -> bool:
        return math.isinf(self.beta)


def thermal_occupation(beta: float, frequency: float) -> float:
    """Bose-Einstein occupation 1/(exp(beta*frequency) - 1)."""
    if math.isinf(beta):
        return 0.0
    x = beta * frequency
    if x < MIN_BETA_OMEGA:
        raise DomainError(
            f"beta * frequency = {x!r} is below the validated range ({MIN_BETA_OMEGA})",
            "beta * omega_minus >= 1e-8",
        )
    # exp(-x)/(1 - exp(-x)) does not overflow for large x
    return math.exp(-x) / -math.expm1(-x)


def _as_block(m, name):
    m = np.array(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError(f"{name} must be 2x2, got shape {m.shape}")
    if abs(m[0, 1] - m[1, 0]) > 1e-12 * max(1.0, np.max(np.abs(m))):
        raise DomainError(f"{name} block is not symmetric", f"{name} symmetric")
    m[1, 0] = m[0, 1]
    if m[0, 0] <= 0 or np.linalg.det(m) <= 0:
        raise DomainError(f"{name} block is not positive definite", f"{name} positive definite")
    m.setflags(write=False)
    return m


def _product_eigenvalues(X, P):
    """Eigenvalues (ascending) of X P for positive definite X and symmetric P.

    X P is similar to the symmetric L^T P L with X = L L^T, whose eigenvalues
    stay accurate when the two roots coincide (the trace/determinant
    quadratic loses half the digits there).
    """
    L = np.linalg.cholesky(X)
    return np.linalg.eigvalsh(L.T @ P @ L)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Block-diagonal two-mode covariance diag(X, P).

    ``omega`` and ``Omega`` record the bare frequencies the quadratures were
    scaled with; the Duan witness needs them to convert conventions.
    """

    X: np.ndarray
    P: np.ndarray
    omega: float | None = None
    Omega: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "X", _as_block(self.X, "X"))
        object.__setattr__(self, "P", _as_block(self.P, "P"))
        nu_min = self.symplectic_eigenvalues()[0]
        if nu_min < 0.5 - PHYSICALITY_TOL:
            raise DomainError(
                f"unphysical covariance: smallest symplectic eigenvalue {nu_min!r} < 1/2",
                "symplectic eigenvalues >= 1/2",
            )

    @property
    def matrix(self) -> np.ndarray:
        """Full 4x4 covariance in (X_a, X_b, P_a, P_b) order."""
        sigma = np.zeros((4, 4))
        sigma[:2, :2] = self.X
        sigma[2:, 2:] = self.P
        return sigma

    def symplectic_eigenvalues(self) -> tuple[float, float]:
        """Symplectic eigenvalues (ascending); their squares are the eigenvalues of X P."""
        mu_minus, mu_plus = _product_eigenvalues(self.X, self.P)
        return math.sqrt(mu_minus), math.sqrt(mu_plus)

    def purity_product(self) -> float:
        """det(X) det(P); equals 1/16 for pure states."""
        return float(np.linalg.det(self.X) * np.linalg.det(self.P))

    def partial_transpose(self) -> tuple[np.ndarray, np.ndarray]:
        """Blocks (X, P~) after P_b -> -P_b."""
        p_tilde = np.array(self.P)
        p_tilde[0, 1] = p_tilde[1, 0] = -self.P[0, 1]
        return np.array(self.X), p_tilde


def _rotate(var_minus, var_plus, theta):
    # lower mode along (cos t, -sin t), upper along (sin t, cos t)
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [[c * c * var_minus + s * s * var_plus, c * s * (var_plus - var_minus)],
         [c * s * (var_plus - var_minus), s * s * var_minus + c * c * var_plus]]
    )


def thermal_covariance(pair: OscillatorPair, temp: Temperature,
                       modes: NormalModes | None = None) -> CovarianceMatrix:
    """Covariance of the Gibbs state exp(-beta H)/Z.

    Each normal mode is a thermal vacuum whose variances carry the factor
    2n + 1; the blocks are then rotated back to the bare quadratures.
    """
    if modes is None:
        modes = normal_modes(pair)
    wm, wp = modes.omega_minus, modes.omega_plus
    if not temp.is_ground and temp.beta * wm < MIN_BETA_OMEGA:
        raise DomainError(
            f"beta * omega_minus = {temp.beta * wm!r} is below the validated range",
            "beta * omega_minus >= 1e-8",
        )
    f_minus = 2.0 * thermal_occupation(temp.beta, wm) + 1.0
    f_plus = 2.0 * thermal_occupation(temp.beta, wp) + 1.0
    X = _rotate(f_minus / (2.0 * wm), f_plus / (2.0 * wp), modes.theta)
    P = _rotate(f_minus * wm / 2.0, f_plus * wp / 2.0, modes.theta)
    return CovarianceMatrix(X, P, omega=pair.omega, Omega=pair.Omega)


def ground_covariance(pair: OscillatorPair, modes: NormalModes | None = None) -> CovarianceMatrix:
    """Covariance of the ground state (joint vacuum of the normal modes)."""
    return thermal_covariance(pair, Temperature(), modes)


@dataclass(frozen=True)
class NegativityResult:
    nu_tilde_minus: float
    log_negativity: float

    @classmethod
    def from_nu(cls, nu_tilde_minus):
        if 2.0 * nu_tilde_minus >= 1.0 - BOUNDARY_TOL:
            return cls(nu_tilde_minus, 0.0)
        return cls(nu_tilde_minus, -math.log2(2.0 * nu_tilde_minus))

    @property
    def entangled(self) -> bool:
        return self.log_negativity > 0.0


def partial_transpose_moments(cov: CovarianceMatrix) -> tuple[float, float]:
    """Trace and determinant of M = X P~."""
    X, p_tilde = cov.partial_transpose()
    m = X @ p_tilde
    return float(np.trace(m)), float(np.linalg.det(X) * np.linalg.det(p_tilde))


def log_negativity(cov: CovarianceMatrix) -> NegativityResult:
    """Logarithmic negativity from the partially transposed covariance.

    The squared symplectic eigenvalues of the transposed state are the
    eigenvalues of the 2x2 matrix M = X P~.
    """
    X, p_tilde = cov.partial_transpose()
    mu_minus = float(_product_eigenvalues(X, p_tilde)[0])
    if not mu_minus > 0:
        raise IllConditionedCovarianceError(f"smaller eigenvalue of M is {mu_minus!r}")
    return NegativityResult.from_nu(math.sqrt(mu_minus))


def ground_trace_closed_form(pair: OscillatorPair, modes: NormalModes | None = None) -> float:
    """tr(X P~) of the ground state written with the dressed frequencies and angle."""
    if modes is None:
        modes = normal_modes(pair)
    wm, wp = modes.omega_minus, modes.omega_plus
    cos2 = math.cos(2.0 * modes.theta)
    return (wp * wp + wm * wm - cos2 * cos2 * (wp - wm) ** 2) / (4.0 * wp * wm)


def log_negativity_resonant(pair: OscillatorPair, temp: Temperature | None = None,
                            modes: NormalModes | None = None) -> NegativityResult:
    """Closed-form negativity for omega = Omega.

    At resonance X and P~ commute and the transposed symplectic eigenvalue is

        nu~_- = (1/2) sqrt((2n_- + 1)(2n_+ + 1) w_- / w_+),

    which reduces to (1/2) sqrt(w_-/w_+) in the ground state.
    """
    if temp is None:
        temp = Temperature()
    if not pair.is_resonant():
        raise DomainError(
            "resonant closed form requires omega == Omega; use log_negativity(thermal_covariance(...))",
            "omega == Omega",
        )
    if modes is None:
        modes = normal_modes(pair)
    wm, wp = modes.omega_minus, modes.omega_plus
    f_minus = 2.0 * thermal_occupation(temp.beta, wm) + 1.0
    f_plus = 2.0 * thermal_occupation(temp.beta, wp) + 1.0
    return NegativityResult.from_nu(0.5 * math.sqrt(f_minus * f_plus * wm / wp))
