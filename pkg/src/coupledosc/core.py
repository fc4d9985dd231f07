"""
Normal-mode decomposition of two position-coupled harmonic oscillators.

The Hamiltonian is

    H = omega a^dag a + Omega b^dag b + (g/2)(a + a^dag)(b + b^dag)

with hbar = 1.  All frequencies are multiples of an arbitrary reference
frequency; nothing here depends on the absolute scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Closest approach to the instability threshold that is accepted.
MAX_COUPLING_RATIO = 1.0 - 1e-9


class DomainError(ValueError):
    """Input outside the physical or validated domain.

    ``invariant`` names the violated condition so front ends can report it.
    """

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant or message


class InconsistentSpectrumError(DomainError):
    """Four frequencies that no coupled pair can produce."""


def _check_frequency(name, value):
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}", f"{name} finite")
    if value <= 0:
        raise DomainError(f"{name} must be positive, got {value!r}", f"{name} > 0")


def critical_coupling(omega: float, Omega: float) -> float:
    """Coupling at which the lower normal mode softens to zero: sqrt(omega * Omega)."""
    _check_frequency("omega", omega)
    _check_frequency("Omega", Omega)
    return math.sqrt(omega * Omega)


@dataclass(frozen=True)
class OscillatorPair:
    """Bare frequencies and coupling of the two oscillators.

    Labels are normalised so that ``omega <= Omega``.  When the caller passes
    them the other way round they are swapped and ``swapped`` is set; the
    original ordering is available through :attr:`caller_frequencies`.
    """

    omega: float
    Omega: float
    g: float = 0.0
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self):
        omega, Omega, g = float(self.omega), float(self.Omega), float(self.g)
        _check_frequency("omega", omega)
        _check_frequency("Omega", Omega)
        if not math.isfinite(g):
            raise DomainError(f"g must be finite, got {g!r}", "g finite")
        if g < 0:
            raise DomainError(f"g must be non-negative, got {g!r}", "g >= 0")
        swapped = self.swapped
        if omega > Omega:
            omega, Omega = Omega, omega
            swapped = not swapped
        g_c = math.sqrt(omega * Omega)
        if g >= MAX_COUPLING_RATIO * g_c:
            raise DomainError(
                f"g = {g!r} is at or beyond the stability limit "
                f"(g_c = {g_c!r}, accepted up to g/g_c = {MAX_COUPLING_RATIO!r})",
                "g < g_c",
            )
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "Omega", Omega)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "swapped", swapped)

    @classmethod
    def from_ratios(cls, omega_ratio, g_ratio, Omega=1.0):
        """Build a pair from ``omega/Omega`` and ``g/g_c``."""
        omega = omega_ratio * Omega
        return cls(omega, Omega, g_ratio * math.sqrt(omega * Omega))

    @property
    def g_c(self) -> float:
        return math.sqrt(self.omega * self.Omega)

    @property
    def coupling_ratio(self) -> float:
        return self.g / self.g_c

    @property
    def detuning_ratio(self) -> float:
        """``omega/Omega`` in (0, 1]."""
        return self.omega / self.Omega

    def is_resonant(self, rtol=1e-12) -> bool:
        return abs(self.Omega - self.omega) <= rtol * self.Omega

    @property
    def caller_frequencies(self) -> tuple[float, float]:
        """Bare frequencies in the order the caller supplied them."""
        if self.swapped:
            return self.Omega, self.omega
        return self.omega, self.Omega


@dataclass(frozen=True)
class NormalModes:
    """Dressed frequencies, mixing angle and single-mode squeezing parameters."""

    omega_minus: float
    omega_plus: float
    theta: float
    xi_minus: float
    xi_plus: float


def _dressed_frequencies(omega, Omega, g):
    half_split = math.hypot(0.5 * (omega * omega - Omega * Omega), g * math.sqrt(omega * Omega))
    wp2 = 0.5 * (omega * omega + Omega * Omega) + half_split
    # product of the two squared frequencies is omega*Omega*(g_c^2 - g^2);
    # dividing avoids the cancellation in (sum - split) near g_c
    g_c = math.sqrt(omega * Omega)
    wm2 = omega * Omega * (g_c - g) * (g_c + g) / wp2
    # coupling only pushes the levels apart; keep rounding from crossing the bare values
    lo, hi = min(omega, Omega), max(omega, Omega)
    return min(math.sqrt(wm2), lo), max(math.sqrt(wp2), hi)


def normal_modes(pair: OscillatorPair) -> NormalModes:
    """Diagonalise the coupled pair into its two normal modes.

    The mixing angle uses the two-argument arctangent, so it lies in
    [0, pi/4] and equals pi/4 exactly at resonance for g > 0.  For g = 0 it
    is 0, making the Bogoliubov map the identity.
    """
    omega, Omega, g = pair.omega, pair.Omega, pair.g
    if g == 0.0:
        # exact, so that every downstream quantity hits its uncoupled value
        return NormalModes(omega, Omega, 0.0, 0.0, 0.0)
    w_minus, w_plus = _dressed_frequencies(omega, Omega, g)
    theta = 0.5 * math.atan2(2.0 * g * math.sqrt(omega * Omega), Omega * Omega - omega * omega)
    return NormalModes(
        omega_minus=w_minus,
        omega_plus=w_plus,
        theta=theta,
        xi_minus=-0.5 * math.log(w_minus / omega),
        xi_plus=-0.5 * math.log(w_plus / Omega),
    )


def squeezing_from_frequencies(omega, Omega, omega_minus, omega_plus):
    """Squeezing parameters read off from measured bare and dressed frequencies.

    Returns ``(xi_minus, xi_plus)``.  Raises :class:`DomainError` when the
    dressed frequencies do not bracket the bare ones, since level repulsion
    always pushes them apart.
    """
    for name, value in (("omega", omega), ("Omega", Omega),
                        ("omega_minus", omega_minus), ("omega_plus", omega_plus)):
        _check_frequency(name, value)
    if omega > Omega:
        omega, Omega = Omega, omega
    if omega_minus > omega or omega_plus < Omega:
        raise DomainError(
            "unphysical spectroscopy input: need omega_minus <= omega <= Omega <= omega_plus",
            "omega_minus <= omega and omega_plus >= Omega",
        )
    return -0.5 * math.log(omega_minus / omega), -0.5 * math.log(omega_plus / Omega)


def coupling_from_frequencies(omega, Omega, omega_minus, omega_plus, rtol=1e-12):
    """Coupling strength implied by the bare and dressed frequencies.

    Uses g^2 = ((w+^2 - w-^2)^2 - (Omega^2 - omega^2)^2) / (4 omega Omega).
    A radicand that is negative by more than ``rtol`` of its scale raises
    :class:`InconsistentSpectrumError`; smaller negatives are rounding and
    give g = 0.
    """
    for name, value in (("omega", omega), ("Omega", Omega),
                        ("omega_minus", omega_minus), ("omega_plus", omega_plus)):
        _check_frequency(name, value)
    split = (omega_plus - omega_minus) * (omega_plus + omega_minus)
    bare = abs((Omega - omega) * (Omega + omega))
    radicand = (split - bare) * (split + bare) / (4.0 * omega * Omega)
    if radicand < 0:
        # rounding in the squared frequencies is relative to omega_plus^2, not to the splittings
        scale = (split + bare + omega_plus * omega_plus) ** 2 / (4.0 * omega * Omega)
        if radicand < -rtol * scale:
            raise InconsistentSpectrumError(
                "the four frequencies cannot come from two linearly coupled oscillators "
                f"(g^2 would be {radicand!r})",
                "(w+^2 - w-^2)^2 >= (Omega^2 - omega^2)^2",
            )
        return 0.0
    return math.sqrt(radicand)


# Commutators [o_i, o_j] of the operator column (a, a^dag, b, b^dag).
COMMUTATOR_FORM = np.array(
    [[0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0],
     [0.0, 0.0, 0.0, 1.0],
     [0.0, 0.0, -1.0, 0.0]]
)


@dataclass(frozen=True)
class SymplecticTransform:
    """Real 4x4 map from (a, a^dag, b, b^dag) to (c, c^dag, d, d^dag).

    Row ``i`` holds the expansion coefficients of the i-th dressed operator.
    """

    coeffs: np.ndarray

    def commutator_matrix(self) -> np.ndarray:
        """[o_i, o_j] for the dressed column; equals COMMUTATOR_FORM when bosonic."""
        return self.coeffs @ COMMUTATOR_FORM @ self.coeffs.T

    def commutator_defect(self) -> float:
        return float(np.max(np.abs(self.commutator_matrix() - COMMUTATOR_FORM)))

    @property
    def c(self) -> np.ndarray:
        return self.coeffs[0]

    @property
    def d(self) -> np.ndarray:
        return self.coeffs[2]


def _project(weight, mu, nu):
    # dressed mode of frequency mu expanded on a bare mode of frequency nu
    norm = 2.0 * math.sqrt(mu * nu)
    return weight * (mu + nu) / norm, weight * (mu - nu) / norm


def bogoliubov(pair: OscillatorPair, modes: NormalModes | None = None) -> SymplecticTransform:
    """Bogoliubov coefficients of the dressed annihilators c (lower) and d (upper).

    The position eigenvectors are (cos t, -sin t) for the lower mode and
    (sin t, cos t) for the upper one, so

        c = cos t [(w- + w) a + (w- - w) a^dag] / (2 sqrt(w w-))
            - sin t [(w- + W) b + (w- - W) b^dag] / (2 sqrt(W w-))

    and analogously for d.  With these signs <GS|c^dag c|GS> = 0.
    """
    if modes is None:
        modes = normal_modes(pair)
    cos_t, sin_t = math.cos(modes.theta), math.sin(modes.theta)
    wm, wp = modes.omega_minus, modes.omega_plus
    ca, ca_dag = _project(cos_t, wm, pair.omega)
    cb, cb_dag = _project(-sin_t, wm, pair.Omega)
    da, da_dag = _project(sin_t, wp, pair.omega)
    db, db_dag = _project(cos_t, wp, pair.Omega)
    coeffs = np.array(
        [[ca, ca_dag, cb, cb_dag],
         [ca_dag, ca, cb_dag, cb],
         [da, da_dag, db, db_dag],
         [da_dag, da, db_dag, db]]
    )
    coeffs.setflags(write=False)
    return SymplecticTransform(coeffs)
