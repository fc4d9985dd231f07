"""
Entanglement witnesses, log-negativity and frequency-estimation bounds for
two harmonic oscillators with position-position coupling, with a
truncated-Fock exact-diagonalisation oracle for cross-checking.
"""

from .core import (
    DomainError,
    InconsistentSpectrumError,
    NormalModes,
    OscillatorPair,
    SymplecticTransform,
    bogoliubov,
    coupling_from_frequencies,
    critical_coupling,
    normal_modes,
    squeezing_from_frequencies,
)
from .gaussian import (
    CovarianceMatrix,
    NegativityResult,
    Temperature,
    ground_covariance,
    log_negativity,
    log_negativity_resonant,
    thermal_covariance,
    thermal_occupation,
)
from .metrology import (
    ProbeSpec,
    SnrReport,
    dressed_frequency_derivative,
    snr_bound_interacting,
    snr_bound_squeezed_probe,
    standard_quantum_limit,
)
from .oracle import (
    ConvergenceError,
    FockConfig,
    OracleRefusedError,
    ground_state,
    oracle_duan,
    oracle_log_negativity,
    thermal_state,
)
from .sweep import Axis, SweepSpec, run_point, run_sweep
from .witness import (
    WitnessReport,
    duan_from_covariance,
    duan_ground,
    duan_thermal_resonant,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "ConvergenceError",
    "CovarianceMatrix",
    "DomainError",
    "FockConfig",
    "InconsistentSpectrumError",
    "NegativityResult",
    "NormalModes",
    "OracleRefusedError",
    "OscillatorPair",
    "ProbeSpec",
    "SnrReport",
    "SweepSpec",
    "SymplecticTransform",
    "Temperature",
    "WitnessReport",
    "bogoliubov",
    "coupling_from_frequencies",
    "critical_coupling",
    "dressed_frequency_derivative",
    "duan_from_covariance",
    "duan_ground",
    "duan_thermal_resonant",
    "ground_covariance",
    "ground_state",
    "log_negativity",
    "log_negativity_resonant",
    "normal_modes",
    "oracle_duan",
    "oracle_log_negativity",
    "run_point",
    "run_sweep",
    "snr_bound_interacting",
    "snr_bound_squeezed_probe",
    "squeezing_from_frequencies",
    "standard_quantum_limit",
    "thermal_covariance",
    "thermal_occupation",
    "thermal_state",
]
