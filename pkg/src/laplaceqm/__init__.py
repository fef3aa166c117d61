"""Laplace contour-integral solver for the time-independent Schrodinger equation.

Bound states come from a single residue at z = -lambda; continuum states are
evaluated along three independent contour routes (real segment, circle with
tracked phases, series around infinity) that cross-validate one another.
"""

from .core_laplace import (
    BranchPointEvaluation,
    CanonicalODE,
    CutLayout,
    DegenerateLambda,
    Exponents,
    PhaseConvention,
    Polynomial,
    Regime,
    build_pq,
    default_phase_convention,
    exponents,
    integrand,
)
from .potential_catalog import (
    BOUND_KINDS,
    CONTINUUM_KINDS,
    DomainError,
    InvalidQuantumNumbers,
    Kind,
    NotBoundProblem,
    ProblemSpec,
    QuantumNumbers,
    RegimeMismatch,
    assemble_wavefunction,
    bound_energy,
    canonicalize,
    coordinate_map,
    n_start,
    quantization_check,
    residue_lattice_energy,
)
from .contour_eval import (
    ContourConfig,
    Method,
    MethodRegimeMismatch,
    NonIntegerOrder,
    PrecisionLoss,
    WavefunctionGrid,
    bound_phi_residue,
    continuum_phi_circle,
    continuum_phi_real_integral,
    continuum_phi_series,
    morse_continuum_phi,
    phi_values,
    sample_wavefunction,
)
from .validation import (
    ComparisonReport,
    cross_method_report,
    ode_residual_sweep,
    spectrum_table,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_KINDS",
    "BranchPointEvaluation",
    "CONTINUUM_KINDS",
    "CanonicalODE",
    "ComparisonReport",
    "ContourConfig",
    "CutLayout",
    "DegenerateLambda",
    "DomainError",
    "Exponents",
    "InvalidQuantumNumbers",
    "Kind",
    "Method",
    "MethodRegimeMismatch",
    "NonIntegerOrder",
    "NotBoundProblem",
    "PhaseConvention",
    "Polynomial",
    "PrecisionLoss",
    "ProblemSpec",
    "QuantumNumbers",
    "Regime",
    "RegimeMismatch",
    "WavefunctionGrid",
    "assemble_wavefunction",
    "bound_energy",
    "bound_phi_residue",
    "build_pq",
    "canonicalize",
    "continuum_phi_circle",
    "continuum_phi_real_integral",
    "continuum_phi_series",
    "coordinate_map",
    "cross_method_report",
    "default_phase_convention",
    "exponents",
    "integrand",
    "morse_continuum_phi",
    "n_start",
    "ode_residual_sweep",
    "phi_values",
    "quantization_check",
    "residue_lattice_energy",
    "sample_wavefunction",
    "spectrum_table",
    "__version__",
]
