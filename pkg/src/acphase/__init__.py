"""Verification library for relativistic Aharonov-Casher phases.

Exact Gaussian-rational matrix algebra proves the Dirac and Kemmer operator
identities; adaptive quadrature and finite-difference residuals validate that
phase-modified free solutions solve the interacting wave equations, with loop
phases mu lambda s at spin 1/2 and 2 mu lambda s at spin 1.
"""

from .exact import (
    ExactMatrix,
    GaussianRational,
    anticommutator,
    bch_conjugate,
    char_poly,
    commutator,
    mat_mul,
    to_numeric,
)
from .dirac import (
    DiracAlgebra,
    build_dirac,
    build_phase_operator,
    check_phase_commutation_spinhalf,
    dirac_pauli_residual,
    effective_potential_spinhalf,
    free_plane_wave_dirac,
    sigma_munu,
)
from .kemmer import (
    KemmerAlgebra,
    SpinOperators,
    build_betas,
    build_spin_operators,
    check_operator_identity_one,
    check_ring,
    check_xi_commutators,
    effective_potential_spinone,
    kemmer_plane_wave,
    kemmer_residual,
)
from .proca import (
    ProcaState,
    ProjectionOperators,
    build_projections,
    check_interaction_transport,
    check_spin_correspondence,
    component_layout,
    kemmer_to_proca,
)
from .fields import FieldConfig, LoopPath, field_tensor, gauss_check, line_charge_E, loop_integral
from .phase import (
    GridSpec,
    PhaseAnsatz,
    PhaseReport,
    measured_loop_phase,
    predicted_phase,
    spin_ratio_experiment,
    verify_ansatz_dirac,
    verify_ansatz_kemmer,
    verify_ansatz_proca,
)
from .report import RunReport, SCHEMA_TAG

__version__ = "0.1.0"
