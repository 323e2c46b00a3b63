"""Entanglement entropy and logarithmic negativity of gaussian bosonic states.

Exact symplectic spectra from contraction matrices, weak-coupling
singular-value estimators, closed-form area-law asymptotes for square-lattice
and fully connected models, and a scenario harness that sweeps the coupling
ratio and writes comparison tables.
"""
from .config import get_log_base, set_log_base
from .closedform import (
    GeometryForm,
    LinkStrengths,
    LmgCorrelations,
    asymptotic_entropy,
    asymptotic_negativity,
    contact_template,
    entropy_from_singulars,
    generic_form,
    geometry_form_for,
    geometry_singulars,
    lmg_f1,
    lmg_pt_eigenvalue,
    lmg_reduced_eigenvalue,
    lmg_reduced_sigma_pair,
    lmg_weak_pt,
    lmg_weak_reduced,
    lmg_weak_sigma,
    negativity_from_singulars,
    pair_negativity,
    toeplitz_fourier_singulars,
)
from .errors import (
    ConfigError,
    CouplingTooStrong,
    GaussentError,
    InvalidSeparation,
    MemoryCapExceeded,
    NoCriticalPoint,
    NonPhysical,
    NotWeaklyCorrelated,
    NumericalFailure,
    OutOfBounds,
    OverlappingRegions,
    SymmetryViolation,
    UnequalLocalEnergies,
    Unstable,
    UnsupportedNorm,
    WrongKind,
)
from .hamiltonian import (
    BogoliubovTransform,
    CriticalPoint,
    QuadraticHamiltonian,
    critical_lambda,
    fully_connected_deltas,
    perturbative_bogoliubov_v,
    perturbative_contractions,
    solve_ground_state,
    thermal_contractions,
)
from .lattice import (
    Lattice2D,
    Region,
    block_pair,
    boundary_measure_1,
    boundary_measure_2,
    boundary_sqrt_degree,
    checkerboard,
    complement,
    lattice_deltas,
    line_pair,
    rect_block,
    region_from_json,
    single_site,
    tilted_block,
)
from .symplectic import (
    ContractionMatrix,
    EntropyValue,
    NegativityValue,
    SpectrumKind,
    SymplecticSpectrum,
    apply_local_rotation,
    entropy,
    log_negativity,
    mode_entropy,
    mode_negativity,
    partial_transpose,
    pure_bipartition_log_negativity,
    restricted,
    symplectic_eigenvalues,
)
from .weakcoupling import (
    Counterterms,
    LocalMode,
    WeakCouplingEstimate,
    approx_entropy,
    approx_log_negativity,
    approx_pt_spectrum,
    approx_reduced_spectrum,
    counterterms,
    cross_singular_values,
    local_spectrum,
    local_symplectic_eigenvalue,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
