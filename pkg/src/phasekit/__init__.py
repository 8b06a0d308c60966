"""Two-mode interferometric input states, their canonical phase
distributions, and phase-uncertainty measures."""

from .errors import DomainError, NumericError
from .su2 import SpinIndex, WignerColumn, basis_overlap, wigner_column, wigner_element
from .states import (
    AngularState,
    Basis,
    StateKind,
    make_state,
    min_eigenstates,
    to_basis,
    truncate_optimal,
)
from .phase_dist import (
    Period,
    PhaseDistribution,
    circular_moment,
    density,
    density_grid,
    distribution,
    holevo_variance,
    holevo_variance_mod_pi,
    optimal_density_closed,
    sample,
)
from .measures import (
    MeasureReport,
    confidence_interval,
    entropic_length,
    fisher_length,
    fisher_length_closed_j0,
    mean_phase,
    reciprocal_peak,
    report,
    sin_squared_expectation,
    standard_variance,
    sussman_length,
)
from .asymptotics import (
    AsymptoticProfile,
    bessel_j_quarter,
    gamma_fn,
    j0_bessel_density,
    j0_intermediate_density,
    optimal_asymptotic_density,
    profile,
    scaling_constants,
)

__version__ = "0.1.0"

__all__ = [
    "AngularState",
    "AsymptoticProfile",
    "Basis",
    "DomainError",
    "MeasureReport",
    "NumericError",
    "Period",
    "PhaseDistribution",
    "SpinIndex",
    "StateKind",
    "WignerColumn",
    "basis_overlap",
    "bessel_j_quarter",
    "circular_moment",
    "confidence_interval",
    "density",
    "density_grid",
    "distribution",
    "entropic_length",
    "fisher_length",
    "fisher_length_closed_j0",
    "gamma_fn",
    "holevo_variance",
    "holevo_variance_mod_pi",
    "j0_bessel_density",
    "j0_intermediate_density",
    "make_state",
    "mean_phase",
    "min_eigenstates",
    "optimal_asymptotic_density",
    "optimal_density_closed",
    "profile",
    "reciprocal_peak",
    "report",
    "sample",
    "scaling_constants",
    "sin_squared_expectation",
    "standard_variance",
    "sussman_length",
    "to_basis",
    "truncate_optimal",
    "wigner_column",
    "wigner_element",
]
