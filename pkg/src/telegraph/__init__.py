"""Telegraph process driven by a Poisson process with intensity ``theta * tanh(theta * t)``."""
from .errors import DegenerateModelError, DiagnosticError, DomainError
from .estimate import EstimateResult, asymptotic_variance, estimate_replicated, estimate_single
from .intensity import ModelParams, EventTimes, make_rng
from .law import atom_mass, cdf, density, velocity_covariance, velocity_transition
from .process import SwitchTrajectory, position_at, simulate_trajectory, switch_count, velocity_at

__version__ = "0.1.0"

__all__ = [
    "DegenerateModelError",
    "DiagnosticError",
    "DomainError",
    "EstimateResult",
    "EventTimes",
    "ModelParams",
    "SwitchTrajectory",
    "asymptotic_variance",
    "atom_mass",
    "cdf",
    "density",
    "estimate_replicated",
    "estimate_single",
    "make_rng",
    "position_at",
    "simulate_trajectory",
    "switch_count",
    "velocity_at",
    "velocity_covariance",
    "velocity_transition",
]
