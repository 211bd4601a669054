"""Seventh-order time stepping for Burgers' equation via the Hopf-Cole transformation.

The heat equation ``psi_t = (nu/2) psi_xx`` is discretised with a
pentadiagonal fourth-order operator in space and a one-step rational
propagator of order seven in time; Burgers solutions are recovered through
``w = -nu psi_x / psi``.
"""

from .errors import (ConfigError, DomainError, Hoc7Error, NumericalFailure, QuadratureError,
                     SeriesUnreliable, TransformError)
from .exact import fourier_coefficients, fourier_eval, fourier_psi, shock_exact, two_mode_exact
from .heat import HeatState, Propagator, build_propagator, cn_build, cn_step, evolve, evolve_to, step
from .hopf_cole import forward_transform, inverse_transform
from .metrics import ErrorReport, convergence_order, error_norms
from .problems import PROBLEM_IDS, get_problem
from .scheme import derive_stability_function, hermite_coefficients, newton_cotes_weights, psi_eval
from .solver import RunConfig, RunReport, solve
from .spatial import GridSpec, assemble_D

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DomainError", "Hoc7Error", "NumericalFailure", "QuadratureError",
    "SeriesUnreliable", "TransformError",
    "fourier_coefficients", "fourier_eval", "fourier_psi", "shock_exact", "two_mode_exact",
    "HeatState", "Propagator", "build_propagator", "cn_build", "cn_step", "evolve", "evolve_to", "step",
    "forward_transform", "inverse_transform",
    "ErrorReport", "convergence_order", "error_norms",
    "PROBLEM_IDS", "get_problem",
    "derive_stability_function", "hermite_coefficients", "newton_cotes_weights", "psi_eval",
    "RunConfig", "RunReport", "solve",
    "GridSpec", "assemble_D",
]
