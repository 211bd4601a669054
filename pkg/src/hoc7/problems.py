"""The six Burgers test problems and their published run parameters."""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .exact import two_mode_exact


@dataclass(frozen=True)
class ParamSet:
    """One published run: viscosity, steps and report times, with its source."""

    nu_d: float
    h: float
    tau: float
    report_times: tuple
    citation: str

    @property
    def T(self):
        return self.report_times[-1]


@dataclass(frozen=True)
class Problem:
    """A Burgers initial-boundary value problem with zero Dirichlet data on ``w``.

    ``w0(x, nu)`` is the initial data (some problems depend on ``nu``);
    ``w0_integral(x, nu)``, when present, is the closed form of
    ``int_{a0}^x w0``.  ``exact`` names the reference solution: ``"fourier"``,
    ``"shock"`` or ``"two_mode"``.
    """

    id: str
    domain: tuple
    t_init: float
    w0: Callable
    exact: str
    default_params: tuple
    inconsistent_at: tuple = ()
    w0_integral: Optional[Callable] = field(default=None)

    def initial(self, nu_d):
        return lambda x: self.w0(x, nu_d)

    def antiderivative(self, nu_d):
        if self.w0_integral is None:
            return None
        return lambda x: self.w0_integral(x, nu_d)


def _shock_w0(x, nu):
    # Exponent clipped: beyond 700 the value is already below 1e-300 of x.
    e = np.minimum((x * x - 0.25) / (2 * nu), 700.0)
    return x / (1 + np.exp(e))


def _two_mode_integral(x, nu):
    psi0 = 4 + np.cos(np.pi * x) + 2 * np.cos(2 * np.pi * x)
    return -nu * np.log(psi0 / 7)


_REGISTRY = {
    "ex1": Problem(
        "ex1", (0.0, 1.0), 0.0,
        lambda x, nu: np.sin(np.pi * x),
        "fourier",
        (
            ParamSet(2.0, 0.0125, 1e-4, (0.001, 0.01, 0.1), "Table 1"),
            ParamSet(0.2, 0.0125, 1e-4, (0.4, 0.6, 0.8, 1.0, 3.0), "Table 2"),
            ParamSet(0.01, 0.0125, 0.01, (5.0, 10.0, 15.0, 20.0), "Table 3"),
            ParamSet(0.001, 0.0125, 0.001, (10.0,), "Figure 4"),
        ),
        w0_integral=lambda x, nu: (1 - np.cos(np.pi * x)) / np.pi,
    ),
    "ex2": Problem(
        "ex2", (0.0, 1.0), 0.0,
        lambda x, nu: 4 * x * (1 - x),
        "fourier",
        (
            ParamSet(2.0, 0.0125, 1e-4, (0.001, 0.01, 0.1), "Table 4"),
            ParamSet(0.2, 0.0125, 1e-4, (0.4, 0.6, 0.8, 1.0, 3.0), "Table 5"),
            ParamSet(0.01, 0.0125, 0.01, (5.0, 10.0, 15.0, 20.0), "Table 6"),
            ParamSet(0.001, 0.0125, 0.001, (10.0,), "Figure 9"),
        ),
        w0_integral=lambda x, nu: 2 * x * x - 4 * x**3 / 3,
    ),
    "ex3": Problem(
        "ex3", (0.0, 1.2), 1.0,
        _shock_w0,
        "shock",
        (ParamSet(0.002, 0.0005, 0.01, (1.7, 3.0, 3.5), "Table 7"),),
    ),
    "ex4": Problem(
        "ex4", (0.0, 2.0), 0.0,
        lambda x, nu: two_mode_exact(x, 0.0, nu),
        "two_mode",
        # The caption gives nu, h and tau but not the report times.
        (ParamSet(0.001, 0.025, 0.01, (1.0, 2.0, 3.0), "Figure 13"),),
        w0_integral=_two_mode_integral,
    ),
    "ex5": Problem(
        "ex5", (0.0, 1.0), 0.0,
        lambda x, nu: np.sin(np.pi * x / 2),
        "fourier",
        (ParamSet(2.0, 0.0125, 0.01, (0.1,), "Figure 11"),),
        inconsistent_at=("right",),
        w0_integral=lambda x, nu: 2 * (1 - np.cos(np.pi * x / 2)) / np.pi,
    ),
    "ex6": Problem(
        "ex6", (0.0, 1.0), 0.0,
        lambda x, nu: np.cos(np.pi * x / 4),
        "fourier",
        (ParamSet(2.0, 0.0125, 0.01, (0.1,), "Figure 12"),),
        inconsistent_at=("left", "right"),
        w0_integral=lambda x, nu: 4 * np.sin(np.pi * x / 4) / np.pi,
    ),
}

PROBLEM_IDS = tuple(_REGISTRY)


def get_problem(problem_id):
    try:
        return _REGISTRY[problem_id]
    except KeyError:
        raise DomainError(
            f"unknown problem {problem_id!r}; expected one of {', '.join(PROBLEM_IDS)}") from None
