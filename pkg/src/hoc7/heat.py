"""Time stepping of the semi-discrete heat system ``psi' = -(nu/(24 h^2)) D psi``.

With ``rho = nu * tau / (24 h^2)`` one step of the seventh-order formula is
``L1 psi_{j+1} = L2 psi_j`` where ``L1 = den(rho D)`` and ``L2 = num(rho D)``
are the denominator and numerator of the stability function, scaled so that
``L1`` has constant term 453600.  Crank-Nicolson is the same construction
with ``den = 1 + s/2`` and ``num = 1 - s/2``.
"""

from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .banded import BandedLU, BandedMatrix, polyval_banded
from .errors import DomainError, NumericalFailure
from .scheme import derive_stability_function, psi_eval
from .spatial import eigenvalues_D

L1_CONSTANT = 453600


@dataclass(frozen=True)
class HeatState:
    psi: np.ndarray
    t: float

    def __post_init__(self):
        psi = np.array(self.psi, dtype=float)
        psi.flags.writeable = False
        object.__setattr__(self, "psi", psi)


@dataclass(frozen=True, eq=False)
class Propagator:
    """Factored one-step operator ``psi -> L1^{-1} L2 psi``."""

    scheme: str
    rho: float
    tau: float
    N: int
    L1: BandedMatrix
    L2: BandedMatrix
    lu: BandedLU
    num_coeffs: tuple
    den_coeffs: tuple

    def amplification_of(self, s):
        s = np.asarray(s, dtype=float)
        if self.scheme == "cn":
            return (1 - s / 2) / (1 + s / 2)
        return psi_eval(s)


def _rho(D, nu_d, grid):
    if nu_d <= 0:
        raise DomainError(f"viscosity must be positive, got {nu_d}")
    if D.n != grid.N + 1:
        raise DomainError(f"D has size {D.n} but grid has {grid.N + 1} points")
    return nu_d * grid.tau / (24 * grid.h**2)


def _assemble(scheme, D, rho, tau, num, den):
    rhoD = D.scaled(rho)
    L1 = polyval_banded(den, rhoD)
    L2 = polyval_banded(num, rhoD)
    lu = BandedLU(L1)
    return Propagator(scheme, rho, tau, D.n - 1, L1, L2, lu, tuple(num), tuple(den))


def build_propagator(D, nu_d, grid, *, rho=None):
    """Seventh-order propagator; ``rho`` overrides ``nu tau / (24 h^2)`` when given."""
    if rho is None:
        rho = _rho(D, nu_d, grid)
    num, den = derive_stability_function().scaled(L1_CONSTANT)
    return _assemble("hoc7", D, rho, grid.tau, [float(c) for c in num], [float(c) for c in den])


def cn_build(D, nu_d, grid, *, rho=None):
    """Crank-Nicolson baseline on the same ``D`` and ``rho``."""
    if rho is None:
        rho = _rho(D, nu_d, grid)
    return _assemble("cn", D, rho, grid.tau, [1.0, -0.5], [1.0, 0.5])


def step(p, state):
    if state.psi.shape[0] != p.N + 1:
        raise DomainError(f"state has {state.psi.shape[0]} points, propagator expects {p.N + 1}")
    psi = p.lu.solve(p.L2.matvec(state.psi))
    if not np.all(np.isfinite(psi)):
        bad = int(np.flatnonzero(~np.isfinite(psi))[0])
        raise NumericalFailure(
            f"non-finite psi at index {bad} after step to t={state.t + p.tau:.17g} "
            f"(scheme={p.scheme}, rho={p.rho:.6g})")
    return HeatState(psi, state.t + p.tau)


cn_step = step


def trajectory(p, state, steps) -> Iterator[HeatState]:
    """Yield the states after 1, 2, ..., ``steps`` steps."""
    for _ in range(steps):
        state = step(p, state)
        yield state


def evolve(p, state, steps):
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    for state in trajectory(p, state, steps):
        pass
    return state


def evolve_to(p, state, times, t_tol=1e-12):
    """Advance through sorted report ``times``; returns ``{t: HeatState}``.

    Every time must be reachable in whole steps from ``state.t``.
    """
    out = {}
    cur, done = state, 0
    for t in times:
        k = round((t - state.t) / p.tau)
        if k < done or abs(state.t + k * p.tau - t) > t_tol * max(1.0, abs(t)):
            raise DomainError(f"report time {t} is not a whole number of steps of {p.tau}")
        cur = evolve(p, cur, k - done)
        done = k
        out[t] = replace(cur, t=t)
    return out


def amplification(p, l):
    """Growth factor of eigenmode ``l``: ``psi(rho * lambda_l)``."""
    if not 0 <= l <= p.N:
        raise DomainError(f"mode index must be in 0..{p.N}, got {l}")
    lam = eigenvalues_D(p.N)[l]
    return float(p.amplification_of(p.rho * lam))


def spectral_radius(p):
    return float(np.max(np.abs(p.amplification_of(p.rho * eigenvalues_D(p.N)))))
