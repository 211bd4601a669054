"""Uniform grids and the fourth-order Neumann operator ``D``.

``-D / (12 h^2)`` approximates the second derivative with the stencil
``(-1, 16, -30, 16, -1) / (12 h^2)``; the first two and last two rows fold in
the even reflection ``psi_{-k} = psi_k`` that encodes ``psi_x = 0``.
"""

from dataclasses import dataclass

import numpy as np

from .banded import BandedMatrix
from .errors import DomainError

INTERIOR_STENCIL = (1.0, -16.0, 30.0, -16.0, 1.0)
MIN_INTERVALS = 4


@dataclass(frozen=True)
class GridSpec:
    """Space-time grid: ``N`` cells on ``[a0, a1]`` and ``M`` steps on ``[t0, T]``."""

    a0: float
    a1: float
    N: int
    t0: float
    T: float
    M: int

    def __post_init__(self):
        if not self.a1 > self.a0:
            raise DomainError(f"need a1 > a0, got [{self.a0}, {self.a1}]")
        if self.T < self.t0:
            raise DomainError(f"need T >= t0, got t0={self.t0}, T={self.T}")
        if int(self.N) != self.N or self.N < MIN_INTERVALS:
            raise DomainError(f"N must be an integer >= {MIN_INTERVALS}, got {self.N}")
        if int(self.M) != self.M or self.M < 1:
            raise DomainError(f"M must be a positive integer, got {self.M}")

    @property
    def h(self):
        return (self.a1 - self.a0) / self.N

    @property
    def tau(self):
        return (self.T - self.t0) / self.M

    @property
    def x(self):
        return self.a0 + self.h * np.arange(self.N + 1)

    @classmethod
    def from_steps(cls, a0, a1, h, t0, T, tau, rtol=1e-9):
        """Build a grid from step sizes, rejecting sizes that do not divide the spans."""
        N = round((a1 - a0) / h)
        M = round((T - t0) / tau)
        if abs(N * h - (a1 - a0)) > rtol * (a1 - a0):
            raise DomainError(f"h={h} does not divide [{a0}, {a1}]")
        if abs(M * tau - (T - t0)) > rtol * max(T - t0, tau):
            raise DomainError(f"tau={tau} does not divide [{t0}, {T}]")
        return cls(a0, a1, N, t0, T, max(M, 1))


def assemble_D(N):
    """The ``(N+1) x (N+1)`` pentadiagonal operator with Neumann boundary rows."""
    if int(N) != N or N < MIN_INTERVALS:
        raise DomainError(f"N must be an integer >= {MIN_INTERVALS}, got {N}")
    n = int(N) + 1
    bands = np.tile(INTERIOR_STENCIL, (n, 1))
    bands[0] = (0, 0, 30, -32, 2)
    bands[1] = (0, -16, 31, -16, 1)
    bands[-2] = (1, -16, 31, -16, 0)
    bands[-1] = (2, -32, 30, 0, 0)
    return BandedMatrix(bands, 2, 2)


def eigenvalues_D(N):
    """``30 + 2 cos(2 l pi / N) - 32 cos(l pi / N)`` for ``l = 0..N``."""
    if int(N) != N or N < MIN_INTERVALS:
        raise DomainError(f"N must be an integer >= {MIN_INTERVALS}, got {N}")
    theta = np.pi * np.arange(int(N) + 1) / N
    return 30 + 2 * np.cos(2 * theta) - 32 * np.cos(theta)


def trapezoid_weights(N):
    """Left null vector of ``D``: ``(1/2, 1, ..., 1, 1/2)``."""
    w = np.ones(int(N) + 1)
    w[0] = w[-1] = 0.5
    return w
