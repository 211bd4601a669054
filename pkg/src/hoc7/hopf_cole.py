"""Hopf-Cole transformation between Burgers data ``w`` and heat data ``psi``.

``w = -nu psi_x / psi``.  Forward, ``log psi0(x) = -(1/nu) int_{a0}^x w0``;
the maximum over the grid is subtracted before exponentiating, which is
harmless because ``w`` does not change under ``psi -> c psi``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TransformError
from .heat import HeatState

GAUSS_POINTS = 5


def _gauss_nodes(npts):
    return np.polynomial.legendre.leggauss(npts)


def cell_integrals(w0, x, npts=GAUSS_POINTS):
    """``int_{x_i}^{x_{i+1}} w0`` for each cell by Gauss-Legendre quadrature."""
    g, wg = _gauss_nodes(npts)
    mid = 0.5 * (x[1:] + x[:-1])
    half = 0.5 * (x[1:] - x[:-1])
    pts = mid[:, None] + half[:, None] * g[None, :]
    vals = np.asarray(w0(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise DomainError("initial data w0 produced a non-finite sample")
    return half * (vals @ wg)


def cumulative_integral(w0, x, npts=GAUSS_POINTS):
    """``I(x_i) = int_{x_0}^{x_i} w0`` with ``I(x_0) = 0``."""
    return np.concatenate([[0.0], np.cumsum(cell_integrals(w0, x, npts))])


@dataclass(frozen=True)
class TransformContext:
    nu_d: float
    grid: object
    log_psi0: np.ndarray
    shift: float


def transform_context(w0, nu_d, grid):
    """Log of the initial heat data and the normalisation shift applied to it."""
    if nu_d <= 0:
        raise DomainError(f"viscosity must be positive, got {nu_d}")
    log_psi = -cumulative_integral(w0, grid.x) / nu_d
    shift = float(np.max(log_psi))
    return TransformContext(nu_d, grid, log_psi - shift, shift)


def forward_transform(w0, nu_d, grid):
    ctx = transform_context(w0, nu_d, grid)
    return HeatState(np.exp(ctx.log_psi0), grid.t0)


def inverse_transform(state, nu_d, grid):
    """Central-difference ratio ``-(nu / 2h) (psi_{i+1} - psi_{i-1}) / psi_i``.

    The reflections ``psi_{-1} = psi_1`` and ``psi_{N+1} = psi_{N-1}`` make
    both end values exactly zero.
    """
    psi = state.psi
    bad = np.flatnonzero(~(psi > 0))
    if bad.size:
        i = int(bad[0])
        raise TransformError(
            f"psi lost positivity at index {i} (x={grid.x[i]:.6g}, psi={psi[i]:.3e}, t={state.t:.6g})",
            i, float(psi[i]))
    w = np.zeros_like(psi)
    w[1:-1] = (-nu_d / (2 * grid.h)) * (psi[2:] - psi[:-2]) / psi[1:-1]
    return w


class Antiderivative:
    """Vectorised ``I(x) = int_{a0}^x w0`` for arbitrary points in ``[a0, a1]``.

    A cumulative table on ``cells`` uniform cells is built once; each query
    adds a 10-point Gauss-Legendre integral from the enclosing cell's left end.
    """

    def __init__(self, w0, a0, a1, cells=4096, npts=10):
        self.w0 = w0
        self.a0, self.a1 = float(a0), float(a1)
        self.edges = np.linspace(a0, a1, cells + 1)
        self.table = cumulative_integral(w0, self.edges, npts)
        self._g, self._wg = _gauss_nodes(npts)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        cell = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, len(self.edges) - 2)
        left = self.edges[cell]
        half = 0.5 * (x - left)
        pts = (left + half)[..., None] + half[..., None] * self._g
        return self.table[cell] + half * (np.asarray(self.w0(pts)) @ self._wg)
