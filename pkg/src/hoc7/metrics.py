"""Discrete error norms and observed convergence orders."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ErrorReport:
    l2: float
    linf: float
    pointwise: tuple  # (x, numeric, exact, |diff|) per grid point
    reliable: bool = True


def error_norms(numeric, exact, h, x=None, reliable=True):
    """``L2 = sqrt(h * sum |e_j|^2)`` and ``Linf = max |e_j|`` over all grid points.

    The sum runs left to right in index order so results are bit-reproducible.
    """
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape:
        raise DomainError(f"length mismatch: {numeric.shape} vs {exact.shape}")
    diff = np.abs(exact - numeric)
    total = 0.0
    for d in diff.tolist():
        total += d * d
    if x is None:
        x = np.full(diff.shape, np.nan)
    pointwise = tuple(zip(np.asarray(x, dtype=float).tolist(), numeric.tolist(),
                          exact.tolist(), diff.tolist()))
    linf = float(diff.max()) if diff.size else 0.0
    return ErrorReport(math.sqrt(h * total), linf, pointwise, reliable)


def convergence_order(errors):
    """Observed orders ``log2(e_k / e_{k+1})`` for steps halved at each level.

    ``errors`` is a list of ``(step, error)`` pairs.  A pair with a zero or
    non-finite error yields ``None`` for that order.
    """
    errors = list(errors)
    if len(errors) < 2:
        raise DomainError("need at least two refinement levels")
    orders = []
    for (h0, e0), (h1, e1) in zip(errors, errors[1:]):
        if not math.isclose(h0, 2 * h1, rel_tol=1e-9):
            raise DomainError(f"steps must halve between levels, got {h0} -> {h1}")
        if e0 > 0 and e1 > 0 and math.isfinite(e0) and math.isfinite(e1):
            orders.append(math.log2(e0 / e1))
        else:
            orders.append(None)
    return orders
