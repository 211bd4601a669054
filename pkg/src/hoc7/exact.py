"""Reference solutions: the Hopf-Cole Fourier series on (0, 1) and two closed forms.

On (0, 1) with ``w = 0`` at both ends,

    psi(x, t) = beta_0 + sum_l beta_l exp(-nu l^2 pi^2 t / 2) cos(l pi x)
    w(x, t)   = pi nu sum_l l beta_l exp(...) sin(l pi x) / psi(x, t)

with ``beta_l`` the cosine coefficients of ``psi0 = exp(-(1/nu) int_0^x w0)``.
For small ``nu`` the series for ``psi`` cancels catastrophically, so every
evaluation also estimates its own rounding error and refuses points where
that estimate is too large.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import DomainError, QuadratureError, SeriesUnreliable
from .hopf_cole import Antiderivative

TERM_TOL = 1e-15
L_MAX = 10000
QUAD_TOL = 1e-12
# Largest acceptable estimated relative rounding error of a series value.
SERIES_RTOL = 1e-8
DEN_FLOOR = 1e-300

_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class FourierSolution:
    """Cosine coefficients of the normalised initial heat data.

    ``betas[l-1]`` holds ``beta_l``.  ``complete`` records that the last
    computed coefficients had already decayed to quadrature noise, so the
    series may be truncated at ``l_max`` at any time, including ``t = 0``.
    """

    nu_d: float
    beta0: float
    betas: np.ndarray
    l_max: int
    term_tol: float
    complete: bool
    log_shift: float


@dataclass(frozen=True)
class SeriesEvaluation:
    w: np.ndarray
    psi: np.ndarray
    terms_used: int
    reliable: np.ndarray
    reason: str


def damping_terms(nu_d, t, term_tol=TERM_TOL, l_cap=L_MAX):
    """Smallest ``l`` with ``2 l exp(-nu l^2 pi^2 t / 2) < term_tol``, capped at ``l_cap``.

    ``2 beta_0`` bounds every ``|beta_l|``, so past this index each term is
    below ``term_tol * beta_0``.
    """
    if t <= 0:
        return l_cap
    for l in range(1, l_cap + 1):
        if 2 * l * np.exp(-nu_d * l * l * np.pi**2 * t / 2) < term_tol:
            return l
    return l_cap


def _gl_rule(g, a, b, ls, nodes, weights):
    half = 0.5 * (b - a)
    pts = (0.5 * (a + b))[:, None] + half[:, None] * nodes
    fw = g(pts) * weights * half[:, None]
    return np.einsum("pn,pnl->pl", fw, np.cos(np.pi * pts[:, :, None] * ls))


def _cosine_moments(g, ls, tol, npts=10, max_rounds=50, chunk_elems=4_000_000):
    """``int_0^1 g(x) cos(l pi x) dx`` for every ``l`` in ``ls`` by panel bisection.

    Starts from at least ``4 max(ls)`` uniform panels; a panel is accepted
    when its coarse and two-half estimates agree to ``tol`` times its width
    for all ``l`` simultaneously.
    """
    ls = np.asarray(ls, dtype=float)
    nodes, weights = np.polynomial.legendre.leggauss(npts)
    n0 = max(16, 4 * int(ls.max(initial=0)))
    edges = np.linspace(0.0, 1.0, n0 + 1)
    a, b = edges[:-1], edges[1:]
    total = np.zeros(ls.size)
    achieved = 0.0
    per_chunk = max(1, chunk_elems // (npts * max(ls.size, 1)))
    for _ in range(max_rounds):
        keep_a, keep_b = [], []
        for s in range(0, a.size, per_chunk):
            ca, cb = a[s:s + per_chunk], b[s:s + per_chunk]
            m = 0.5 * (ca + cb)
            coarse = _gl_rule(g, ca, cb, ls, nodes, weights)
            fine = _gl_rule(g, ca, m, ls, nodes, weights) + _gl_rule(g, m, cb, ls, nodes, weights)
            err = np.max(np.abs(fine - coarse), axis=1)
            ok = err <= tol * (cb - ca)
            total += fine[ok].sum(axis=0)
            achieved += err[ok].sum()
            keep_a.append(ca[~ok])
            keep_b.append(cb[~ok])
        a, b = np.concatenate(keep_a), np.concatenate(keep_b)
        if a.size == 0:
            return total
        mid = 0.5 * (a + b)
        a, b = np.concatenate([a, mid]), np.concatenate([mid, b])
    raise QuadratureError(
        f"adaptive quadrature did not reach tol={tol:g}; {a.size} panels unresolved",
        achieved)


def fourier_coefficients(w0, nu_d, l_max, tol=QUAD_TOL, *, antiderivative=None,
                         term_tol=TERM_TOL, block=64):
    """Fourier coefficients of ``psi0`` on (0, 1).

    Parameters
    ----------
    w0 : callable
        Initial Burgers data, vectorised over numpy arrays.
    nu_d : float
        Viscosity coefficient.
    l_max : int
        Highest coefficient index to compute.  Computation stops earlier once a
        whole block of coefficients is below ``10 * tol``.
    tol : float
        Absolute quadrature tolerance per coefficient.
    antiderivative : callable, optional
        Closed form of ``int_0^x w0``; a numerical one is built when omitted.

    Returns
    -------
    FourierSolution
    """
    if nu_d <= 0:
        raise DomainError(f"viscosity must be positive, got {nu_d}")
    if l_max < 1:
        raise DomainError(f"l_max must be >= 1, got {l_max}")
    I = antiderivative if antiderivative is not None else Antiderivative(w0, 0.0, 1.0)
    sample = np.linspace(0.0, 1.0, 4097)
    log_sample = -np.asarray(I(sample)) / nu_d
    if not np.all(np.isfinite(log_sample)):
        raise DomainError("initial data w0 produced a non-finite sample")
    shift = float(np.max(log_sample))

    def g(x):
        return np.exp(-np.asarray(I(x)) / nu_d - shift)

    beta0 = float(_cosine_moments(g, [0], tol)[0])
    betas = []
    complete = False
    for start in range(1, l_max + 1, block):
        ls = np.arange(start, min(start + block, l_max + 1))
        chunk = 2 * _cosine_moments(g, ls, tol / 2)
        betas.extend(chunk)
        if np.max(np.abs(chunk)) <= 10 * tol:
            complete = True
            break
    betas = np.array(betas)
    if np.any(np.abs(betas) > 2 * beta0 + 10 * tol):
        raise QuadratureError("coefficient bound |beta_l| <= 2 beta_0 violated", float(np.max(np.abs(betas))))
    return FourierSolution(nu_d, beta0, betas, len(betas), term_tol, complete, shift)


def fourier_series(sol, x, t):
    """Evaluate ``w`` and ``psi`` from the series with reliability information."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    need = damping_terms(sol.nu_d, t, sol.term_tol, L_MAX)
    if need <= sol.l_max:
        L, reason = need, ""
    elif sol.complete:
        L, reason = sol.l_max, ""
    else:
        L, reason = sol.l_max, "l_max"
    l = np.arange(1, L + 1)
    coef = sol.betas[:L] * np.exp(-sol.nu_d * l * l * np.pi**2 * t / 2)
    phase = np.pi * np.outer(x, l)
    psi = sol.beta0 + np.cos(phase) @ coef
    num = np.pi * sol.nu_d * (np.sin(phase) @ (l * coef))
    # sin(l pi) is not exactly zero in floating point
    num[(x == 0) | (x == 1)] = 0.0
    scale = sol.beta0 + np.sum(np.abs(coef))
    absden = np.abs(psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = num / psi
        rounding = _EPS * L * scale / absden
    reliable = (absden >= DEN_FLOOR) & (rounding <= SERIES_RTOL)
    if reason:
        reliable[:] = False
    elif not np.all(reliable):
        reason = "cancellation"
    return SeriesEvaluation(w, psi, L, reliable, reason)


def _checked(ev, x, t, values):
    if not np.all(ev.reliable):
        bad = np.atleast_1d(x)[~ev.reliable]
        raise SeriesUnreliable(
            f"series unreliable at t={t:g} for {bad.size} point(s), first x={bad[0]:.6g} "
            f"({ev.reason}, {ev.terms_used} terms)", ev.reason, ev.terms_used)
    return values[0] if np.ndim(x) == 0 else values


def fourier_eval(sol, x, t):
    """Series value of ``w(x, t)``; raises :class:`SeriesUnreliable` instead of returning noise."""
    ev = fourier_series(sol, x, t)
    return _checked(ev, x, t, ev.w)


def fourier_psi(sol, x, t):
    """Series value of the normalised heat solution ``psi(x, t)``."""
    ev = fourier_series(sol, x, t)
    return _checked(ev, x, t, ev.psi)


def shock_exact(x, t, nu_d):
    """Shock-like solution ``(x/t) / (1 + sqrt(t/t0) exp(x^2 / (2 nu t)))``, ``t0 = exp(1/(4 nu))``.

    Evaluated through the logistic function of the exponent, so neither
    ``t0`` nor the exponential is ever formed.
    """
    if np.any(np.asarray(t) < 1):
        raise DomainError("shock solution is defined for t >= 1")
    x = np.asarray(x, dtype=float)
    expo = 0.5 * (np.log(t) - 1 / (4 * nu_d)) + x * x / (2 * nu_d * t)
    out = (x / t) * expit(-expo)
    return out[()] if out.ndim == 0 else out


def two_mode_exact(x, t, nu_d, heat_consistent=False):
    """Two-mode closed-form solution on (0, 2).

    By default the decay exponents are ``pi^2 nu^2 t / 4`` and
    ``pi^2 nu^2 t``, exactly as published.  ``heat_consistent=True`` uses
    ``pi^2 nu t / 2`` and ``2 pi^2 nu t``, the rates that the heat equation
    ``psi_t = (nu/2) psi_xx`` actually imposes on these two cosine modes.
    """
    x = np.asarray(x, dtype=float)
    if heat_consistent:
        e1, e2 = np.exp(-np.pi**2 * nu_d * t / 2), np.exp(-2 * np.pi**2 * nu_d * t)
    else:
        e1, e2 = np.exp(-np.pi**2 * nu_d**2 * t / 4), np.exp(-np.pi**2 * nu_d**2 * t)
    num = np.sin(np.pi * x) * e1 + 4 * np.sin(2 * np.pi * x) * e2
    den = 4 + np.cos(np.pi * x) * e1 + 2 * np.cos(2 * np.pi * x) * e2
    out = np.pi * nu_d * num / den
    return out[()] if out.ndim == 0 else out
