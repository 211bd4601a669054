"""Seventh-order weakly L-stable one-step formula.

The formula is a closed 7-point Newton-Cotes rule on [t_n, t_{n+1}] whose
interior stage values come from quintic Hermite (osculatory) interpolation
in u, u', u'' at both step ends.  A fraction of u_n in every stage is
swapped for a backward Taylor expansion about t_{n+1} (through h^5); the
fraction is chosen so that it cancels the h^6 term of the Hermite error.

Everything here is computed in exact rational arithmetic.  The rational
stability function returned by :func:`derive_stability_function` is the
single source of coefficients for the rest of the package.
"""

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

NEWTON_COTES_NUMERATORS = (41, 216, 27, 272, 27, 216, 41)
NEWTON_COTES_DENOMINATOR = 840

# Highest derivative order kept in the backward Taylor replacement of u_n.
TAYLOR_DEGREE = 5


@dataclass(frozen=True)
class NewtonCotesWeights:
    """Closed 7-point Newton-Cotes weights on the unit interval."""

    weights: tuple

    @property
    def nodes(self):
        n = len(self.weights) - 1
        return tuple(Fraction(k, n) for k in range(n + 1))

    def integrate(self, values):
        """Apply the rule to samples taken at :attr:`nodes` (unit step)."""
        return sum(w * v for w, v in zip(self.weights, values))

    def monomial_defect(self, degree):
        """Quadrature error of the rule for t**degree over [0, 1], exactly."""
        approx = self.integrate(node**degree for node in self.nodes)
        return Fraction(1, degree + 1) - approx


def newton_cotes_weights():
    return NewtonCotesWeights(
        tuple(Fraction(w, NEWTON_COTES_DENOMINATOR) for w in NEWTON_COTES_NUMERATORS)
    )


@dataclass(frozen=True)
class HermiteStencil:
    """Quintic Hermite evaluation stencil at ``t_n + theta*h``.

    ``coeffs`` multiply ``(u_n, u_{n+1}, h u'_n, h u'_{n+1}, h^2 u''_n,
    h^2 u''_{n+1})`` in that order.
    """

    theta: Fraction
    coeffs: tuple

    def apply(self, u0, u1, du0, du1, ddu0, ddu1, h=1):
        c = self.coeffs
        return (c[0] * u0 + c[1] * u1 + h * (c[2] * du0 + c[3] * du1)
                + h * h * (c[4] * ddu0 + c[5] * ddu1))

    def monomial_defect(self, degree):
        """``theta**degree`` minus the stencil applied to ``t**degree``."""
        return self.theta**degree - self.apply(*_endpoint_data(degree))

    @property
    def taylor_weight(self):
        """Fraction of u_n replaced by the backward Taylor series.

        The Taylor remainder contributes ``+h^6/720 u^(6)`` per unit of u_n;
        the Hermite error at h^6 is ``defect(6)/720 u^(6)``, so the weight is
        ``-defect(6)``.
        """
        return -self.monomial_defect(6)


def _endpoint_data(degree):
    """(u(0), u(1), u'(0), u'(1), u''(0), u''(1)) for u(t) = t**degree."""
    d = degree
    return (
        Fraction(1 if d == 0 else 0),
        Fraction(1),
        Fraction(1 if d == 1 else 0),
        Fraction(d),
        Fraction(2 if d == 2 else 0),
        Fraction(d * (d - 1)),
    )


def _solve_exact(matrix, rhs):
    """Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular interpolation system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def hermite_stencil(theta):
    """Solve the 6x6 osculatory interpolation system at an arbitrary theta."""
    theta = Fraction(theta)
    if not 0 <= theta <= 1:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    # Row d: the stencil must reproduce t**d exactly, d = 0..5.
    matrix = [_endpoint_data(d) for d in range(6)]
    rhs = [theta**d for d in range(6)]
    return HermiteStencil(theta, tuple(_solve_exact(matrix, rhs)))


def hermite_coefficients(k):
    """Hermite stencil at the interior Newton-Cotes node ``k/6``."""
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or not 1 <= k <= 5:
        raise DomainError(f"stage index must be an integer in 1..5, got {k!r}")
    return hermite_stencil(Fraction(int(k), 6))


# -- exact polynomial helpers (ascending coefficient tuples) ----------------

def _padd(p, q):
    n = max(len(p), len(q))
    return tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pscale(p, c):
    return tuple(c * a for a in p)


def _pshift(p):
    """Multiply by s."""
    return (Fraction(0),) + tuple(p)


def _ptrim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class StabilityFunction:
    """Rational amplification factor ``num(s) / den(s)`` for ``u' = -lambda u``.

    Coefficients are ascending exact rationals, normalised to coprime
    integers with a positive denominator constant.
    """

    num_coeffs: tuple
    den_coeffs: tuple

    @property
    def degree_gap(self):
        return (len(self.den_coeffs) - 1) - (len(self.num_coeffs) - 1)

    def scaled(self, den_constant):
        """Coefficients rescaled so the denominator constant term is ``den_constant``."""
        f = Fraction(den_constant) / self.den_coeffs[0]
        return _pscale(self.num_coeffs, f), _pscale(self.den_coeffs, f)

    def exact(self, s):
        s = Fraction(s)
        return _horner(self.num_coeffs, s) / _horner(self.den_coeffs, s)

    def series(self, order):
        """Maclaurin coefficients of the function through ``s**order``."""
        num, den = self.num_coeffs, self.den_coeffs
        out = []
        for k in range(order + 1):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            out.append(acc / den[0])
        return out

    def order(self, max_order=20):
        """Largest p with ``psi(s) - exp(-s) = O(s**(p+1))``."""
        for k, c in enumerate(self.series(max_order)):
            if c != Fraction((-1) ** k, math.factorial(k)):
                return k - 1
        return max_order

    @property
    def float_num(self):
        return tuple(float(c) for c in self.num_coeffs)

    @property
    def float_den(self):
        return tuple(float(c) for c in self.den_coeffs)


def _horner(coeffs, z):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _normalise(num, den):
    num, den = _ptrim(num), _ptrim(den)
    lcm = 1
    for c in num + den:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    num = [int(c * lcm) for c in num]
    den = [int(c * lcm) for c in den]
    g = 0
    for c in num + den:
        g = math.gcd(g, c)
    if den[0] < 0:
        g = -g
    return tuple(Fraction(c, g) for c in num), tuple(Fraction(c, g) for c in den)


def stage_polynomials(k):
    """Stage value at node k/6 as ``a0(s) u_n + a1(s) u_{n+1}``.

    Uses ``h u' = -s u`` and its derivatives for the test equation, with the
    Taylor-replaced part of u_n written in terms of u_{n+1}.
    """
    st = hermite_coefficients(k)
    c = st.coeffs
    delta = st.taylor_weight
    # (-h)^j u^(j)_{n+1} / j! = s^j / j! u_{n+1}
    taylor = tuple(Fraction(1, math.factorial(j)) for j in range(TAYLOR_DEGREE + 1))
    a0 = (c[0] - delta, -c[2], c[4])
    a1 = _padd((c[1], -c[3], c[5]), _pscale(taylor, delta))
    return a0, a1


@lru_cache(maxsize=None)
def derive_stability_function():
    """Substitute the test equation into the full formula and solve for u_{n+1}/u_n."""
    w = newton_cotes_weights().weights
    acc0 = (w[0],)
    acc1 = (w[6],)
    for k in range(1, 6):
        a0, a1 = stage_polynomials(k)
        acc0 = _padd(acc0, _pscale(a0, w[k]))
        acc1 = _padd(acc1, _pscale(a1, w[k]))
    # u_{n+1} = u_n + h * sum w f, with h f = -s u:
    #   (1 + s*acc1) u_{n+1} = (1 - s*acc0) u_n
    num = _padd((Fraction(1),), _pscale(_pshift(acc0), -1))
    den = _padd((Fraction(1),), _pshift(acc1))
    return StabilityFunction(*_normalise(num, den))


def psi_eval(s):
    """Evaluate the stability function.

    Rational (``int``/``Fraction``) input is evaluated exactly.  Float or
    complex input, scalar or array, uses Horner's rule in ``s`` for
    ``|s| <= 1`` and in ``1/s`` otherwise, so huge arguments never overflow.
    """
    sf = derive_stability_function()
    if isinstance(s, (int, Fraction)) and not isinstance(s, bool):
        return sf.exact(s)
    arr = np.asarray(s)
    num, den = sf.float_num, sf.float_den
    big = np.abs(arr) > 1
    z = np.where(big, 1 / np.where(big, arr, 1), arr)
    small_val = _horner(num, z) / _horner(den, z)
    gap = sf.degree_gap
    big_val = _horner(num[::-1], z) / _horner(den[::-1], z) * z**gap
    out = np.where(big, big_val, small_val)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class LocusPoint:
    """Roots of ``num(s) - exp(i theta) den(s)`` for one boundary angle."""

    theta: float
    roots: np.ndarray
    residual: float
    converged: bool


BOUNDARY_TOL = 1e-10


def stability_boundary(theta_samples, polish_steps=3):
    """Boundary locus of the absolute stability region.

    Every returned root satisfies ``|psi(s)| = 1`` up to ``residual``; a
    sample whose residual exceeds ``BOUNDARY_TOL`` is returned with
    ``converged=False`` rather than raising.
    """
    thetas = list(theta_samples)
    if not thetas:
        raise DomainError("theta_samples must be non-empty")
    sf = derive_stability_function()
    num = np.array(sf.float_num, dtype=complex)
    den = np.array(sf.float_den, dtype=complex)
    out = []
    for theta in thetas:
        poly = -np.exp(1j * theta) * den
        poly[: len(num)] += num
        coeffs = poly[::-1]  # descending for np.roots / np.polyval
        roots = np.roots(coeffs)
        dcoeffs = np.polyder(coeffs)
        for _ in range(polish_steps):
            dp = np.polyval(dcoeffs, roots)
            ok = dp != 0
            roots = np.where(ok, roots - np.polyval(coeffs, roots) / np.where(ok, dp, 1), roots)
        residual = float(np.max(np.abs(np.abs(psi_eval(roots)) - 1))) if roots.size else 0.0
        out.append(LocusPoint(float(theta), roots, residual, residual <= BOUNDARY_TOL))
    return out


def default_theta_grid(n=720):
    return 2 * np.pi * np.arange(n) / n


def scalar_step(u, lam, h):
    """One step of the formula on ``u' = -lam u``."""
    return psi_eval(h * lam) * u


def ode_global_error(lam, T, n_steps, digits=60):
    """Global error at ``T`` on ``u' = -lam u, u(0) = 1``, in exact arithmetic.

    Double precision cannot resolve the error of a seventh-order method at
    small steps, so the step is taken in rationals and compared against
    ``exp(-lam T)`` computed with ``digits`` significant digits.
    """
    lam, T = Fraction(lam), Fraction(T)
    h = T / n_steps
    u = derive_stability_function().exact(h * lam) ** n_steps
    with localcontext() as ctx:
        ctx.prec = digits
        exact = (-Decimal(lam.numerator) * Decimal(T.numerator)
                 / (Decimal(lam.denominator) * Decimal(T.denominator))).exp()
        approx = Decimal(u.numerator) / Decimal(u.denominator)
        return float(abs(approx - exact))


def ode_convergence(lam=1, T=1, exponents=range(3, 8)):
    """Errors for steps ``h = T / 2**k``; returns ``[(h, error), ...]``."""
    return [(float(Fraction(T) / 2**k), ode_global_error(lam, T, 2**k)) for k in exponents]
