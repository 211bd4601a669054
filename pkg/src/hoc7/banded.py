"""Square band matrices in row-major diagonal-offset storage.

Row ``i`` of ``bands`` holds ``A[i, i-lower : i+upper+1]``; entry
``A[i, j]`` lives at ``bands[i, j - i + lower]``.  Slots that fall outside
the matrix are kept at zero.
"""

import numpy as np
from scipy.linalg import lapack

from .errors import DomainError, NumericalFailure


class BandedMatrix:
    """Square matrix with ``lower`` sub- and ``upper`` super-diagonals."""

    def __init__(self, bands, lower, upper):
        bands = np.array(bands, dtype=float)
        if bands.ndim != 2 or bands.shape[1] != lower + upper + 1:
            raise DomainError(
                f"bands must have shape (n, {lower + upper + 1}), got {bands.shape}")
        self.n = bands.shape[0]
        self.lower = int(lower)
        self.upper = int(upper)
        bands[~self._valid_mask()] = 0.0
        bands.flags.writeable = False
        self.bands = bands

    def _valid_mask(self):
        i = np.arange(self.n)[:, None]
        offs = np.arange(-self.lower, self.upper + 1)[None, :]
        j = i + offs
        return (j >= 0) & (j < self.n)

    @classmethod
    def from_dense(cls, a, lower, upper):
        a = np.asarray(a, dtype=float)
        n = a.shape[0]
        bands = np.zeros((n, lower + upper + 1))
        for k, off in enumerate(range(-lower, upper + 1)):
            if abs(off) < n:
                diag = np.diagonal(a, off)
                start = max(0, -off)
                bands[start:start + diag.size, k] = diag
        return cls(bands, lower, upper)

    @classmethod
    def identity(cls, n, scale=1.0):
        return cls(np.full((n, 1), float(scale)), 0, 0)

    @property
    def bandwidth(self):
        return max(self.lower, self.upper)

    @property
    def shape(self):
        return (self.n, self.n)

    def diagonal(self, offset):
        """The ``offset`` diagonal as a length ``n - |offset|`` vector."""
        if not -self.lower <= offset <= self.upper:
            return np.zeros(max(self.n - abs(offset), 0))
        col = self.bands[:, offset + self.lower]
        return col[max(0, -offset): self.n - max(0, offset)].copy()

    def to_dense(self):
        a = np.zeros((self.n, self.n))
        for off in range(-self.lower, self.upper + 1):
            if abs(off) < self.n:
                a += np.diag(self.diagonal(off), off)
        return a

    def matvec(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.n:
            raise DomainError(f"vector length {x.shape[0]} != matrix size {self.n}")
        xp = np.concatenate([np.zeros(self.lower), x, np.zeros(self.upper)])
        y = np.zeros(self.n)
        for k in range(self.lower + self.upper + 1):
            y += self.bands[:, k] * xp[k:k + self.n]
        return y

    def rmatvec(self, x):
        """``x^T A`` as a vector."""
        x = np.asarray(x, dtype=float)
        y = np.zeros(self.n)
        for k, off in enumerate(range(-self.lower, self.upper + 1)):
            lo, hi = max(0, -off), self.n - max(0, off)
            y[lo + off:hi + off] += x[lo:hi] * self.bands[lo:hi, k]
        return y

    def __matmul__(self, other):
        if isinstance(other, BandedMatrix):
            return band_matmul(self, other)
        return self.matvec(other)

    def scaled(self, c):
        return BandedMatrix(self.bands * c, self.lower, self.upper)

    def __add__(self, other):
        if not isinstance(other, BandedMatrix):
            return NotImplemented
        if other.n != self.n:
            raise DomainError("dimension mismatch")
        lo, up = max(self.lower, other.lower), max(self.upper, other.upper)
        out = np.zeros((self.n, lo + up + 1))
        for m in (self, other):
            out[:, lo - m.lower: lo + m.upper + 1] += m.bands
        return BandedMatrix(out, lo, up)

    def __repr__(self):
        return f"BandedMatrix(n={self.n}, lower={self.lower}, upper={self.upper})"


def band_matmul(a, b):
    """Exact product of two band matrices; band widths add (capped at n-1)."""
    if a.n != b.n:
        raise DomainError(f"dimension mismatch: {a.n} vs {b.n}")
    n = a.n
    lower = min(a.lower + b.lower, n - 1)
    upper = min(a.upper + b.upper, n - 1)
    out = np.zeros((n, lower + upper + 1))
    rows = np.arange(n)
    for p in range(-a.lower, a.upper + 1):
        acol = a.bands[:, p + a.lower]
        for q in range(-b.lower, b.upper + 1):
            r = p + q
            if not -lower <= r <= upper:
                continue
            # C[i, i+r] += A[i, i+p] * B[i+p, i+r]
            lo = max(0, -p, -r)
            hi = min(n, n - p, n - r)
            if lo >= hi:
                continue
            i = rows[lo:hi]
            out[i, r + lower] += acol[i] * b.bands[i + p, q + b.lower]
    return BandedMatrix(out, lower, upper)


def polyval_banded(coeffs, a):
    """``sum_k coeffs[k] * a**k`` with ascending ``coeffs``, by Horner's rule."""
    coeffs = [float(c) for c in coeffs]
    acc = BandedMatrix.identity(a.n, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = band_matmul(acc, a) + BandedMatrix.identity(a.n, c)
    return acc


class BandedLU:
    """Partially pivoted LU factors of a band matrix (LAPACK ``gbtrf``)."""

    def __init__(self, a):
        kl, ku, n = a.lower, a.upper, a.n
        ab = np.zeros((2 * kl + ku + 1, n), order="F")
        # LAPACK layout: A[i, j] -> ab[kl + ku + i - j, j]
        for k, off in enumerate(range(-kl, ku + 1)):
            lo, hi = max(0, -off), n - max(0, off)
            i = np.arange(lo, hi)
            ab[kl + ku - off, i + off] = a.bands[lo:hi, k]
        lu, piv, info = lapack.dgbtrf(ab, kl, ku)
        if info > 0:
            raise NumericalFailure(f"band matrix is singular: U[{info - 1}, {info - 1}] == 0")
        if info < 0:
            raise NumericalFailure(f"dgbtrf rejected argument {-info}")
        self.n, self.kl, self.ku = n, kl, ku
        self._lu, self._piv = lu, piv

    def solve(self, b):
        x, info = lapack.dgbtrs(self._lu, self.kl, self.ku, np.asarray(b, dtype=float), self._piv)
        if info != 0:
            raise NumericalFailure(f"dgbtrs failed with info={info}")
        return x
