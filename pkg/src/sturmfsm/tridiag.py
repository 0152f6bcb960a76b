"""Kernels for symmetric tridiagonal matrices with unit off-diagonals.

All matrices here have the Schrödinger shape: arbitrary real diagonal,
ones next to it, and optionally equal real corner entries (periodic
boundary, used for Floquet matrices).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import SingularMatrixError

RENORM_EVERY = 32


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: tuple[float, ...]
    corner: Optional[float] = None

    def __post_init__(self):
        if len(self.diag) < 1:
            raise ValueError("matrix needs at least one row")

    @classmethod
    def from_diag(cls, diag: Sequence[float], corner: Optional[float] = None) -> "TridiagonalMatrix":
        return cls(tuple(float(d) for d in diag), corner)

    def __len__(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        """Dense copy; for n < 3 colliding corner and band entries are summed."""
        n = len(self.diag)
        a = np.diag(np.asarray(self.diag, dtype=float))
        if n > 1:
            idx = np.arange(n - 1)
            a[idx, idx + 1] += 1.0
            a[idx + 1, idx] += 1.0
        if self.corner is not None:
            if n == 1:
                a[0, 0] += 2.0 * self.corner
            else:
                a[0, n - 1] += self.corner
                a[n - 1, 0] += self.corner
        return a

    def inf_norm(self) -> float:
        return float(np.abs(self.dense()).sum(axis=1).max())


def continuant_det(diag: Sequence, E=0):
    """``det(diag(d) - E + unit off-diagonals)`` by the three-term recurrence.

    Exact when the inputs are ints or Fractions.  The empty matrix has
    determinant 1.
    """
    prev, cur = 0, 1
    for d in diag:
        prev, cur = cur, (d - E) * cur - prev
    return cur


def sturm_count(diag: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Number of eigenvalues strictly below each entry of ``x``."""
    x = np.asarray(x, dtype=float)
    count = np.zeros(x.shape, dtype=np.int64)
    tiny = np.finfo(float).tiny ** 0.5
    q = np.ones_like(x)
    for i, d in enumerate(diag):
        q = (d - x) - (1.0 / q if i else 0.0)
        q = np.where(q == 0.0, -tiny, q)
        count += q < 0
    return count


def symtridiag_eigenvalues(diag: Sequence[float], tol: Optional[float] = None) -> np.ndarray:
    """All eigenvalues, ascending, by Sturm-sequence bisection.

    Every eigenvalue is bisected simultaneously; the loop stops once each
    bracket is below ``tol`` (default: a few ulps of the Gershgorin scale).
    """
    d = np.asarray(diag, dtype=float)
    n = d.size
    if n == 0:
        return np.empty(0)
    if n == 1:
        return d.copy()
    scale = max(1.0, float(np.abs(d).max()) + 2.0)
    lo = np.full(n, float(d.min()) - 2.0)
    hi = np.full(n, float(d.max()) + 2.0)
    if tol is None:
        tol = 4.0 * np.finfo(float).eps * scale
    k = np.arange(n)
    # eigenvalue k (0-based) is the smallest x with count(x) > k
    for _ in range(200):
        if float((hi - lo).max()) <= tol:
            break
        mid = 0.5 * (lo + hi)
        below = sturm_count(d, mid) > k
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a dense real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return np.zeros(n)
    for _ in range(max_sweeps):
        off = float(np.sqrt(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
    return np.sort(a.diagonal())


def _scaled_continuants(diag: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Leading principal minors ``theta_0..theta_n`` in mantissa/log-scale form.

    ``theta_i = mant[i] * exp(logscale[i])``.  Also returns, per step, the
    magnitude of the two terms that were combined (for singularity tests).
    """
    n = diag.size
    mant = np.empty(n + 1)
    logscale = np.zeros(n + 1)
    terms = np.zeros(n + 1)
    prev, cur, shift = 0.0, 1.0, 0.0
    mant[0] = 1.0
    for i in range(n):
        a, b = diag[i] * cur, prev
        prev, cur = cur, a - b
        terms[i + 1] = abs(a) + abs(b)
        if (i + 1) % RENORM_EVERY == 0:
            s = max(abs(cur), abs(prev))
            if s > 0.0:
                prev /= s
                cur /= s
                shift += math.log(s)
                terms[i + 1] /= s
        mant[i + 1] = cur
        logscale[i + 1] = shift
    return mant, logscale, terms


def _log_abs(mant: np.ndarray, logscale: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(mant)) + logscale


def _log_cumsum(logs: np.ndarray) -> np.ndarray:
    return np.logaddexp.accumulate(logs) if logs.size else logs


def tridiag_inverse_infnorm(diag: Sequence[float], rel_tol: float = 1e-14) -> float:
    """``||A^{-1}||_inf`` for the unit off-diagonal tridiagonal ``A`` in O(n).

    Uses ``|A^{-1}|_{ij} = |theta_{i-1} phi_{j+1}| / |theta_n|`` (i <= j), with
    ``theta`` the leading and ``phi`` the trailing principal minors.  Row sums
    are accumulated as log-domain prefix sums so no continuant overflows.
    """
    d = np.asarray(diag, dtype=float)
    n = d.size
    if n == 0:
        raise ValueError("empty matrix")
    t_mant, t_log, t_terms = _scaled_continuants(d)
    p_mant, p_log, _ = _scaled_continuants(d[::-1])
    if abs(t_mant[n]) <= rel_tol * max(t_terms[n], np.finfo(float).tiny):
        raise SingularMatrixError("tridiagonal matrix is numerically singular")
    log_theta = _log_abs(t_mant, t_log)          # theta_0..theta_n
    log_phi_rev = _log_abs(p_mant, p_log)        # trailing minors by length 0..n
    # phi_j (1-based, minor of rows j..n) has length n-j+1; phi_{n+1} = 1
    log_phi = log_phi_rev[::-1]                  # log_phi[j-1] = log|phi_j|, last entry = phi_{n+1}
    log_theta_n = log_theta[n]
    # entry (i, j) with i <= j: theta_{i-1} * phi_{j+1}
    a = log_theta[:n]                            # theta_{i-1}, i = 1..n
    b = log_phi[1:]                              # phi_{j+1}, j = 1..n
    upper = a + _log_cumsum(b[::-1])[::-1]       # sum_{j >= i}
    lower_prefix = _log_cumsum(a)                # sum_{j <= i} theta_{j-1}
    lower = np.full(n, -np.inf)
    lower[1:] = lower_prefix[:-1] + b[1:]        # sum_{j < i} theta_{j-1} phi_{i+1}
    rows = np.logaddexp(upper, lower) - log_theta_n
    return float(np.exp(rows.max()))


def lower_norm_inf(diag: Sequence[float]) -> float:
    """``1/||A^{-1}||_inf``, or 0 when ``A`` is singular."""
    try:
        return 1.0 / tridiag_inverse_infnorm(diag)
    except SingularMatrixError:
        return 0.0


def lower_norm_2(diag: Sequence[float]) -> float:
    """Smallest singular value; for symmetric ``A`` the smallest ``|eigenvalue|``."""
    return float(np.abs(symtridiag_eigenvalues(diag)).min())


def solve_tridiagonal(diag: Sequence[float], rhs: Sequence[float]) -> np.ndarray:
    """Solve ``A x = rhs`` by Gaussian elimination with partial pivoting.

    Row swaps create a second superdiagonal, as in LAPACK's ``gtsv``.
    """
    d = np.array(diag, dtype=float)
    b = np.array(rhs, dtype=float)
    n = d.size
    if b.size != n:
        raise ValueError(f"right-hand side has length {b.size}, matrix has {n} rows")
    dl = np.ones(max(n - 1, 0))
    du = np.ones(max(n - 1, 0))
    du2 = np.zeros(max(n - 2, 0))
    scale = max(1.0, float(np.abs(d).max(initial=0.0)) + 2.0)
    tiny = 1e-14 * scale
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if abs(d[i]) <= tiny:
                raise SingularMatrixError(f"zero pivot in row {i}")
            f = dl[i] / d[i]
            d[i + 1] -= f * du[i]
            b[i + 1] -= f * b[i]
            dl[i] = 0.0
        else:
            f = d[i] / dl[i]
            d[i] = dl[i]
            tmp = d[i + 1]
            d[i + 1] = du[i] - f * tmp
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -f * du2[i]
            du[i] = tmp
            b[i], b[i + 1] = b[i + 1], b[i] - f * b[i + 1]
    if n and abs(d[n - 1]) <= tiny:
        raise SingularMatrixError("zero pivot in last row")
    x = np.empty(n)
    for i in range(n - 1, -1, -1):
        acc = b[i]
        if i < n - 1:
            acc -= du[i] * x[i + 1]
        if i < n - 2:
            acc -= du2[i] * x[i + 2]
        x[i] = acc / d[i]
    return x


def tridiag_matvec(diag: Sequence[float], x: np.ndarray) -> np.ndarray:
    d = np.asarray(diag, dtype=float)
    y = d * x
    y[:-1] += x[1:]
    y[1:] += x[:-1]
    return y
