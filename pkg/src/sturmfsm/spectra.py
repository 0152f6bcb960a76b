"""Spectra of periodic Schrödinger operators and of their one-sided compressions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .cf import DigitsLike, p_q
from .transfer import Monodromy, potential
from .tridiag import (TridiagonalMatrix, continuant_det, jacobi_eigenvalues, lower_norm_2,
                      lower_norm_inf, symtridiag_eigenvalues, tridiag_inverse_infnorm)
from .words import PeriodicWordSpec, periodic_window

MERGE_TOL = 1e-9
BOUNDARY_TOL = 1e-9

__all__ = [
    "BandSpectrum", "PointSet", "continuant_det", "symtridiag_eigenvalues",
    "tridiag_inverse_infnorm", "floquet_eigenvalues", "band_spectrum",
    "one_sided_point_spectrum", "g_m_set", "lower_norm_window", "monodromy_from_determinants",
    "approximant_potential",
]


@dataclass(frozen=True)
class BandSpectrum:
    bands: tuple[tuple[float, float], ...]

    def contains(self, E: float, tol: float = 0.0) -> bool:
        return any(lo - tol <= E <= hi + tol for lo, hi in self.bands)

    def in_interior(self, E: float, tol: float = 0.0) -> bool:
        return any(lo + tol < E < hi - tol for lo, hi in self.bands)

    def distance(self, E: float) -> float:
        if self.contains(E):
            return 0.0
        return min(min(abs(E - lo), abs(E - hi)) for lo, hi in self.bands)

    def gaps(self) -> list[tuple[float, float]]:
        return [(self.bands[i][1], self.bands[i + 1][0]) for i in range(len(self.bands) - 1)
                if self.bands[i + 1][0] > self.bands[i][1]]

    def __len__(self) -> int:
        return len(self.bands)


@dataclass(frozen=True)
class PointSet:
    """Sorted, merged points plus diagnostics.

    Candidates whose determinant filter value lies within ``BOUNDARY_TOL``
    of 1 are undecidable in floating point; they are left out of ``points``
    and listed in ``boundary``.  ``in_gap[i]`` tells whether ``points[i]``
    avoids the interior of every band.
    """

    points: tuple[float, ...]
    boundary: tuple[float, ...] = ()
    in_gap: tuple[bool, ...] = ()
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.points)

    def distance(self, x: float = 0.0) -> float:
        if not self.points:
            return float("inf")
        return float(min(abs(p - x) for p in self.points))


def _merge(points: Sequence[float], tol: float = MERGE_TOL) -> tuple[float, ...]:
    merged: list[float] = []
    for x in sorted(float(p) for p in points):
        if merged and x - merged[-1] <= tol:
            continue
        merged.append(x)
    return tuple(merged)


def _filtered(values: list[float]) -> tuple[list[float], list[float]]:
    """Inner eigenvalues passing ``|det| < 1`` on the full block, and boundary cases."""
    kept, boundary = [], []
    for E in symtridiag_eigenvalues(values[:-1]):
        d = abs(continuant_det(values, float(E)))
        if abs(d - 1.0) <= BOUNDARY_TOL:
            boundary.append(float(E))
        elif d < 1.0:
            kept.append(float(E))
    return kept, boundary


def floquet_matrix(values: Sequence[float], phi_is_pi: bool) -> TridiagonalMatrix:
    return TridiagonalMatrix.from_diag(values, corner=-1.0 if phi_is_pi else 1.0)


def floquet_eigenvalues(word, lam=1, phi: float = 0.0) -> np.ndarray:
    """Eigenvalues of the periodic-boundary matrix with phase ``phi`` in ``{0, pi}``."""
    if phi == 0:
        is_pi = False
    elif abs(phi - np.pi) < 1e-12:
        is_pi = True
    else:
        raise ValueError("only the phases 0 and pi are supported")
    values = [float(v) for v in potential(word, lam)]
    if not values:
        raise ValueError("empty potential")
    return jacobi_eigenvalues(floquet_matrix(values, is_pi).dense())


def band_spectrum(word, lam=1) -> BandSpectrum:
    """Bands ``[E_{2j-1}, E_{2j}]`` from the merged phase-0 and phase-pi eigenvalues."""
    edges = np.sort(np.concatenate([floquet_eigenvalues(word, lam, 0.0),
                                    floquet_eigenvalues(word, lam, np.pi)]))
    return BandSpectrum(tuple((float(edges[2 * j]), float(edges[2 * j + 1]))
                              for j in range(edges.size // 2)))


def one_sided_point_spectrum(word, lam=1, bands: Optional[BandSpectrum] = None) -> PointSet:
    """Eigenvalues the half-line compression adds to the two-sided band spectrum.

    Candidates are eigenvalues ``E`` of the leading ``(K-1)x(K-1)`` block;
    ``E`` is kept when the full ``KxK`` continuant at ``E`` has modulus < 1.
    Period 1 yields an empty, ``degenerate`` set.
    """
    values = [float(v) for v in potential(word, lam)]
    if not values:
        raise ValueError("empty potential")
    if len(values) == 1:
        # constant potential: the half line adds nothing to the band
        return PointSet((), (), (), degenerate=True)
    kept, boundary = _filtered(values)
    points = _merge(kept)
    if bands is None:
        bands = band_spectrum(values)
    in_gap = tuple(not bands.in_interior(p) for p in points)
    return PointSet(points, _merge(boundary), in_gap)


def approximant_potential(digits: DigitsLike, lam, m: int, start: int = 1) -> list:
    """One period ``lam * v_{alpha_m}(start .. start+q_m-1)``."""
    p, q = p_q(digits, m)
    return potential(periodic_window(PeriodicWordSpec(p, q), start, q), lam)


def _gm_shift(values: list[float], k: int) -> tuple[list[float], list[float]]:
    return _filtered(values[k:] + values[:k])


def g_m_set(digits: DigitsLike, lam, m: int, workers: int = 1) -> PointSet:
    """Union over all cyclic shifts of the filtered inner eigenvalues of the m-th approximant."""
    values = [float(v) for v in approximant_potential(digits, lam, m)]
    q = len(values)
    if q < 2:
        return PointSet((), (), (), degenerate=True)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_gm_shift, [values] * q, range(q)))
    else:
        results = [_gm_shift(values, k) for k in range(q)]
    points = _merge([x for pts, _ in results for x in pts])
    boundary = _merge([x for _, bd in results for x in bd])
    bands = band_spectrum(values)
    return PointSet(points, boundary, tuple(not bands.in_interior(p) for p in points))


def lower_norm_window(word, lam=1, p: float = np.inf) -> float:
    """Lower norm of the square window matrix; 0 when singular.

    ``p = inf`` gives ``1/||A^{-1}||_inf``; ``p = 2`` the smallest singular value.
    """
    values = [float(v) for v in potential(word, lam)]
    if not values:
        raise ValueError("empty window")
    if p == np.inf:
        return lower_norm_inf(values)
    if p == 2:
        return lower_norm_2(values)
    raise ValueError("only p = inf and p = 2 are implemented")


def monodromy_from_determinants(values: Sequence, E=0) -> Monodromy:
    """Monodromy over one period expressed through principal minors of ``H - E``.

    ``M = (-1)^(K+1) [[-det A[0:K], -det A[1:K]], [det A[0:K-1], det A[1:K-1]]]``
    with ``A[i:j]`` the diagonal block on rows ``i..j-1``.
    """
    values = list(values)
    K = len(values)
    if K < 2:
        raise ValueError("needs period K >= 2")
    sign = 1 if K % 2 == 1 else -1
    return Monodromy(
        -sign * continuant_det(values, E),
        -sign * continuant_det(values[1:], E),
        sign * continuant_det(values[:-1], E),
        sign * continuant_det(values[1:-1], E),
    )
