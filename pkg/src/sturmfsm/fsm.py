"""Finite section method for ``(H - E) x = b`` with Schrödinger ``H`` on the integers."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from .cf import CFDigits, DigitsLike, as_digits
from .errors import SingularMatrixError
from .transfer import exact, potential
from .tridiag import TridiagonalMatrix, solve_tridiagonal, tridiag_inverse_infnorm, tridiag_matvec
from .words import Variant, sturmian_window

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorSpec:
    """Potential source plus energy.

    Give either ``period`` (one period as a 0/1 word or explicit values,
    ``period[0]`` sitting at index 0) or ``digits`` for the Sturmian word,
    optionally moved along the orbit by ``shift``.
    """

    lam: float = 1.0
    period: Optional[Sequence] = None
    digits: Optional[CFDigits] = None
    shift: int = 0
    variant: Variant = "plain"
    energy: float = 0.0

    def __post_init__(self):
        if (self.period is None) == (self.digits is None):
            raise ValueError("give exactly one of period and digits")
        if self.period is not None and len(self.period) == 0:
            raise ValueError("empty period")
        if self.digits is not None:
            object.__setattr__(self, "digits", as_digits(self.digits))

    @classmethod
    def periodic(cls, period, lam=1.0, energy=0.0) -> "OperatorSpec":
        return cls(lam=lam, period=period if isinstance(period, str) else tuple(period),
                   energy=energy)

    @classmethod
    def sturmian(cls, digits: DigitsLike, lam=1.0, shift: int = 0,
                 variant: Variant = "plain", energy=0.0) -> "OperatorSpec":
        return cls(lam=lam, digits=as_digits(digits), shift=shift, variant=variant, energy=energy)

    def values(self, lo: int, hi: int) -> list:
        """``lam * v(i)`` for ``i = lo..hi``."""
        if self.period is not None:
            one = potential(self.period, self.lam)
            K = len(one)
            return [one[i % K] for i in range(lo, hi + 1)]
        word = sturmian_window(self.digits, lo, hi - lo + 1, self.variant, self.shift)
        return potential(word, self.lam)


def build_truncation(spec: OperatorSpec, n: int) -> TridiagonalMatrix:
    """``A_n``: rows and columns ``-n..n`` of ``H - E``."""
    if n < 0:
        raise ValueError("half-width must be non-negative")
    E = exact(spec.energy)
    return TridiagonalMatrix.from_diag([v - E for v in spec.values(-n, n)])


def solve_truncation(matrix: TridiagonalMatrix, rhs: Sequence[float]) -> np.ndarray:
    return solve_tridiagonal(matrix.diag, rhs)


@dataclass
class FSMRun:
    sizes: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    deltas: list = field(default_factory=list)
    inverse_norm_estimates: list = field(default_factory=list)
    singular_sizes: list = field(default_factory=list)
    converged: bool = False
    solution: list = field(default_factory=list)
    origin: int = 0
    warnings: list = field(default_factory=list)
    verdict: Optional[dict] = None

    @property
    def max_inverse_norm(self) -> float:
        return max(self.inverse_norm_estimates, default=float("nan"))

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["max_inverse_norm"] = self.max_inverse_norm
        return d


def _rhs_window(rhs: dict, n: int) -> np.ndarray:
    origin, values = int(rhs["origin"]), [float(x) for x in rhs["values"]]
    b = np.zeros(2 * n + 1)
    for k, x in enumerate(values):
        b[origin + k + n] = x
    return b


def parse_schedule(text: str) -> list[int]:
    """``"8,16,32"`` or geometric ``"start:factor:stop"`` (stop included when hit)."""
    if ":" in text:
        start, factor, stop = (int(x) for x in text.split(":"))
        if start < 1 or factor < 2 or stop < start:
            raise ValueError(f"bad schedule {text!r}")
        out, n = [], start
        while n <= stop:
            out.append(n)
            n *= factor
        return out
    return [int(x) for x in text.split(",") if x.strip()]


def fsm_run(spec: OperatorSpec, rhs: dict, schedule: Sequence[int], tol: float = 1e-8,
            verdict: Optional[dict] = None) -> FSMRun:
    """Solve ``A_n x = b`` along ``schedule`` and watch the embedded solutions settle.

    ``rhs`` is ``{"origin": i0, "values": [...]}`` with ``values[k]`` at index
    ``i0 + k``.  Singular truncations are recorded and skipped.  The run
    counts as converged once the deltas between consecutive solutions,
    measured on their common support, stay below ``tol`` for at least the
    last two steps with no singular truncation after that point.
    """
    schedule = list(schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be a non-empty increasing list")
    origin, length = int(rhs["origin"]), len(rhs["values"])
    if origin < -schedule[0] or origin + length - 1 > schedule[0]:
        raise ValueError("rhs support must fit inside the smallest truncation")
    run = FSMRun(verdict=verdict)
    prev: Optional[tuple[int, np.ndarray]] = None
    settled_from: Optional[int] = None
    for n in schedule:
        A = build_truncation(spec, n)
        b = _rhs_window(rhs, n)
        try:
            x = solve_truncation(A, b)
            inv = tridiag_inverse_infnorm(A.diag)
        except SingularMatrixError:
            run.singular_sizes.append(n)
            settled_from = None
            log.debug("truncation n=%d singular", n)
            continue
        run.sizes.append(n)
        run.residuals.append(float(np.abs(tridiag_matvec(A.diag, x) - b).max()))
        run.inverse_norm_estimates.append(inv)
        if prev is not None:
            m, y = prev
            delta = float(np.abs(x[n - m: n + m + 1] - y).max())
            run.deltas.append(delta)
            if delta <= tol:
                if settled_from is None:
                    settled_from = len(run.deltas) - 1
            else:
                settled_from = None
        prev = (n, x)
    if prev is None:
        run.warnings.append("every truncation was singular")
        return run
    n, x = prev
    run.solution = x.tolist()
    run.origin = -n
    run.converged = settled_from is not None and len(run.deltas) - settled_from >= 2
    if not run.converged:
        run.warnings.append("solution deltas did not settle below the tolerance")
    if run.singular_sizes:
        run.warnings.append(f"singular truncations at n = {run.singular_sizes}")
    return run


__all__ = ["OperatorSpec", "FSMRun", "build_truncation", "solve_truncation", "fsm_run",
           "parse_schedule"]
