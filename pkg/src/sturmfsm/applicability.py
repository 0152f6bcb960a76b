"""Verdicts on whether the finite section method applies.

Three routes:

* periodic potentials: the trace at ``E = 0`` plus, outside the classes
  where the trace alone decides, a sweep over the one-sided compressions
  of every cyclic shift and of the reversed word;
* Sturmian potentials: the two-consecutive-traces test at ``E = 0``
  together with a scan of ``dist(0, G_m)``;
* Sturmian potentials: a certificate from the lower norms of all square
  windows of length ``D+1``.

A finite computation can certify applicability or prove failure of the
trace test, but a failed certificate or a finite ``G_m`` scan never proves
non-applicability, hence the third verdict ``inconclusive``.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

import numpy as np

from .cf import DigitsLike, as_digits, q_of
from .spectra import g_m_set, lower_norm_window, one_sided_point_spectrum
from .transfer import is_exact, monodromy_recursive, potential, product
from .tridiag import continuant_det
from .words import enumerate_subwords
from .errors import ConsistencyError

log = logging.getLogger(__name__)

Verdict = Literal["applicable", "not_applicable", "inconclusive"]
Method = Literal["periodic_trace", "aperiodic_trace_gm", "certified_lower_norm"]
ValueClass = Literal["integer", "rational", "real"]

EPS_MARGIN = 1e-9
ZERO_TOL = 1e-9


@dataclass
class ApplicabilityReport:
    verdict: Verdict
    method: Method
    m0: Optional[int] = None
    trace_values: list = field(default_factory=list)
    gm_distances: list = field(default_factory=list)
    epsilon: Optional[float] = None
    D: Optional[int] = None
    windows: Optional[int] = None
    min_window_nu: Optional[float] = None
    fsm_inverse_bound: Optional[float] = None
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def infer_value_class(values: Sequence) -> ValueClass:
    if all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1) for v in values):
        return "integer"
    if all(is_exact(v) for v in values):
        return "rational"
    return "real"


def _two_letter_scale(values: Sequence):
    """``lam`` when every value is 0 or ``lam``, else ``None``."""
    nonzero = {v for v in values if v != 0}
    if len(nonzero) > 1:
        return None
    return nonzero.pop() if nonzero else 0


def trace_decides(values: Sequence, value_class: ValueClass) -> Optional[str]:
    """Name of the hypothesis under which the trace test alone is exact, if any."""
    K = len(values)
    if value_class == "integer":
        return "integer potential"
    if K <= 2:
        return "period K <= 2"
    lam = _two_letter_scale(values)
    if lam is not None:
        if K < 5:
            return "{0, lam} potential with K < 5"
        if K <= 8 and value_class == "rational":
            return "{0, lam} potential with rational lam and K <= 8"
    return None


def zero_in_one_sided_spectrum(values: Sequence) -> bool:
    """Whether 0 is an eigenvalue the half-line compression adds for this period.

    Exact values are decided exactly: 0 must be an eigenvalue of the leading
    ``K-1`` block (its continuant vanishes) and the full continuant at 0 must
    have modulus below 1.
    """
    if len(values) < 2:
        return False
    if all(is_exact(v) for v in values):
        return continuant_det(values[:-1], 0) == 0 and abs(continuant_det(values, 0)) < 1
    pts = one_sided_point_spectrum([float(v) for v in values])
    return pts.distance(0.0) <= ZERO_TOL


def periodic_fsm_applicable(word, lam=1, value_class: Optional[ValueClass] = None
                            ) -> ApplicabilityReport:
    """Applicability for one period of a periodic potential (word and scale, or explicit values)."""
    values = potential(word, lam)
    if not values:
        raise ValueError("empty period")
    if value_class is None:
        value_class = infer_value_class(values)
    tr = product(values, 0).trace
    report = ApplicabilityReport("inconclusive", "periodic_trace", trace_values=[(len(values), tr)])
    if abs(tr) <= 2:
        report.verdict = "not_applicable"
        report.warnings.append("|tr M(0)| <= 2: 0 lies in the spectrum")
        return report
    reason = trace_decides(values, value_class)
    if reason is not None:
        report.verdict = "applicable"
        report.warnings.append(f"trace test is exact for: {reason}")
        return report
    K = len(values)
    for seq, label in ((values, "shift"), (values[::-1], "reversed shift")):
        for k in range(K):
            rotated = seq[k:] + seq[:k]
            if zero_in_one_sided_spectrum(rotated):
                report.verdict = "not_applicable"
                report.warnings.append(
                    f"0 is an eigenvalue of the one-sided compression of {label} {k}")
                return report
    report.verdict = "applicable"
    report.warnings.append(
        "trace alone is not known to decide this class; no shift or reversal has 0 "
        "in its one-sided point spectrum")
    return report


def aperiodic_trace_check(digits: DigitsLike, lam, m_max: int
                          ) -> tuple[Optional[int], list, list]:
    """Smallest ``m0 <= m_max-1`` with ``|tr M(q_m0, 0)| > 2`` and ``|tr M(q_{m0+1}, 0)| > 2``.

    Returns ``(m0, [(m, trace), ...], warnings)``.  Once ``m0`` is found all
    later traces must stay above 2 in modulus; violations are reported.
    """
    cf = as_digits(digits)
    traces = [(m, monodromy_recursive(cf, lam, 0, m).trace) for m in range(0, m_max + 1)]
    big = [abs(t) > 2 for _, t in traces]
    m0 = next((m for m in range(m_max) if big[m] and big[m + 1]), None)
    warnings = []
    if m0 is not None:
        bad = [m for m in range(m0, m_max + 1) if not big[m]]
        if bad:
            warnings.append(f"|tr| <= 2 after m0 at m = {bad}; numerical trouble likely")
    return m0, traces, warnings


def gm_distance_scan(digits: DigitsLike, lam, m_min: int, m_max: int, workers: int = 1
                     ) -> tuple[list, list]:
    """``[(m, dist(0, G_m)), ...]`` plus warnings (degenerate periods, boundary cases)."""
    out, warnings = [], []
    for m in range(m_min, m_max + 1):
        g = g_m_set(digits, lam, m, workers=workers)
        if g.degenerate:
            warnings.append(f"G_{m}: period q_{m} = {q_of(digits, m)} < 2, set taken as empty")
        out.append((m, g.distance(0.0)))
    warnings.append("a finite G_m scan supports but cannot prove the liminf condition")
    return out, warnings


def epsilon_for(lam, D: int, p: float = np.inf) -> float:
    """Admissible threshold for window depth ``D``, slightly above the strict bound."""
    norm = abs(float(lam)) + 2.0
    if p == np.inf:
        bound = 2.0 * norm / D
    else:
        bound = 2.0 * norm * (4.0 / D) ** (1.0 / p)
    return bound * (1.0 + EPS_MARGIN)


def _window_nus(words: list, lam: float) -> list[float]:
    return [lower_norm_window(w, lam) for w in words]


def check_applicability_certified(digits: DigitsLike, lam, D: int, workers: int = 1
                                  ) -> ApplicabilityReport:
    """Certificate from the lower norms of all ``D+2`` distinct windows of length ``D+1``."""
    if D < 4:
        raise ValueError("depth D must be at least 4")
    lam_f = float(lam)
    eps = epsilon_for(lam_f, D)
    words = enumerate_subwords(digits, D + 1)
    if len(words) != D + 2:
        raise ConsistencyError(f"expected {D + 2} windows, got {len(words)}")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        chunks = [words[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            nus = [x for part in pool.map(_window_nus, chunks, [lam_f] * workers) for x in part]
    else:
        nus = _window_nus(words, lam_f)
    nu_min = min(nus)
    report = ApplicabilityReport("inconclusive", "certified_lower_norm", epsilon=eps, D=D,
                                 windows=len(words), min_window_nu=nu_min)
    report.warnings.append(
        f"p < inf threshold for reference: {epsilon_for(lam_f, D, p=2):.6g} at p = 2")
    if nu_min > eps:
        report.verdict = "applicable"
        report.fsm_inverse_bound = 1.0 / (nu_min - eps)
    else:
        report.warnings.append(
            "min window lower norm does not exceed epsilon; try a larger depth D")
    log.debug("certificate D=%d eps=%.6g min nu=%.6g", D, eps, nu_min)
    return report


def sturmian_fsm_verdict(digits: DigitsLike, lam, m_max: int, D: int, workers: int = 1
                      ) -> ApplicabilityReport:
    """Trace test at ``E = 0`` combined with the lower-norm certificate."""
    m0, traces, warnings = aperiodic_trace_check(digits, lam, m_max)
    if m0 is None:
        return ApplicabilityReport(
            "not_applicable", "aperiodic_trace_gm", trace_values=traces,
            warnings=warnings + [f"no two consecutive |tr| > 2 up to m = {m_max}; "
                                 "0 is taken to lie in the spectrum"])
    report = check_applicability_certified(digits, lam, D, workers=workers)
    report.m0 = m0
    report.trace_values = traces
    report.warnings = warnings + report.warnings
    if report.verdict != "applicable":
        report.method = "aperiodic_trace_gm"
        report.verdict = "inconclusive"
        report.gm_distances, gm_warn = gm_distance_scan(digits, lam, max(m0, 2), m_max, workers)
        report.warnings.extend(gm_warn)
    return report


# name kept for callers written against the published API
theorem11_verdict = sturmian_fsm_verdict


def lambda_threshold(digits: DigitsLike, m: int, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Bisection for the smallest ``lam`` in ``[lo, hi]`` with both ``|tr M(q_m)|, |tr M(q_{m+1})| > 2``.

    Assumes the predicate is false at ``lo`` and true on ``(threshold, hi]``.
    """
    def ok(lam: float) -> bool:
        return (abs(monodromy_recursive(digits, lam, 0.0, m).trace) > 2
                and abs(monodromy_recursive(digits, lam, 0.0, m + 1).trace) > 2)

    if ok(lo) or not ok(hi):
        raise ValueError("bisection bracket does not straddle the threshold")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


__all__ = [
    "ApplicabilityReport", "periodic_fsm_applicable", "aperiodic_trace_check",
    "gm_distance_scan", "check_applicability_certified", "sturmian_fsm_verdict",
    "theorem11_verdict",
    "epsilon_for", "lambda_threshold", "zero_in_one_sided_spectrum",
]
