"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line in the summary."""
import math
import time
from fractions import Fraction

import numpy as np

from sturmfsm.applicability import (check_applicability_certified, lambda_threshold,
                                    periodic_fsm_applicable)
from sturmfsm.cf import p_q, q_of
from sturmfsm.figures import emit_figure_data
from sturmfsm.fsm import OperatorSpec, fsm_run, parse_schedule
from sturmfsm.spectra import band_spectrum, g_m_set, one_sided_point_spectrum
from sturmfsm.transfer import monodromy_recursive, potential, product
from sturmfsm.tridiag import TridiagonalMatrix, symtridiag_eigenvalues, tridiag_inverse_infnorm
from sturmfsm.words import (PeriodicWordSpec, agreement_range, enumerate_subwords,
                            palindromic_decomposition, periodic_word_value, recursive_word,
                            sturmian_value, sturmian_window)

S2, S3, S5 = math.sqrt(2), math.sqrt(3), math.sqrt(5)
HALF = Fraction(1, 2)


def max_edge_error(bands, expected):
    return max(abs(a - b) for got, want in zip(bands, expected) for a, b in zip(got, want))


def test_criterion_1_periodic_bands(record):
    start = time.perf_counter()
    b010 = band_spectrum("010", 1).bands
    b2 = band_spectrum([-1, 1]).bands
    elapsed = time.perf_counter() - start
    e1 = max_edge_error(b010, [(-S3, -1), (1 - S2, 1), (S3, 1 + S2)])
    e2 = max_edge_error(b2, [(-S5, -1), (1, S5)])
    ok = len(b010) == 3 and len(b2) == 2 and e1 < 1e-9 and e2 < 1e-9 and elapsed < 0.1
    record(1, ok, f"edge errors {e1:.1e}, {e2:.1e}; {elapsed * 1e3:.1f} ms")


def test_criterion_2_one_sided_points(record):
    pts = one_sided_point_spectrum("010", 1).points
    err = abs(pts[0] + (S5 - 1) / 2) if len(pts) == 1 else math.inf
    rng = np.random.default_rng(2)
    two = [one_sided_point_spectrum(list(rng.uniform(-5, 5, 2))).points for _ in range(500)]
    two += [one_sided_point_spectrum(v).points for v in ([0, 1], [-1, 1], [2, 2], [0, 0])]
    ok = err < 1e-9 and all(p == () for p in two)
    record(2, ok, f"(0,1,0) point error {err:.1e}; {len(two)} two-periodic potentials, all empty")


def test_criterion_3_counterexamples(record):
    results = []
    for values in ([HALF, 2, HALF], [HALF * x for x in (1, 1, 0, 1, 0, 1, 0, 1, 1)]):
        r = periodic_fsm_applicable(values)
        tr = r.trace_values[0][1]
        results.append(isinstance(tr, Fraction) and abs(tr) == Fraction(5, 2)
                       and r.verdict == "not_applicable"
                       and any("one-sided" in w for w in r.warnings))
    record(3, all(results), f"exact |tr| = 5/2 and not_applicable: {results}")


def test_criterion_4_fibonacci_traces(record):
    t6 = monodromy_recursive("golden:20", 1, 0, 6).trace
    t7 = monodromy_recursive("golden:20", 1, 0, 7).trace
    lam0 = lambda_threshold("golden:20", 6, 0.5, 1.0)
    err = abs(lam0 - (3 + S3) / 6)
    ok = (t6, t7) == (10, -37) and isinstance(t6, int) and err < 1e-6
    record(4, ok, f"traces {t6}, {t7}; threshold {lam0:.10f} (error {err:.1e})")


def test_criterion_5_certificate(record):
    start = time.perf_counter()
    r = check_applicability_certified("golden:20", 1, 200)
    elapsed = time.perf_counter() - start
    ok = (r.windows == 202 and r.min_window_nu >= 0.075 and abs(r.epsilon - 0.03) < 1e-6
          and r.verdict == "applicable" and elapsed < 10)
    record(5, ok, f"{r.windows} windows, min nu {r.min_window_nu:.6f}, eps {r.epsilon:.6f}, "
                  f"{r.verdict}, {elapsed:.2f} s")


def test_criterion_6_word_combinatorics(record):
    failures = []
    digits = "golden:24"
    for L in range(1, 61):
        if len(enumerate_subwords(digits, L)) != L + 1:
            failures.append(f"complexity L={L}")
    for m in range(1, 11):
        q = q_of(digits, m)
        for k in range(1, min(500, q_of(digits, m + 1) - 2) + 1):
            if sturmian_value(digits, q + k) != sturmian_value(digits, k):
                failures.append(f"recurrence m={m} k={k}")
    for k in range(2, 501):
        if sturmian_value(digits, -k) != sturmian_value(digits, k - 1):
            failures.append(f"mirror k={k}")
    for n in range(2, 10):
        p, q = p_q(digits, n)
        for variant in ("plain", "tilde"):
            lo, hi, aper = agreement_range(digits, n, variant)
            if any(periodic_word_value(PeriodicWordSpec(p, q), k, variant) != sturmian_value(digits, k, aper)
                   for k in range(lo, hi + 1)):
                failures.append(f"agreement n={n} {variant}")
    for n in range(2, 14):
        pi, suffix = palindromic_decomposition(digits, n)
        if not pi.is_palindrome() or pi.symbols + suffix.symbols != recursive_word(digits, n).symbols:
            failures.append(f"palindrome n={n}")
    for L in range(1, 31):
        words = {w.symbols for w in enumerate_subwords(digits, L)}
        if {w[::-1] for w in words} != words:
            failures.append(f"reversal L={L}")
    record(6, not failures, "all exact identities hold" if not failures else f"failures: {failures[:5]}")


def test_criterion_7_kernel_oracles(record):
    rng = np.random.default_rng(7)
    eig_err = inv_err = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 51))
        d = rng.uniform(-3, 3, n)
        ref = np.linalg.eigvalsh(TridiagonalMatrix.from_diag(d).dense())
        eig_err = max(eig_err, float(np.abs(symtridiag_eigenvalues(d) - ref).max()))
    done = 0
    while done < 100:
        n = int(rng.integers(1, 51))
        d = rng.uniform(-4, 4, n)
        a = TridiagonalMatrix.from_diag(d).dense()
        if np.linalg.cond(a) > 1e6:
            continue
        ref = np.abs(np.linalg.solve(a, np.eye(n))).sum(axis=1).max()
        inv_err = max(inv_err, abs(tridiag_inverse_infnorm(d) - ref) / ref)
        done += 1
    mono_err = 0.0
    for m in range(0, 15):
        length = 1 if m == 0 else q_of("golden:20", m)
        direct = product([float(v) for v in potential(sturmian_window("golden:20", 1, length), 1)], 0.0)
        rec = monodromy_recursive("golden:20", 1.0, 0.0, m)
        scale = max(1.0, np.abs(direct.as_array()).max())
        mono_err = max(mono_err, float(np.abs(rec.as_array() - direct.as_array()).max()) / scale)
    ok = eig_err < 1e-9 and inv_err < 1e-10 and mono_err < 1e-8
    record(7, ok, f"eigenvalues {eig_err:.1e}, inverse norm {inv_err:.1e} rel, monodromy {mono_err:.1e} rel")


def test_criterion_8_fsm_end_to_end(record):
    unit = {"origin": 0, "values": [1.0]}
    const = OperatorSpec.periodic("1", 3)
    run = fsm_run(const, unit, parse_schedule("4:2:512"), 1e-8)
    ref = np.array(fsm_run(const, unit, [4096]).solution)[4096 - 512: 4096 + 513]
    ref_err = float(np.abs(np.array(run.solution) - ref).max())
    free = fsm_run(OperatorSpec.periodic("0", 1), unit, parse_schedule("4:2:512"), 1e-8)
    fib = fsm_run(OperatorSpec.sturmian("golden:30", 1), unit, parse_schedule("8:2:2048"), 1e-8)
    bound = check_applicability_certified("golden:30", 1, 200).fsm_inverse_bound
    ok = (run.converged and run.deltas[-1] < 1e-8 and ref_err < 1e-8 and not free.converged
          and fib.converged and max(fib.inverse_norm_estimates) <= 1.1 * bound)
    record(8, ok, f"constant: delta {run.deltas[-1]:.1e}, reference error {ref_err:.1e}; "
                  f"free converged={free.converged}; Fibonacci max inverse norm "
                  f"{max(fib.inverse_norm_estimates):.3f} vs bound {bound:.3f}")


def test_criterion_9_figure_data(record):
    rows = emit_figure_data("golden:20", 1, range(4, 9), (-1, 1))
    zero_outside = all(not (r.lo <= 0 <= r.hi) for r in rows if r.kind == "band" and r.m in (4, 5))
    dists = {m: g_m_set("golden:20", 1, m).distance(0.0) for m in range(4, 9)}
    ok = zero_outside and all(d > 0 for d in dists.values())
    record(9, ok, f"0 outside bands at m=4,5: {zero_outside}; dist(0, G_m) = "
                  + ", ".join(f"{d:.4f}" for d in dists.values()))
