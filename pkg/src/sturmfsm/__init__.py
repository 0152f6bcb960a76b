"""Sturmian Schrödinger operators: words, transfer matrices, spectra and the finite section method."""
from .applicability import (ApplicabilityReport, aperiodic_trace_check, check_applicability_certified,
                            gm_distance_scan, periodic_fsm_applicable, sturmian_fsm_verdict,
                            theorem11_verdict)
from .cf import CFDigits, alpha_value, approximants, approximation_gap, p_q, parse_digits
from .errors import ConsistencyError, InsufficientDigitsError, SingularMatrixError
from .figures import emit_figure_data, render_figure
from .fsm import FSMRun, OperatorSpec, build_truncation, fsm_run, solve_truncation
from .spectra import (BandSpectrum, PointSet, band_spectrum, g_m_set, lower_norm_window,
                      one_sided_point_spectrum)
from .transfer import Monodromy, monodromy_direct, monodromy_recursive, trace_polynomial
from .tridiag import continuant_det, symtridiag_eigenvalues, tridiag_inverse_infnorm
from .words import (Word, enumerate_subwords, palindromic_decomposition, recursive_word,
                    sturmian_value, sturmian_window)

__version__ = "0.1.0"
