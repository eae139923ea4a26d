"""Exact truncated q-series arithmetic, Hecke-type sums and identity verification."""

from .enumerators import RankTable, durfee, enumerate_family, enum_double_peak, enum_odd, enum_strong, enum_unimodal, enum_vdurfee, enum_vscript
from .genfun import gf, gf_genU
from .harness import IdentityCase, SuiteReport, VerificationReport, make_case, registry, run_suite, verify
from .hecke import appell_double, false_decomposition_rhs, hecke_f, mz_decomposition_rhs, regularized_appell, triple_g
from .series import INF, Monomial, QSeries, eq_to_order, mul, render_text

__version__ = "0.1.0"

__all__ = [
    "INF", "Monomial", "QSeries", "eq_to_order", "mul", "render_text",
    "hecke_f", "triple_g", "appell_double", "regularized_appell",
    "mz_decomposition_rhs", "false_decomposition_rhs",
    "gf", "gf_genU",
    "RankTable", "durfee", "enumerate_family", "enum_strong", "enum_unimodal", "enum_double_peak",
    "enum_vscript", "enum_vdurfee", "enum_odd",
    "IdentityCase", "VerificationReport", "SuiteReport", "make_case", "registry", "run_suite", "verify",
]
