"""p-adic Gamma functions, Dwork's hypergeometric Frobenius structure and
the Koblitz-Diamond / Young evaluations, with exact series arithmetic."""
from ._backend import BACKEND
from .padic import INF, PadicNumber, PiElement, padic_from_rational, vp, vp_rational
from .series import RationalFunction, SeriesMatrix2, TruncSeries
from .gamma import GammaPair, gamma_p, gamma_symbol
from .hypergeo import ParamTriple, condition_check, orbit, prime_step, solution_matrix
from .frobenius import (alpha, frobenius_matrix_series, kummer_record, xi_closed_form,
                        xi_via_pullback)
from .unitroot import dwork_ratio, kd_rhs, kd_verify, xi_ratio_identity_check, young_verify

__all__ = [
    "BACKEND", "INF", "PadicNumber", "PiElement", "padic_from_rational", "vp", "vp_rational",
    "RationalFunction", "SeriesMatrix2", "TruncSeries", "GammaPair", "gamma_p", "gamma_symbol",
    "ParamTriple", "condition_check", "orbit", "prime_step", "solution_matrix", "alpha",
    "frobenius_matrix_series", "kummer_record", "xi_closed_form", "xi_via_pullback",
    "dwork_ratio", "kd_rhs", "kd_verify", "xi_ratio_identity_check", "young_verify",
]
