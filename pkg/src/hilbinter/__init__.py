"""Exact Hilbert functions, lex ideals, generic initial ideals and Tor under general changes of coordinates."""

from .generic import Direction, GenericityProtocol, gin, general_statistic, random_coords, random_triangular
from .groebner import buchberger, free_resolution, initial_ideal, normal_form, syzygies
from .io import parse_ideal_file, parse_ideal_text
from .linalg import dim_intersection, dim_product, dim_sum, hilbert_function, hilbert_value
from .monomial import MonomialIdeal, is_lex_ideal, is_opposite_zero_borel, is_zero_borel, lexify
from .ring import GF, LEX, OPLEX, QQ, REVLEX, ChangeOfCoordinates, Field, Ideal, Polynomial, Ring, TermOrder
from .suites import ExperimentConfig, VerificationReport, run_suites
from .tor import taylor_resolution, tor_hilbert, tor_table, vanishing_window_check

__all__ = [
    "Direction", "GenericityProtocol", "gin", "general_statistic", "random_coords", "random_triangular",
    "buchberger", "free_resolution", "initial_ideal", "normal_form", "syzygies",
    "parse_ideal_file", "parse_ideal_text",
    "dim_intersection", "dim_product", "dim_sum", "hilbert_function", "hilbert_value",
    "MonomialIdeal", "is_lex_ideal", "is_opposite_zero_borel", "is_zero_borel", "lexify",
    "GF", "LEX", "OPLEX", "QQ", "REVLEX", "ChangeOfCoordinates", "Field", "Ideal", "Polynomial", "Ring", "TermOrder",
    "ExperimentConfig", "VerificationReport", "run_suites",
    "taylor_resolution", "tor_hilbert", "tor_table", "vanishing_window_check",
]
