"""Chabauty-style analysis of rational points on y^2 = x^5 + A."""

from .core_arith import Factorization, factorize, parse_factored, tenth_power_free_reduce, trivial_point_count
from .padic import LinearForm, PadicNumber
from .series import TruncatedSeries
from .expansions import ClassKind, ExpansionResult, expand
from .zero_bounds import ZeroBoundResult, strassmann_bound
from .curve_points import RationalPoint, SearchReport, search_points
from .case_filter import FilterVerdict, best_bound

__version__ = "0.1.0"
