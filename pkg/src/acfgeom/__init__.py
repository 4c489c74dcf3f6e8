"""Definable sets over algebraically closed fields.

Quantifier elimination, elimination of "there exist infinitely many" through
the slope-set criterion, dimension, uniform finiteness bounds, and brute-force
finite-field oracles that check all of it.
"""
from .algebra import GF, FqElement, MultiPoly, CoeffDomain, QQ, pseudo_divide, prem
from .algebra.ratfunc import RatFunc
from .formula import parse, parse_poly, to_text, prenex, to_dnf, ParseError, ShadowingError
from .qe import FieldContext, qe, decide, simplify, eliminate_one
from .geometric import (rewrite_inf_many, is_infinite, dimension, dimension_criterion,
                        bounding_polys, slope_cover_check, dichotomy, frobenius_injection_demo,
                        PreconditionError)
from .oracle import (eval_fpbar, count_points, point_count_growth, qf_univariate_finiteness,
                     exhaustive_trick_sweep)

__version__ = "0.1.0"
