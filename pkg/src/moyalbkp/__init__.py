"""Exact symbolic engine for Moyal-deformed Lax symbols of BKP type."""

from .diffpoly import (ONE, ZERO, DiffPoly, Gen, Integral, binomial, deriv, eps, euler_op, gen,
                       integral, integrate_x, is_total_derivative, render, substitute)
from .dressing import (DressingOperator, conjugate, dressing_consistency, inverse_coefficients,
                       invert, lax_coefficients)
from .errors import (BadLaxShape, EliminationStuck, FloorTooHigh, InconsistentReduction,
                     InsufficientDepth, MoyalError, NonLocalInput, NotSolvable, ParseError,
                     SelfReference, UnboundedExpansion)
from .hierarchy import (FlowEquation, FlowResult, conservation_check, derive_scalar_equation,
                        flow_commutator, flow_equations, impose_bkp, lax_operator, lax_rhs,
                        scalar_pipeline, solve_for)
from .parser import parse_expression, parse_poly, parse_symbol
from .psymbol import (PSymbol, classical_part, commutator, poisson_bracket, project, residue,
                      star_mul, star_pow)

__version__ = "0.1.0"

__all__ = [
    "BadLaxShape",
    "DiffPoly",
    "DressingOperator",
    "EliminationStuck",
    "FloorTooHigh",
    "FlowEquation",
    "FlowResult",
    "Gen",
    "InconsistentReduction",
    "InsufficientDepth",
    "Integral",
    "MoyalError",
    "NonLocalInput",
    "NotSolvable",
    "ONE",
    "PSymbol",
    "ParseError",
    "SelfReference",
    "UnboundedExpansion",
    "ZERO",
    "binomial",
    "classical_part",
    "commutator",
    "conjugate",
    "conservation_check",
    "deriv",
    "derive_scalar_equation",
    "dressing_consistency",
    "eps",
    "euler_op",
    "flow_commutator",
    "flow_equations",
    "gen",
    "impose_bkp",
    "integral",
    "integrate_x",
    "inverse_coefficients",
    "invert",
    "is_total_derivative",
    "lax_coefficients",
    "lax_operator",
    "lax_rhs",
    "parse_expression",
    "parse_poly",
    "parse_symbol",
    "poisson_bracket",
    "project",
    "render",
    "residue",
    "scalar_pipeline",
    "solve_for",
    "star_mul",
    "star_pow",
    "substitute",
]
