"""Exact computations with logarithmic vector fields over the rationals."""

from .poly import Point, Poly, Ring, RingMismatch, evaluate, partial_derivative, poly_arith, poly_pow
from .parse import ParseError, parse_poly
from .groebner import FreeVec, GB, groebner_basis, is_member, reduce, syzygies
from .ideals import (Ideal, PolyMat, codim, contains, dimension, eliminate, gcd_poly,
                     ideal_equal, intersect, is_reduced, jacobian, membership, minors_ideal,
                     power, quotient, radical_equal, radical_membership, saturate,
                     singular_locus_ideal, squarefree_part, symbolic_power)
from .derlog import (VField, VFModule, apply_field, derlog_hypersurface, derlog_ideal,
                     euler_field, field_value, fitting_ideal, is_logarithmic, lie_bracket,
                     linearize, minimal_generator_count, module_equal, module_membership,
                     saito_matrix, span_dim, trivial_generators)
from .criteria import (CheckReport, ComponentSpec, check_bound_and_sharpness,
                       check_smooth_fitting, component_condition, generalized_saito_check,
                       linear_free_divisor_check, saito_criterion, saito_second_criterion,
                       smooth_criterion, smooth_fitting_formula, thm_bound)
from .corpus import list_examples, run_example

__version__ = "0.1.0"

__all__ = [
    "Point",
    "Poly",
    "Ring",
    "RingMismatch",
    "evaluate",
    "partial_derivative",
    "poly_arith",
    "poly_pow",
    "ParseError",
    "parse_poly",
    "FreeVec",
    "GB",
    "groebner_basis",
    "is_member",
    "reduce",
    "syzygies",
    "Ideal",
    "PolyMat",
    "codim",
    "contains",
    "dimension",
    "eliminate",
    "gcd_poly",
    "ideal_equal",
    "intersect",
    "is_reduced",
    "jacobian",
    "membership",
    "minors_ideal",
    "power",
    "quotient",
    "radical_equal",
    "radical_membership",
    "saturate",
    "singular_locus_ideal",
    "squarefree_part",
    "symbolic_power",
    "VField",
    "VFModule",
    "apply_field",
    "derlog_hypersurface",
    "derlog_ideal",
    "euler_field",
    "field_value",
    "fitting_ideal",
    "is_logarithmic",
    "lie_bracket",
    "linearize",
    "minimal_generator_count",
    "module_equal",
    "module_membership",
    "saito_matrix",
    "span_dim",
    "trivial_generators",
    "CheckReport",
    "ComponentSpec",
    "check_bound_and_sharpness",
    "check_smooth_fitting",
    "component_condition",
    "generalized_saito_check",
    "linear_free_divisor_check",
    "saito_criterion",
    "saito_second_criterion",
    "smooth_criterion",
    "smooth_fitting_formula",
    "thm_bound",
    "list_examples",
    "run_example",
]
