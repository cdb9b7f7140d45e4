"""Rainbow-free 3-colorings of Z_p for linear equations in three variables."""

from .classify import (
    ClassificationResult,
    StructureReport,
    TransformFamily,
    classify,
    construct_equal_coeffs,
    construct_singleton,
    dilation_group,
    match_structure,
    rainbow_criterion_ap3,
    transform_family,
)
from .coloring import AffineMap, Color, Coloring, parse_coloring
from .equation import Equation, SolutionTriple, find_rainbow, is_rainbow_free, normalize_b, parse_equation
from .oracle import EnumerationFilter, OracleReport, cross_validate, enumerate_colorings, enumerate_rainbow_free, min_class_scan
from .zp import DomainError, Modulus, Subgroup, subgroup_generated

__version__ = "0.1.0"
