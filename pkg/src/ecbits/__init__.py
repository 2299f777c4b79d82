"""Desk-scale verification of character-sum bounds and bit extraction
statistics for points on elliptic curves over prime fields."""

from .charsum import (
    BoundReport,
    count_product_collisions,
    subgroup_sum,
    sum_S,
    sum_T,
    sum_U,
    sum_V,
)
from .curve import (
    INFINITY,
    Curve,
    CurvePoint,
    GroupStructure,
    group_structure,
    rational_division_points,
    sqrt_in_base_or_ext,
    subgroup_of_order,
)
from .divpoly import DivisionPolynomials
from .extract import (
    BitWindow,
    ChiSquareReport,
    DeviationReport,
    bitstream,
    chi_square_uniformity,
    count_A,
    delta,
    fourier_count_A,
    lsb_string,
    pack_bits,
)
from .field import (
    Fp2,
    PreconditionError,
    PrimeField,
    ResourceBudgetError,
    field,
    incomplete_geometric_sum,
    orthogonality_indicator,
)
from .poly import Poly, RationalFn, poly_gcd, pth_power_root, rational_square_test, squarefree_part

__all__ = [
    "BitWindow",
    "BoundReport",
    "ChiSquareReport",
    "Curve",
    "CurvePoint",
    "DeviationReport",
    "DivisionPolynomials",
    "Fp2",
    "GroupStructure",
    "INFINITY",
    "Poly",
    "PreconditionError",
    "PrimeField",
    "RationalFn",
    "ResourceBudgetError",
    "bitstream",
    "chi_square_uniformity",
    "count_A",
    "count_product_collisions",
    "delta",
    "field",
    "fourier_count_A",
    "group_structure",
    "incomplete_geometric_sum",
    "lsb_string",
    "orthogonality_indicator",
    "pack_bits",
    "poly_gcd",
    "pth_power_root",
    "rational_division_points",
    "rational_square_test",
    "sqrt_in_base_or_ext",
    "squarefree_part",
    "subgroup_of_order",
    "subgroup_sum",
    "sum_S",
    "sum_T",
    "sum_U",
    "sum_V",
]
