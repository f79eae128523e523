"""Exact Laurent-coefficient tests for the Gorenstein functional equation."""

__version__ = "0.1.0"

from .exactnum import CycloNumber, Rational
from .series import LaurentAtOne, RationalFunction, TruncatedSeries, rational_to_laurent
from .fgraded import (
    DeltaVector,
    GradedElement,
    check_functional_equation,
    check_relations,
    delta_decompose,
    delta_reconstruct,
    even_from_odd,
    graded_multiply,
    odd_from_even,
)
from .molien import (
    FiniteGroup,
    GroupElement,
    gorenstein_screen,
    group_closure,
    molien_series,
    pseudoreflection_count,
    stratified_gammas,
)
from .powersum import SymmetricTriangle, power_sum, powersum_generating_element, verify_gould
from .triangles import emit_pascal_rescaled, emit_rescaled, emit_triangle, lucas_triangle
