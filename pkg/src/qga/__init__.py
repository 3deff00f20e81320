"""Quadric geometric algebra: Clifford kernel, QnGA model, transforms, oracle."""

__version__ = "0.1.0"

from .clifford import Metric, Multivector, monomial_to_wedge, normal_ordered_product
from .errors import QgaError
from .model import ConicClass, QgaContext, QuadricMatrix, VectorClass
from .oracle import (
    ImplicitPolynomial,
    PolynomialSystem,
    blade_to_system,
    centered_inversion_reference,
    grid_equivalence,
    sample_zero_set,
)
from .transforms import (
    DualQuaternion,
    InversionResult,
    apply_versor_to_point,
    dual_quaternion_to_versor,
    invert_blade,
    invert_point,
    line_through_origin,
    pin_membership,
    rotor_from_angles,
    rotor_from_lines,
    sandwich,
    se2_subalgebra_basis,
    self_action_check,
    translator_from_lines,
    versor_to_dual_quaternion,
)

__all__ = [
    "Metric",
    "Multivector",
    "QgaContext",
    "QuadricMatrix",
    "VectorClass",
    "ConicClass",
    "QgaError",
    "ImplicitPolynomial",
    "PolynomialSystem",
    "blade_to_system",
    "centered_inversion_reference",
    "grid_equivalence",
    "sample_zero_set",
    "DualQuaternion",
    "InversionResult",
    "apply_versor_to_point",
    "dual_quaternion_to_versor",
    "invert_blade",
    "invert_point",
    "line_through_origin",
    "pin_membership",
    "rotor_from_angles",
    "rotor_from_lines",
    "sandwich",
    "se2_subalgebra_basis",
    "self_action_check",
    "translator_from_lines",
    "versor_to_dual_quaternion",
    "monomial_to_wedge",
    "normal_ordered_product",
]
