"""Complete sets of mutually unbiased bases in prime-power dimensions."""

from .galois import FieldContext, FieldError, GFElement, ZpPolynomial, find_irreducible, trace
from .spin import PhasedSpinOp, SpinIndex, TensorSpinIndex, spin_matrix, tensor_spin_matrix
from .classes import (
    INFINITY,
    ClassLabel,
    CommutingClass,
    MubFamily,
    build_family,
    classes_general,
    classes_prime,
    classes_prime_squared,
    verify_partition,
)
from .projections import check_mub, extract_basis, family_projections, projections_prime, projections_tensor
from .separability import decompose_class, factored_projections
from .tomography import measure_probs, reconstruct_general, reconstruct_prime

__all__ = [
    "FieldContext", "FieldError", "GFElement", "ZpPolynomial", "find_irreducible", "trace",
    "PhasedSpinOp", "SpinIndex", "TensorSpinIndex", "spin_matrix", "tensor_spin_matrix",
    "INFINITY", "ClassLabel", "CommutingClass", "MubFamily", "build_family", "classes_general",
    "classes_prime", "classes_prime_squared", "verify_partition",
    "check_mub", "extract_basis", "family_projections", "projections_prime", "projections_tensor",
    "decompose_class", "factored_projections",
    "measure_probs", "reconstruct_general", "reconstruct_prime",
]

__version__ = "0.1.0"
