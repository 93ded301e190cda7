"""Exact Clifford-analysis toolkit: CK extensions, Fueter-Sce maps,
harmonic polynomial families and plane-wave decompositions."""

from .algebra import (
    Blade,
    CliffordElement,
    Q,
    Rational,
    clifford_mul,
    grade_project,
    paravector_conjugate,
)
from .polynomial import (
    CliffordPolynomial,
    LaplacianPower,
    Op,
    apply_operator,
    evaluate,
    variable_power,
    vector_op_product,
)

__version__ = "0.1.0"

__all__ = [
    "Blade",
    "CliffordElement",
    "CliffordPolynomial",
    "LaplacianPower",
    "Op",
    "Q",
    "Rational",
    "apply_operator",
    "clifford_mul",
    "evaluate",
    "grade_project",
    "paravector_conjugate",
    "variable_power",
    "vector_op_product",
]
