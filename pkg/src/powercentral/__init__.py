"""Exact noncommutative algebra for generalized power central group identities."""

__version__ = "0.1.0"

from .algebra import (
    Element,
    FiniteField,
    MatrixAlgebra,
    QuaternionAlgebra,
    RationalField,
    arith,
    invert,
    is_central,
)
from .literals import format_element, parse_algebra, parse_element
from .minpoly import MinimalPolynomial, is_torsion, minimal_polynomial
from .words import (
    Monomial,
    SeriesDescriptor,
    build_c,
    build_u,
    check_star_form,
    evaluate,
    format_monomial,
    inverse,
    multiply,
    parse_monomial,
    substitute,
)
