"""Exact symbolic engine: fields, the <k|f> Lie algebra, Magnus and Zassenhaus."""
from .fields import (DEFAULT_ORDER_CAP, DerivativeCapError, ScalarField,
                     field_differentiate, field_multiply)
from .elements import (AlgebraTerm, HeightUndefinedError, IdentityTableError,
                       LieElement, commute, height_of, jordan_commutator,
                       size_exponent, term, truncate)
from .bch import SBCH_BRACKETS, evaluate_bracket, sbch
from .magnus import b_elements, omega3, omega5
from .zassenhaus import SplittingScheme, kinetic_exponent, zassenhaus_split
from . import export

__all__ = [
    "DEFAULT_ORDER_CAP", "DerivativeCapError", "ScalarField",
    "field_differentiate", "field_multiply",
    "AlgebraTerm", "HeightUndefinedError", "IdentityTableError", "LieElement",
    "commute", "height_of", "jordan_commutator", "size_exponent", "term",
    "truncate",
    "SBCH_BRACKETS", "evaluate_bracket", "sbch",
    "b_elements", "omega3", "omega5",
    "SplittingScheme", "kinetic_exponent", "zassenhaus_split",
    "export",
]
