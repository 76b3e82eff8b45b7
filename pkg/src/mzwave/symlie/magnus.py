"""Gauss-Legendre quadrature Magnus expansions Omega5 and Omega3.

The three-point quadrature turns the time-dependent generator into the
self-adjoint basis B1, B2, B3 built from the slices V_0 (midpoint value),
V_1 (scaled first difference) and V_2 (scaled second difference); the grade-5
expansion then collapses to seven nested commutators, all evaluated inside
the identity table.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .elements import LieElement, commute, term, truncate
from .fields import ScalarField


def b_elements() -> tuple[LieElement, LieElement, LieElement]:
    """B1 = i*h*eps*<2|1> - i*h/eps*<0|V0>, B2 = -i*h^2/eps*<0|V1>, B3 = -i*h^3/eps*<0|V2>."""
    b1 = (term(1, 1, 1, 1, 2, ScalarField.one())
          + term(-1, 1, 1, -1, 0, ScalarField.atom(0)))
    b2 = term(-1, 1, 2, -1, 0, ScalarField.atom(1))
    b3 = term(-1, 1, 3, -1, 0, ScalarField.atom(2))
    return b1, b2, b3


@lru_cache(maxsize=None)
def omega5() -> LieElement:
    """Grade-5 Magnus exponent, exact rationals, truncated at O(eps^(7s-1))."""
    b1, b2, b3 = b_elements()
    c = commute
    theta = b1
    theta = theta + b3.scale(Fraction(1, 12))
    theta = theta + c(b1, b2).scale(Fraction(-1, 12))
    theta = theta + c(b2, b3).scale(Fraction(1, 240))
    theta = theta + c(b1, c(b1, b3)).scale(Fraction(1, 360))
    theta = theta + c(b2, c(b1, b2)).scale(Fraction(-1, 240))
    theta = theta + c(b1, c(b1, c(b1, b2))).scale(Fraction(1, 720))
    return truncate(theta)


@lru_cache(maxsize=None)
def omega3() -> LieElement:
    """Grade-3 truncation (order-4 scheme seed), truncated at O(eps^(5s-1))."""
    b1, b2, b3 = b_elements()
    theta = b1 + b3.scale(Fraction(1, 12)) + commute(b1, b2).scale(Fraction(-1, 12))
    return truncate(theta, power=5)
