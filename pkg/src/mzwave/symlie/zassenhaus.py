"""Symmetric Zassenhaus extraction on a truncated Magnus exponent.

Repeatedly peels the largest exponent off via the symmetric BCH formula:
    C^{k+1} = sbch(-W^k, C^k),   W^{k+1} = [terms with h^{2k+1}, eps-class -1]
yielding exp(C^0) ~ e^{W0/2} ... e^{Ws/2} e^{C^{s+1}} e^{Ws/2} ... e^{W0/2}.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bch import sbch
from .elements import LieElement, term
from .fields import ScalarField


@dataclass(frozen=True)
class SplittingScheme:
    """Palindromic splitting: outer exponents (each weight 1/2 per side) and center."""

    outer: tuple[LieElement, ...]
    central: LieElement

    def skew_parity_ok(self) -> bool:
        return (all(w.skew_parity_ok() for w in self.outer)
                and self.central.skew_parity_ok())


def kinetic_exponent() -> LieElement:
    """W0 = i*h*eps*<2|1>, the free-Laplacian exponent."""
    return term(1, 1, 1, 1, 2, ScalarField.one())


def _select(elem: LieElement, h_exp: int) -> LieElement:
    picked = tuple(t for t in elem.terms
                   if t.h_exp == h_exp and t.eps_exp - t.height == -1)
    return LieElement(picked)


def zassenhaus_split(omega: LieElement, stages: int, *,
                     power: int = 7) -> SplittingScheme:
    """Split exp(omega) into ``stages`` extracted exponents plus a center.

    The extraction class at stage k is h^(2k+1) with eps-class -1, i.e. the
    O(eps^((2k+1)sigma - 1)) terms.  An empty class ends the iteration early
    with the current central exponent.
    """
    if stages < 1:
        raise ValueError("need at least one extraction stage")
    w0 = kinetic_exponent()
    outer = [w0]
    central = omega
    for k in range(stages):
        central = sbch(-outer[-1], central, power=power)
        wk = _select(central, 2 * k + 1)
        if wk.is_zero():
            return SplittingScheme(tuple(outer), central)
        outer.append(wk)
    central = sbch(-outer[-1], central, power=power)
    return SplittingScheme(tuple(outer), central)
