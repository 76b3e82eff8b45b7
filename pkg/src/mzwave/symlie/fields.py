"""Exact symbolic scalar fields: rational combinations of monomials in d^m V_j.

An atom is the m-th spatial derivative of one of the three quadrature slices
V_0, V_1, V_2 of the potential.  All coefficients are exact rationals; two
fields are equal iff their canonical forms are identical.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

DEFAULT_ORDER_CAP = 8

#: an atom is the pair (slot, order): the order-th x-derivative of V_slot
Atom = tuple[int, int]
#: a monomial's factor multiset, canonically sorted by (slot, order)
Atoms = tuple[Atom, ...]


class DerivativeCapError(ValueError):
    """Raised when differentiation would exceed the configured order cap."""


def _check_atom(slot: int, order: int, cap: int = DEFAULT_ORDER_CAP) -> None:
    if slot not in (0, 1, 2):
        raise ValueError(f"potential slot must be 0, 1 or 2, got {slot}")
    if order < 0:
        raise ValueError(f"derivative order must be >= 0, got {order}")
    if order > cap:
        raise DerivativeCapError(f"derivative order {order} exceeds cap {cap}")


@dataclass(frozen=True)
class ScalarField:
    """Canonical sum of rational-coefficient monomials in derivative atoms.

    ``terms`` maps each sorted atom tuple to its nonzero coefficient; the
    empty atom tuple is the constant function 1.
    """

    terms: tuple[tuple[Atoms, Fraction], ...]

    @staticmethod
    def from_dict(d: dict[Atoms, Fraction]) -> "ScalarField":
        items = tuple(sorted((a, c) for a, c in d.items() if c != 0))
        return ScalarField(items)

    @staticmethod
    def zero() -> "ScalarField":
        return ScalarField(())

    @staticmethod
    def one() -> "ScalarField":
        return ScalarField.constant(Fraction(1))

    @staticmethod
    def constant(c) -> "ScalarField":
        c = Fraction(c)
        return ScalarField((((), c),)) if c else ScalarField(())

    @staticmethod
    def atom(slot: int, order: int = 0, cap: int = DEFAULT_ORDER_CAP) -> "ScalarField":
        _check_atom(slot, order, cap)
        return ScalarField(((((slot, order),), Fraction(1)),))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ScalarField") -> "ScalarField":
        out = dict(self.terms)
        for a, c in other.terms:
            out[a] = out.get(a, Fraction(0)) + c
        return ScalarField.from_dict(out)

    def __sub__(self, other: "ScalarField") -> "ScalarField":
        return self + other.scale(Fraction(-1))

    def scale(self, s) -> "ScalarField":
        s = Fraction(s)
        if s == 0:
            return ScalarField.zero()
        return ScalarField(tuple((a, c * s) for a, c in self.terms))

    def __neg__(self) -> "ScalarField":
        return self.scale(Fraction(-1))

    def __mul__(self, other: "ScalarField") -> "ScalarField":
        out: dict[Atoms, Fraction] = {}
        for aa, ca in self.terms:
            for ab, cb in other.terms:
                key = tuple(sorted(aa + ab))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return ScalarField.from_dict(out)

    def differentiate(self, times: int = 1, cap: int = DEFAULT_ORDER_CAP) -> "ScalarField":
        """d/dx applied ``times`` times, by the product rule on atoms."""
        if times < 0:
            raise ValueError("differentiation count must be >= 0")
        field = self
        for _ in range(times):
            out: dict[Atoms, Fraction] = {}
            for atoms, c in field.terms:
                for i, (slot, order) in enumerate(atoms):
                    _check_atom(slot, order + 1, cap)
                    bumped = tuple(sorted(atoms[:i] + ((slot, order + 1),) + atoms[i + 1:]))
                    out[bumped] = out.get(bumped, Fraction(0)) + c
            field = ScalarField.from_dict(out)
        return field

    def substitute_zero(self, slots: tuple[int, ...]) -> "ScalarField":
        """Set V_j = 0 for the given slots: drop every monomial touching them."""
        dead = set(slots)
        return ScalarField(tuple(
            (a, c) for a, c in self.terms if not any(s in dead for s, _ in a)
        ))

    def content(self) -> Fraction:
        """Common rational factor, signed so the extracted field leads positive."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for _, c in self.terms:
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        g = Fraction(num, den)
        return g if self.terms[0][1] > 0 else -g

    def max_order(self, slot: int) -> int:
        """Highest derivative order of V_slot appearing (-1 if absent)."""
        best = -1
        for atoms, _ in self.terms:
            for s, o in atoms:
                if s == slot and o > best:
                    best = o
        return best

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for atoms, c in self.terms:
            mono = "*".join(
                (f"d{o}V{s}" if o else f"V{s}") for s, o in atoms
            ) or "1"
            bits.append(f"{c}*{mono}")
        return " + ".join(bits)


def field_multiply(f: ScalarField, g: ScalarField) -> ScalarField:
    return f * g


def field_differentiate(f: ScalarField, times: int = 1,
                        cap: int = DEFAULT_ORDER_CAP) -> ScalarField:
    return f.differentiate(times, cap)
