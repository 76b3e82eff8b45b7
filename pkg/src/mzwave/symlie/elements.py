"""Lie algebra of symmetrised differential operators <k|f>.

Elements are rational combinations of terms  coeff * i^a * h^b * eps^c * <k|f>
where <k|f> = (f o d^k + d^k o f)/2 and f is a ScalarField.  Commutators are
evaluated through the hand-checked identity table for the height pairs that
the derivation needs; an internal fallback expands arbitrary pairs through the
associative calculus (used only by the series machinery, never by the public
``commute``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .fields import DEFAULT_ORDER_CAP, ScalarField


class IdentityTableError(ValueError):
    """A commutator was requested outside the identity table."""

    def __init__(self, k: int, l: int):
        super().__init__(f"identity table incomplete for height pair ({k}, {l})")
        self.pair = (k, l)


class HeightUndefinedError(ValueError):
    """The height of the zero element is undefined."""


@dataclass(frozen=True)
class AlgebraTerm:
    """One canonical term coeff * i^i_exp * h^h_exp * eps^eps_exp * <height|field>.

    ``i_exp`` is stored reduced to {0, 1} (i^2 folded into the sign of coeff),
    ``field`` is primitive: its rational content is carried by ``coeff``.
    """

    coeff: Fraction
    i_exp: int
    h_exp: int
    eps_exp: int
    height: int
    field: ScalarField

    def size_class(self) -> int:
        """eps_exp - height: the O(eps^(h*sigma + class)) magnitude class."""
        return self.eps_exp - self.height

    def skew_parity_ok(self) -> bool:
        return (self.i_exp - self.height - 1) % 2 == 0


def _term_key(t: AlgebraTerm):
    return (t.h_exp, t.eps_exp, t.height, t.i_exp)


@dataclass(frozen=True)
class LieElement:
    """Canonical sum of AlgebraTerms, merged by (i, h, eps, height)."""

    terms: tuple[AlgebraTerm, ...]

    @staticmethod
    def zero() -> "LieElement":
        return LieElement(())

    @staticmethod
    def build(raw) -> "LieElement":
        """Canonicalise an iterable of (coeff, i_exp, h_exp, eps_exp, height, field)."""
        acc: dict[tuple, ScalarField] = {}
        for coeff, i_exp, h_exp, eps_exp, height, field in raw:
            coeff = Fraction(coeff)
            i_red = i_exp % 4
            if i_red >= 2:
                coeff, i_red = -coeff, i_red - 2
            f = field.scale(coeff)
            if f.is_zero():
                continue
            key = (i_red, h_exp, eps_exp, height)
            acc[key] = acc[key] + f if key in acc else f
        out = []
        for (i_red, h_exp, eps_exp, height), f in acc.items():
            if f.is_zero():
                continue
            c = f.content()
            out.append(AlgebraTerm(c, i_red, h_exp, eps_exp, height, f.scale(1 / c)))
        return LieElement(tuple(sorted(out, key=_term_key)))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement.build(
            [(t.coeff, t.i_exp, t.h_exp, t.eps_exp, t.height, t.field)
             for t in self.terms + other.terms])

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + other.scale(-1)

    def scale(self, s) -> "LieElement":
        s = Fraction(s)
        if s == 0:
            return LieElement.zero()
        return LieElement.build(
            [(t.coeff * s, t.i_exp, t.h_exp, t.eps_exp, t.height, t.field)
             for t in self.terms])

    def __neg__(self) -> "LieElement":
        return self.scale(-1)

    def substitute_zero(self, slots: tuple[int, ...]) -> "LieElement":
        """Set the potential slices in ``slots`` to zero and re-canonicalise."""
        return LieElement.build(
            [(t.coeff, t.i_exp, t.h_exp, t.eps_exp, t.height,
              t.field.substitute_zero(slots)) for t in self.terms])

    def min_size(self) -> int | None:
        """min over terms of h_exp + eps_exp - height (None for zero)."""
        if not self.terms:
            return None
        return min(t.h_exp + t.eps_exp - t.height for t in self.terms)

    def skew_parity_ok(self) -> bool:
        return all(t.skew_parity_ok() for t in self.terms)


def term(coeff, i_exp: int, h_exp: int, eps_exp: int, height: int,
         field: ScalarField) -> LieElement:
    """Single-term element, canonicalised."""
    return LieElement.build([(Fraction(coeff), i_exp, h_exp, eps_exp, height, field)])


def height_of(a: LieElement) -> int:
    if a.is_zero():
        raise HeightUndefinedError("height of the zero element is undefined")
    return max(t.height for t in a.terms)


def size_exponent(t: AlgebraTerm, sigma) -> Fraction:
    """Asymptotic magnitude exponent sigma*h_exp + eps_exp - height at h = O(eps^sigma)."""
    sigma = Fraction(sigma)
    if not 0 < sigma <= 1:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    return sigma * t.h_exp + t.eps_exp - t.height


def truncate(a: LieElement, power: int = 7) -> LieElement:
    """Drop terms of size O(eps^(power*sigma - 1)) for every sigma in (0, 1].

    A term of magnitude O(eps^(h*sigma + e - k)) is discardable iff
    (h - power)*sigma + (e - k + 1) >= 0 on all of (0, 1]; by linearity this is
    the two-endpoint test below.
    """
    kept = [t for t in a.terms
            if not (t.eps_exp - t.height + 1 >= 0
                    and t.h_exp + t.eps_exp - t.height - (power - 1) >= 0)]
    return LieElement(tuple(kept))


# --- the identity table (hand-checked closed forms) ---
# Each rule maps (f, g) for [<k|f>, <l|g>] with k >= l to [(height, field)].

def _d(f: ScalarField, n: int = 1) -> ScalarField:
    return f.differentiate(n)


def _rule_4_0(f, g):
    return [(3, (f * _d(g)).scale(4)),
            (1, ((_d(f) * _d(g, 2)).scale(3) + f * _d(g, 3)).scale(-2))]


def _rule_3_0(f, g):
    return [(2, (f * _d(g)).scale(3)),
            (0, ((_d(f) * _d(g, 2)).scale(3) + f * _d(g, 3)).scale(Fraction(-1, 2)))]


def _rule_2_2(f, g):
    return [(3, (f * _d(g) - _d(f) * g).scale(2)),
            (1, (_d(f, 2) * _d(g)).scale(2) - (_d(f) * _d(g, 2)).scale(2)
                + _d(f, 3) * g - f * _d(g, 3))]


def _rule_2_1(f, g):
    return [(2, (f * _d(g)).scale(2) - _d(f) * g),
            (0, ((_d(f) * _d(g, 2)).scale(2) + f * _d(g, 3)).scale(Fraction(-1, 2)))]


def _rule_2_0(f, g):
    return [(1, (f * _d(g)).scale(2))]


def _rule_1_1(f, g):
    return [(1, f * _d(g) - _d(f) * g)]


def _rule_1_0(f, g):
    return [(0, f * _d(g))]


def _rule_0_0(f, g):
    return []


IDENTITY_TABLE = {
    (4, 0): _rule_4_0,
    (3, 0): _rule_3_0,
    (2, 2): _rule_2_2,
    (2, 1): _rule_2_1,
    (2, 0): _rule_2_0,
    (1, 1): _rule_1_1,
    (1, 0): _rule_1_0,
    (0, 0): _rule_0_0,
}


# --- general fallback: associative expansion and Jordan re-collection ---

def _jordan_poly(k: int, f: ScalarField) -> dict[int, ScalarField]:
    """<k|f> as sum_j y_j d^j with y_k = f, y_j = C(k,j)/2 * f^(k-j)."""
    out = {k: f}
    for j in range(k):
        y = f.differentiate(k - j).scale(Fraction(comb(k, j), 2))
        if not y.is_zero():
            out[j] = out.get(j, ScalarField.zero()) + y
    return out


def _op_mul(pa: dict[int, ScalarField], pb: dict[int, ScalarField]):
    out: dict[int, ScalarField] = {}
    for i, ai in pa.items():
        for j, bj in pb.items():
            for l in range(i + 1):
                fld = ai * bj.differentiate(i - l).scale(comb(i, l))
                if not fld.is_zero():
                    out[l + j] = out.get(l + j, ScalarField.zero()) + fld
    return {j: v for j, v in out.items() if not v.is_zero()}


def _collect_jordan(p: dict[int, ScalarField]):
    """Rewrite sum_j y_j d^j as sum <m|z_m>, highest order first."""
    out = []
    p = {j: v for j, v in p.items() if not v.is_zero()}
    while p:
        m = max(p)
        z = p[m]
        out.append((m, z))
        for j, y in _jordan_poly(m, z).items():
            r = p.get(j, ScalarField.zero()) - y
            if r.is_zero():
                p.pop(j, None)
            else:
                p[j] = r
    return out


def jordan_commutator(k: int, f: ScalarField, l: int, g: ScalarField):
    """[<k|f>, <l|g>] as [(height, field)] via the associative calculus."""
    pa, pb = _jordan_poly(k, f), _jordan_poly(l, g)
    diff: dict[int, ScalarField] = dict(_op_mul(pa, pb))
    for j, v in _op_mul(pb, pa).items():
        r = diff.get(j, ScalarField.zero()) - v
        if r.is_zero():
            diff.pop(j, None)
        else:
            diff[j] = r
    return _collect_jordan(diff)


def _pair_commutator(k, f, l, g, extend: bool):
    sign = 1
    if k < l:
        k, f, l, g, sign = l, g, k, f, -1
    rule = IDENTITY_TABLE.get((k, l))
    if rule is None:
        if not extend:
            raise IdentityTableError(k, l)
        parts = jordan_commutator(k, f, l, g)
    else:
        parts = rule(f, g)
    if sign < 0:
        parts = [(m, -z) for m, z in parts]
    return parts


def commute(a: LieElement, b: LieElement, *, extend: bool = False,
            prune_size: int | None = None) -> LieElement:
    """Bilinear commutator [a, b].

    Height pairs outside the identity table raise IdentityTableError unless
    ``extend`` is set (internal series machinery only).  ``prune_size`` skips
    term pairs whose every product would have h + eps - height >= the bound
    (height reduction guarantees the estimate), and drops such output terms.
    """
    raw = []
    for ta in a.terms:
        for tb in b.terms:
            if prune_size is not None:
                # every product term has size >= s_a + s_b + 1 and magnitude
                # class >= c_a + c_b + 1 (height reduction), so the whole pair
                # may be skipped when all products land in the discarded class
                csum = (ta.eps_exp - ta.height) + (tb.eps_exp - tb.height)
                if csum >= -2 and (ta.h_exp + ta.eps_exp - ta.height
                                   + tb.h_exp + tb.eps_exp - tb.height
                                   + 1) >= prune_size:
                    continue
            parts = _pair_commutator(ta.height, ta.field, tb.height, tb.field,
                                     extend)
            h_exp = ta.h_exp + tb.h_exp
            eps_exp = ta.eps_exp + tb.eps_exp
            i_exp = ta.i_exp + tb.i_exp
            coeff = ta.coeff * tb.coeff
            for m, z in parts:
                if prune_size is not None and (
                        eps_exp - m + 1 >= 0
                        and h_exp + eps_exp - m >= prune_size):
                    continue
                raw.append((coeff, i_exp, h_exp, eps_exp, m, z))
    return LieElement.build(raw)
