"""Serialisation and display of symbolic elements and splitting schemes.

The JSON layout is stable and round-trips exactly:
  scheme  = {"outer": [exponent, ...], "central": exponent}
  exponent= {"weight": "1/2" | "1", "terms": [term, ...]}
  term    = {"coeff": "p/q", "iExp": int, "hExp": int, "epsExp": int,
             "height": int, "field": [{"coeff": "p/q", "atoms": [[order, slot], ...]}]}
"""
from __future__ import annotations

from fractions import Fraction

from .elements import AlgebraTerm, LieElement
from .fields import ScalarField
from .zassenhaus import SplittingScheme

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def _sup(n: int) -> str:
    return str(n).translate(_SUP)


def field_to_obj(f: ScalarField) -> list[dict]:
    return [{"coeff": str(c), "atoms": [[order, slot] for slot, order in atoms]}
            for atoms, c in f.terms]


def field_from_obj(obj) -> ScalarField:
    acc: dict = {}
    for mono in obj:
        atoms = tuple(sorted((slot, order) for order, slot in mono["atoms"]))
        acc[atoms] = acc.get(atoms, Fraction(0)) + Fraction(mono["coeff"])
    return ScalarField.from_dict(acc)


def element_to_obj(e: LieElement) -> list[dict]:
    return [{"coeff": str(t.coeff), "iExp": t.i_exp, "hExp": t.h_exp,
             "epsExp": t.eps_exp, "height": t.height,
             "field": field_to_obj(t.field)} for t in e.terms]


def element_from_obj(obj) -> LieElement:
    return LieElement.build(
        [(Fraction(t["coeff"]), t["iExp"], t["hExp"], t["epsExp"], t["height"],
          field_from_obj(t["field"])) for t in obj])


def scheme_to_obj(s: SplittingScheme) -> dict:
    out = {"outer": [], "central": {"weight": "1", "terms": element_to_obj(s.central)}}
    for w in s.outer:
        out["outer"].append({"weight": "1/2", "terms": element_to_obj(w)})
    return out


def scheme_from_obj(obj) -> SplittingScheme:
    outer = tuple(element_from_obj(w["terms"]) for w in obj["outer"])
    return SplittingScheme(outer, element_from_obj(obj["central"]["terms"]))


# --- human-readable printers ---

_V = {0: "Ṽ0", 1: "Ṽ1", 2: "Ṽ2"}          # V with tilde
_VLAT = {0: r"\tilde{V}_0", 1: r"\tilde{V}_1", 2: r"\tilde{V}_2"}


def _mono_text(atoms, latex: bool) -> str:
    if not atoms:
        return "1"
    bits = []
    seen: dict = {}
    for a in atoms:
        seen[a] = seen.get(a, 0) + 1
    for (slot, order), mult in seen.items():
        if latex:
            core = _VLAT[slot] if order == 0 else rf"(\partial_x^{{{order}}} {_VLAT[slot]})"
            if mult > 1:
                core += rf"^{{{mult}}}"
        else:
            core = _V[slot] if order == 0 else f"(∂{_sup(order) if order > 1 else ''}{_V[slot]})"
            if mult > 1:
                core += _sup(mult)
        bits.append(core)
    return "".join(bits)


def _field_text(f: ScalarField, latex: bool) -> str:
    bits = []
    for atoms, c in f.terms:
        mono = _mono_text(atoms, latex)
        if c == 1 and atoms:
            piece = mono
        elif c == -1 and atoms:
            piece = f"-{mono}"
        else:
            piece = f"{c}" if not atoms else f"{c}{mono}"
        bits.append(piece)
    out = bits[0]
    for b in bits[1:]:
        out += f" {b}" if b.startswith("-") else f" + {b}"
    return out


def term_text(t: AlgebraTerm, latex: bool = False) -> str:
    pieces = []
    c = t.coeff
    sign = "-" if c < 0 else "+"
    c = abs(c)
    if latex:
        if c != 1:
            pieces.append(rf"\frac{{{c.numerator}}}{{{c.denominator}}}" if c.denominator != 1 else str(c))
        if t.i_exp:
            pieces.append(r"\mathrm{i}")
        if t.h_exp:
            pieces.append(f"h^{{{t.h_exp}}}" if t.h_exp != 1 else "h")
        if t.eps_exp:
            pieces.append(rf"\varepsilon^{{{t.eps_exp}}}" if t.eps_exp != 1 else r"\varepsilon")
        body = rf"\langle {t.height} | {_field_text(t.field, True)} \rangle"
    else:
        if c != 1:
            pieces.append(f"({c})")
        if t.i_exp:
            pieces.append("i")
        if t.h_exp:
            pieces.append(f"h{_sup(t.h_exp) if t.h_exp != 1 else ''}")
        if t.eps_exp:
            pieces.append(f"ε{_sup(t.eps_exp) if t.eps_exp != 1 else ''}")
        body = f"⟨{t.height}| {_field_text(t.field, False)} ⟩"
    head = " ".join(pieces)
    return f"{sign} {head} {body}".replace("  ", " ")


def element_text(e: LieElement, latex: bool = False) -> str:
    if e.is_zero():
        return "0"
    return "\n".join(term_text(t, latex) for t in e.terms)


def scheme_text(s: SplittingScheme, latex: bool = False) -> str:
    lines = []
    for idx, w in enumerate(s.outer):
        lines.append(f"W[{idx}] (weight 1/2 each side):")
        lines.append(element_text(w, latex))
    lines.append("central exponent:")
    lines.append(element_text(s.central, latex))
    return "\n".join(lines)
