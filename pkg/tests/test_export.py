import json

from mzwave.symlie import omega5, zassenhaus_split
from mzwave.symlie.export import (element_from_obj, element_to_obj,
                                  element_text, scheme_from_obj,
                                  scheme_text, scheme_to_obj)


def test_element_json_roundtrip():
    e = omega5()
    blob = json.dumps(element_to_obj(e))
    assert element_from_obj(json.loads(blob)) == e


def test_scheme_json_roundtrip():
    s = zassenhaus_split(omega5(), 2)
    blob = json.dumps(scheme_to_obj(s))
    back = scheme_from_obj(json.loads(blob))
    assert back.outer == s.outer
    assert back.central == s.central


def test_term_schema_shape():
    obj = scheme_to_obj(zassenhaus_split(omega5(), 2))
    assert set(obj) == {"outer", "central"}
    w2 = obj["outer"][2]
    assert w2["weight"] == "1/2"
    t = w2["terms"][0]
    assert set(t) == {"coeff", "iExp", "hExp", "epsExp", "height", "field"}
    assert all(len(a) == 2 for mono in t["field"] for a in mono["atoms"])


def test_pretty_printer_mentions_expected_pieces():
    s = zassenhaus_split(omega5(), 2)
    txt = scheme_text(s)
    assert "(1/12)" in txt and "(1/6)" in txt
    assert "⟨2|" in txt  # <2| bracket
    latex = scheme_text(s, latex=True)
    assert r"\langle" in latex and r"\varepsilon" in latex


def test_pretty_printer_zero():
    from mzwave.symlie import LieElement
    assert element_text(LieElement.zero()) == "0"
