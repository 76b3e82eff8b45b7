"""Validation of the symmetric-BCH bracket table by two independent routes.

1. re-derive the coefficients from scratch in the free associative algebra;
2. evaluate the brackets on random skew-Hermitian matrices and compare with
   dense log(expm(X/2) @ expm(Y) @ expm(X/2)).
"""
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import scipy.linalg as sla

from mzwave.symlie import (SBCH_BRACKETS, ScalarField, b_elements,
                           evaluate_bracket, sbch, term, LieElement)

F = Fraction
DEG = 5


# --- route 1: free associative algebra over Q ---

def _amul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) <= DEG:
                w = wa + wb
                out[w] = out.get(w, F(0)) + ca * cb
    return {w: c for w, c in out.items() if c}


def _aadd(a, b):
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, F(0)) + c
    return {w: c for w, c in out.items() if c}


def _ascale(a, s):
    return {w: c * s for w, c in a.items() if c * s}


def _aexp(a):
    out = {(): F(1)}
    p = {(): F(1)}
    fact = 1
    for n in range(1, DEG + 1):
        p = _amul(p, a)
        fact *= n
        out = _aadd(out, _ascale(p, F(1, fact)))
    return out


def _alog(a):
    n = dict(a)
    n[()] = n.get((), F(0)) - 1
    n = {w: c for w, c in n.items() if c}
    out = {}
    p = {(): F(1)}
    for k in range(1, DEG + 1):
        p = _amul(p, n)
        out = _aadd(out, _ascale(p, F((-1) ** (k + 1), k)))
    return out


def _bracket_to_words(spec):
    if spec == 'x':
        return {('x',): F(1)}
    if spec == 'y':
        return {('y',): F(1)}
    l = _bracket_to_words(spec[0])
    r = _bracket_to_words(spec[1])
    return _aadd(_amul(l, r), _ascale(_amul(r, l), F(-1)))


def test_table_matches_associative_log():
    X = {('x',): F(1)}
    Y = {('y',): F(1)}
    Z = _alog(_amul(_amul(_aexp(_ascale(X, F(1, 2))), _aexp(Y)),
                    _aexp(_ascale(X, F(1, 2)))))
    rebuilt = {('x',): F(1), ('y',): F(1)}
    for c, spec in SBCH_BRACKETS:
        rebuilt = _aadd(rebuilt, _ascale(_bracket_to_words(spec), c))
    assert rebuilt == Z


def test_only_odd_grades_present():
    for c, spec in SBCH_BRACKETS:
        def letters(s):
            return 1 if isinstance(s, str) else letters(s[0]) + letters(s[1])
        assert letters(spec) % 2 == 1
        assert c != 0


# --- route 2: dense matrix oracle ---

def _random_skew_herm(rng, n, scale):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = a - a.conj().T
    return a * (scale / np.linalg.norm(a, 2))


def _sbch_matrix(x, y):
    z = x + y
    for c, spec in SBCH_BRACKETS:
        z = z + float(c) * evaluate_bracket(spec, x, y,
                                            lambda a, b: a @ b - b @ a)
    return z


def test_matrix_log_residual_order():
    rng = np.random.default_rng(20240817)
    residuals = []
    for scale in (0.2, 0.1, 0.05):
        errs = []
        for _ in range(6):
            x = _random_skew_herm(rng, 8, scale)
            y = _random_skew_herm(rng, 8, scale)
            ref = sla.logm(sla.expm(x / 2) @ sla.expm(y) @ sla.expm(x / 2))
            errs.append(np.linalg.norm(_sbch_matrix(x, y) - ref, 2))
        residuals.append(np.mean(errs))
    orders = [np.log2(residuals[i] / residuals[i + 1]) for i in range(2)]
    assert min(orders) >= 5.5


# --- symbolic sbch behaviour ---

def test_sbch_with_zero_returns_x():
    b1, b2, _ = b_elements()
    assert sbch(b1, LieElement.zero()) == b1
    assert sbch(LieElement.zero(), b2) == b2


def test_sbch_first_stage_contains_kinetic_correction():
    from mzwave.symlie import omega5, kinetic_exponent
    c1 = sbch(-kinetic_exponent(), omega5())
    want = term(F(1, 6), 1, 3, 1, 2, ScalarField.atom(0, 2))
    got = [t for t in c1.terms if (t.i_exp, t.h_exp, t.eps_exp, t.height) == (1, 3, 1, 2)]
    assert len(got) == 1
    assert LieElement((got[0],)) == want
