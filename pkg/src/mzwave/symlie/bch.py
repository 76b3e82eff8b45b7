"""Symmetric Baker-Campbell-Hausdorff series through total grade 5.

``SBCH_BRACKETS`` lists the nonzero coefficients of
log(exp(X/2) exp(Y) exp(X/2)) in the Lyndon bracket basis on two letters,
derived by exact Gaussian elimination in the free associative algebra over Q
(only odd grades survive, by the symmetry of the composition).  The table is
cross-checked in the test suite both against an independent re-derivation and
against dense matrix exponential/logarithm evaluations.
"""
from __future__ import annotations

from fractions import Fraction

from .elements import LieElement, commute

#: bracket specs: 'x' / 'y' leaves, 2-tuples for [left, right]
Bracket = object

SBCH_BRACKETS: tuple[tuple[Fraction, tuple], ...] = (
    (Fraction(-1, 24), ('x', ('x', 'y'))),
    (Fraction(1, 12), (('x', 'y'), 'y')),
    (Fraction(7, 5760), ('x', ('x', ('x', ('x', 'y'))))),
    (Fraction(-7, 1440), ('x', ('x', (('x', 'y'), 'y')))),
    (Fraction(1, 360), (('x', ('x', 'y')), ('x', 'y'))),
    (Fraction(1, 180), ('x', ((('x', 'y'), 'y'), 'y'))),
    (Fraction(1, 120), (('x', 'y'), (('x', 'y'), 'y'))),
    (Fraction(-1, 720), (((('x', 'y'), 'y'), 'y'), 'y')),
)


def evaluate_bracket(spec, x, y, commutator):
    """Evaluate a nested bracket spec with a caller-supplied commutator.

    Works for any carrier: LieElements, matrices (commutator = AB - BA), ...
    """
    if spec == 'x':
        return x
    if spec == 'y':
        return y
    return commutator(evaluate_bracket(spec[0], x, y, commutator),
                      evaluate_bracket(spec[1], x, y, commutator))


def _letters(spec) -> int:
    return 1 if isinstance(spec, str) else _letters(spec[0]) + _letters(spec[1])


def _min_size(spec, sx, sy) -> int:
    """Lower bound on h + eps - height for the bracket value (height reduction)."""
    if spec == 'x':
        return sx
    if spec == 'y':
        return sy
    return _min_size(spec[0], sx, sy) + _min_size(spec[1], sx, sy) + 1


def sbch(x: LieElement, y: LieElement, *, power: int = 7) -> LieElement:
    """Z with e^{X/2} e^{Y} e^{X/2} = e^{Z}, truncated like ``truncate(.., power)``.

    Bracket evaluation prunes, at every level, terms that height reduction
    already condemns to the discarded O(eps^(power*sigma - 1)) class; that
    bound is what keeps all arising commutators inside representable heights.
    """
    from .elements import truncate

    sx, sy = x.min_size(), y.min_size()
    z = truncate(x + y, power)
    if sx is None or sy is None:
        # one argument is zero: every bracket vanishes
        return z

    def eval_spec(spec, slack: int):
        if spec == 'x':
            return x
        if spec == 'y':
            return y
        left, right = spec
        lslack = slack + _min_size(right, sx, sy) + 1
        rslack = slack + _min_size(left, sx, sy) + 1
        return commute(eval_spec(left, lslack), eval_spec(right, rslack),
                       extend=True, prune_size=power - 1 - slack)

    for coeff, spec in SBCH_BRACKETS:
        z = z + eval_spec(spec, 0).scale(coeff)
    return truncate(z, power)
