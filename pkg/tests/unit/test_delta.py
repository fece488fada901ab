import pytest

from invariants.exceptions import NotDivisible, ParameterError
from invariants.utils.combinat import q_int
from invariants.utils.delta import (
    a_closed, delta, delta_iter, delta_truncated, top_class, y_closed,
)
from invariants.utils.dickson import Q
from invariants.utils.gfq import get_field
from invariants.utils.groups import full_group
from invariants.utils.mvpoly import Poly, parse

F2 = get_field(2)
F3 = get_field(3)


@pytest.mark.parametrize('q,m', [(2, 2), (3, 1), (2, 3)])
def test_delta1_of_one(q, m):
    F = get_field(q)
    one = Poly.one(F, 0)
    assert delta(1, m, one) == Poly.monomial(F, (q ** m - 1,))
    assert delta_iter(1, m, 3, one) == top_class(F, 3, m)


def test_delta2_of_q10():
    assert delta(2, 2, Q(1, 0, F2)) == parse("x1^2*x2 + x1*x2^2", F2, 2)


def test_delta2_top_boundary():
    m = 2
    f = Q(1, 0, F2).power(q_int(m, 2) + 1)
    assert delta_truncated(2, m, f, m) == top_class(F2, 2, m)


def test_zero_reps_is_identity():
    f = Q(1, 0, F3)
    assert delta_iter(2, 2, 0, f) == f


def test_non_invariant_argument_is_not_divisible():
    with pytest.raises(NotDivisible):
        delta(2, 1, Poly.variable(F3, 1, 1))


def test_argument_range():
    with pytest.raises(ParameterError):
        delta(3, 2, Poly.one(F2, 1))
    with pytest.raises(ParameterError):
        delta(1, -1, Poly.one(F2, 0))


@pytest.mark.parametrize('q,m', [(2, 2), (2, 3), (3, 2)])
def test_y_family(q, m):
    F = get_field(q)
    q10 = Q(1, 0, F)
    for s in range(q_int(m, q)):
        assert y_closed(m, s, F) == delta(2, m, q10.power(s))


def test_y1_small_case():
    assert y_closed(2, 1, F2) == parse("x1^2*x2 + x1*x2^2", F2, 2)


def test_y_is_gl2_fixed_at_q_integers():
    m = 3
    G = full_group(2, F2)
    for i in range(m + 1):
        assert G.fixes(y_closed(m, q_int(i, 2, zero_is_one=False), F2))


def test_a_family():
    m = 2
    q10 = Q(1, 0, F2)
    assert len(a_closed(m, 0, F2)) == 6
    for s in range(q_int(m, 2) + 1):
        assert a_closed(m, s, F2) == delta_iter(2, m, 2, q10.power(s)).truncate(m)
    top = delta_iter(2, m, 2, q10.power(q_int(m, 2) + 2)).truncate(m)
    assert top == top_class(F2, 3, m)


def test_delta3_is_gl3_fixed():
    m = 2
    f = delta(3, m, Q(2, 1, F2) * Q(2, 0, F2))
    assert full_group(3, F2).fixes(f, m)
