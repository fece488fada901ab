import pytest

from invariants.models import DicksonWord
from invariants.utils.dickson import (
    L, L_bracket, Q, Q_quotient, V, bracket, expand, fundamental_check, phi,
)
from invariants.utils.gfq import get_field
from invariants.utils.groups import full_group
from invariants.utils.mvpoly import Poly, exact_div, parse

F2 = get_field(2)
F3 = get_field(3)


def test_v2_over_f2():
    assert V(2, F2) == parse("x2^2 + x1*x2", F2, 2)


def test_v2_over_f4_has_four_linear_factors():
    F4 = get_field(4)
    v2 = V(2, F4)
    assert v2 == parse("x1^3*x2 + x2^4", F4, 2)
    x1, x2 = Poly.variable(F4, 2, 1), Poly.variable(F4, 2, 2)
    factors = {str(x2 + x1.scale(lam)) for lam in F4.elements()}
    assert len(factors) == 4
    for lam in F4.elements():
        exact_div(v2, x2 + x1.scale(lam))
    assert L(2, F4) == L_bracket(2, F4)


def test_q21_over_f2():
    assert str(Q(2, 1, F2)) == "x1^2 + x1*x2 + x2^2"


def test_boundary_indices():
    assert str(Q(2, 2, F2)) == "1"
    assert str(Q(2, -1, F2)) == "0"
    assert Q(3, 4, F3).is_zero()


def test_l2_is_the_bracket():
    assert L(2, F2) == parse("x1*x2^2 + x1^2*x2", F2, 2)
    assert L(2, F3) == L_bracket(2, F3)
    assert L(3, F2) == L_bracket(3, F2)


def test_repeated_bracket_indices_vanish():
    assert bracket([1, 1], F3).is_zero()
    assert bracket([0, 2, 2], F2).is_zero()


@pytest.mark.parametrize('q,n', [(2, 2), (2, 3), (3, 2), (4, 2), (3, 3)])
def test_recursion_matches_bracket_quotient(q, n):
    F = get_field(q)
    for i in range(n):
        assert Q(n, i, F) == Q_quotient(n, i, F)


@pytest.mark.parametrize('q,n', [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1), (4, 2)])
def test_fundamental_equation(q, n):
    assert fundamental_check(n, get_field(q))


@pytest.mark.parametrize('q', [2, 3, 4])
def test_dickson_invariants_are_gl_fixed(q):
    F = get_field(q)
    G = full_group(2, F)
    for i in range(2):
        assert G.fixes(Q(2, i, F))


def test_degrees():
    for i in range(3):
        assert Q(3, i, F2).degree == 2 ** 3 - 2 ** i


def test_expand_words():
    assert expand(DicksonWord((0, 0)), F2) == Poly.one(F2, 2)
    assert expand(DicksonWord((1, 0)), F2) == Q(2, 1, F2)
    assert expand(DicksonWord((2, 1)), F3) == Q(2, 1, F3).power(2) * Q(2, 0, F3)


def test_phi_shifts_indices():
    assert phi(DicksonWord((2, 1))) == DicksonWord((2, 1, 0))
