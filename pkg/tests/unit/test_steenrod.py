import pytest

from invariants.exceptions import NotInvariant, ParameterError
from invariants.models import DicksonWord
from invariants.utils.delta import delta_iter, top_class
from invariants.utils.dickson import Q
from invariants.utils.gfq import binom_mod_p, get_field
from invariants.utils.mvpoly import Poly, parse
from invariants.utils.steenrod import (
    Filtration, GradedSpan, cartan_check, delta3_mplus1_check, delta3_recursion_check,
    delta_commutation_check, flexible_span_check, l_action, oracle_check, steenrod_power,
    total_power, unstable_check, verify_filtration,
)

F2 = get_field(2)
F3 = get_field(3)


def x(i, n=2, F=F3):
    return Poly.variable(F, n, i)


def test_identity_and_negative_index():
    f = parse("x1^2*x2 + 2*x2^3", F3, 2)
    assert steenrod_power(0, f) == f
    assert steenrod_power(-1, f).is_zero()


def test_powers_of_a_linear_form():
    v = x(1) + 2 * x(2)
    j = 4
    for i in range(j + 1):
        expected = v.power(j + i * 2).scale(binom_mod_p(j, i, 3))
        assert steenrod_power(i, v.power(j)) == expected


def test_truncated_power_is_the_class():
    f = parse("x1^2*x2 + x2^3", F3, 2)
    assert steenrod_power(2, f, m=1) == steenrod_power(2, f).truncate(1)


@pytest.mark.parametrize('k', range(5))
def test_cartan_formula(k):
    f = parse("x1^2 + x1*x2", F3, 2)
    g = parse("x2^2 + 2*x1", F3, 2)
    assert cartan_check(f, g, k)


def test_cartan_in_characteristic_two():
    f = Poly.variable(F2, 1, 1)
    assert cartan_check(f, f, 1)


def test_total_operation_oracle():
    f = parse("x1^3*x2 + x2^2 + 2*x1", F3, 2)
    assert oracle_check(f, 6)
    assert len(total_power(f, 6)) == 7


def test_total_operation_over_f4_keeps_coefficients():
    F4 = get_field(4)
    g = F4.scalar(2)
    f = Poly.variable(F4, 2, 1).scale(g) * Poly.variable(F4, 2, 2) + Poly.variable(F4, 2, 2) ** 2
    assert oracle_check(f, 3)
    assert total_power(f, 1)[1] == steenrod_power(1, f)
    assert total_power(f, 1)[1].coefficient([4, 1]) == g


def test_unstable_conditions():
    assert unstable_check(parse("x1^2*x2 + x2^3 + x1", F3, 2))
    assert unstable_check(Q(2, 1, F2))


@pytest.mark.parametrize('n,q', [(2, 2), (2, 3), (3, 2)])
def test_action_on_l(n, q):
    results = l_action(n, get_field(q))
    assert all(results.values())


def test_l_action_is_tabulated_for_small_rank():
    with pytest.raises(ParameterError):
        l_action(4, F2)


@pytest.mark.parametrize('k', range(6))
def test_rank2_commutation(k):
    assert delta_commutation_check('rank2', Q(1, 0, F2), k, 2)


def test_rank2_commutation_over_f3():
    f = Q(1, 0, F3).power(2)
    for k in range(0, 12, 3):
        assert delta_commutation_check('rank2', f, k, 2)


@pytest.mark.parametrize('k', range(3))
def test_rank3_commutation(k):
    assert delta_commutation_check('rank3', Q(2, 1, F2), k, 3)


def test_commutation_checks_the_hypothesis():
    with pytest.raises(NotInvariant):
        delta_commutation_check('rank2', Poly.variable(F3, 1, 1), 1, 1)
    with pytest.raises(ParameterError):
        delta_commutation_check('rank4', Q(1, 0, F2), 1, 2)


@pytest.mark.parametrize('exps', [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)])
def test_delta3_mplus1_over_f2(exps):
    assert delta3_mplus1_check(DicksonWord(exps), 2, F2)


@pytest.mark.parametrize('exps', [(0, 0), (1, 0), (0, 1)])
def test_delta3_mplus1_over_f3(exps):
    assert delta3_mplus1_check(DicksonWord(exps), 2, F3)


def test_delta3_mplus1_vanishes_for_large_q():
    assert delta3_mplus1_check(DicksonWord((0, 0)), 2, get_field(5))


def test_delta3_mplus1_needs_level_two():
    with pytest.raises(ParameterError):
        delta3_mplus1_check(DicksonWord((0, 0)), 1, F2)


@pytest.mark.parametrize('b', [3, 4])
def test_delta3_recursion(b):
    assert delta3_recursion_check(DicksonWord((1, 0)), b, F2)
    assert delta3_recursion_check(DicksonWord((0, 0)), b, F3)


def test_graded_span():
    span = GradedSpan(F2, 2, 2)
    span.add(parse("x1^3 + x1*x2^2", F2, 2))
    assert span.contains(parse("x1^3 + x1*x2^2", F2, 2))
    assert not span.contains(parse("x1^3", F2, 2))
    assert span.dimensions() == {3: 1}


def test_filtration_bottom_is_the_top_class():
    filt = Filtration(2, 0, 2, F2)
    assert len(filt.elements) == 1
    assert filt.contains(top_class(F2, 2, 2))
    assert filt.elements[0]['value'] == delta_iter(1, 2, 2, Poly.one(F2, 0))


def test_filtration_arguments():
    with pytest.raises(ParameterError):
        Filtration(4, 1, 5, F2)
    with pytest.raises(ParameterError):
        Filtration(2, 2, 3, F2)


@pytest.mark.parametrize('n,k,m', [(2, 1, 2), (3, 1, 2), (3, 1, 3), (3, 2, 3)])
def test_filtration_closure(n, k, m):
    report = verify_filtration(n, k, m, F2)
    assert report['base_is_top']
    assert report['steenrod_closed']
    assert report['dickson_closed']
    assert report['annihilated']
    assert report['ok']


def test_filtration_over_f3():
    assert verify_filtration(2, 1, 2, F3)['ok']


@pytest.mark.parametrize('n,k,m', [(2, 1, 2), (3, 1, 2)])
def test_flexible_span(n, k, m):
    report = flexible_span_check(n, k, m, F2)
    assert report['ok']
    assert report['words'] >= len(Filtration(n, k, m, F2).elements)
