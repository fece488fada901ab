import pytest

from invariants.exceptions import NotInvariant, ParameterError, WorkBoundExceeded
from invariants.models import Composition
from invariants.utils.combinat import q_int
from invariants.utils.delta import y_closed
from invariants.utils.dickson import Q
from invariants.utils.gfq import get_field
from invariants.utils.groups import (
    borel_group, closure, coset_reps, full_group, gl_generators, gl_order,
    leading_block_generators, make_group, parabolic_order, transfer,
)
from invariants.utils.mvpoly import Poly

F2 = get_field(2)
F3 = get_field(3)


@pytest.mark.parametrize('n,q,order', [(2, 2, 6), (3, 2, 168), (2, 3, 48), (1, 3, 2)])
def test_general_linear_orders(n, q, order):
    G = full_group(n, get_field(q))
    assert gl_order(n, q) == order
    assert G.order() == order


@pytest.mark.parametrize('alpha,order', [((1, 1, 1), 8), ((2, 1), 24), ((1, 2), 24), ((1, 1), 2)])
def test_parabolic_orders_over_f2(alpha, order):
    G = make_group(Composition(alpha), F2)
    assert parabolic_order(Composition(alpha), 2) == order
    assert G.order() == G.predicted_order == order


def test_borel_over_f3():
    assert borel_group(2, F3).order() == 2 * 2 * 3


def test_parabolic_fixes_the_first_line():
    # x_1 spans a line stable under P(1,2)
    G = make_group(Composition((1, 2)), F2)
    assert G.fixes(Poly.variable(F2, 3, 1))
    assert not full_group(3, F2).fixes(Poly.variable(F2, 3, 1))


def test_gl1_over_f2_is_trivial():
    assert gl_generators(1, F2) == []
    assert full_group(1, F2).order() == 1


def test_closure_respects_order_limit():
    with pytest.raises(WorkBoundExceeded):
        closure(gl_generators(3, F2), F2, 3, max_order=10)


def test_leading_block():
    gens = leading_block_generators(2, 3, F2)
    assert len(closure(gens, F2, 3)) == 6
    with pytest.raises(ParameterError):
        leading_block_generators(4, 3, F2)


@pytest.mark.parametrize('big,small,index', [((2,), (1, 1), 3), ((3,), (1, 1, 1), 21), ((3,), (2, 1), 7)])
def test_coset_counts(big, small, index):
    G = make_group(Composition(big), F2)
    H = make_group(Composition(small), F2)
    reps = coset_reps(G, H)
    assert len(reps) == index
    assert len(coset_reps(G, H, seed=7)) == index


def test_cosets_need_a_subgroup():
    G = make_group(Composition((2, 1)), F2)
    H = make_group(Composition((1, 2)), F2)
    with pytest.raises(ParameterError):
        coset_reps(G, H)


def test_borel_to_gl2_transfer():
    m, q = 2, 2
    G, B = full_group(2, F2), borel_group(2, F2)
    reps = coset_reps(G, B)
    for s in range(q_int(m, q)):
        f = Poly.monomial(F2, (q ** m - 1, s * (q - 1)))
        assert transfer(f, reps, m, B) == -y_closed(m, s + 1, F2)


def test_transfer_is_g_invariant():
    m = 2
    G, B = full_group(2, F3), borel_group(2, F3)
    f = Poly.monomial(F3, (8, 4))
    image = transfer(f, coset_reps(G, B), m, B)
    assert G.fixes(image, m)


def test_transfer_rejects_non_invariant_argument():
    G, B = full_group(2, F2), borel_group(2, F2)
    with pytest.raises(NotInvariant):
        transfer(Poly.variable(F2, 2, 2), coset_reps(G, B), 2, B)


def test_gl2_over_f4_fixes_dickson_invariants():
    F4 = get_field(4)
    G = full_group(2, F4)
    assert G.order() == gl_order(2, 4) == 180
    assert G.fixes(Q(2, 0, F4))
    assert G.fixes(Q(2, 1, F4))
    assert not G.fixes(Poly.variable(F4, 2, 1))
