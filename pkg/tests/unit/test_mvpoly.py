import pytest

from invariants.exceptions import FieldMismatch, NotDivisible, ParameterError
from invariants.utils.gfq import get_field
from invariants.utils.linalg import MatrixGF
from invariants.utils.mvpoly import (
    Poly, act, act_naive, det, exact_div, key_degree, pack, parse, to_text, unpack,
)

F2 = get_field(2)
F3 = get_field(3)
F4 = get_field(4)


def x(i, n=3, F=F2):
    return Poly.variable(F, n, i)


def test_pack_orders_lexicographically():
    assert pack((1, 0, 0)) > pack((0, 5, 5))
    assert unpack(pack((3, 0, 7)), 3) == (3, 0, 7)
    assert key_degree(pack((3, 0, 7))) == 10


def test_ring_laws():
    a, b, c = x(1) + x(2), x(2) * x(3) + 1, x(1) ** 3
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a - a == Poly.zero(F2, 3)
    assert (a * b) * c == a * (b * c)


def test_frobenius_power_is_a_ring_map():
    f = x(1, 2, F3) + 2 * x(2, 2, F3)
    assert f.power(3) == f.frobenius_power(1)
    assert f.power(9) == f.frobenius_power(2)


def test_power_with_truncation_matches_truncated_power():
    f = x(1, 2) + x(2, 2) + 1
    assert f.power(5, m=2) == f.power(5).truncate(2)


def test_truncate_drops_high_exponents():
    f = Poly.monomial(F2, (4, 0)) + Poly.monomial(F2, (3, 3))
    assert f.truncate(2) == Poly.monomial(F2, (3, 3))
    assert f.truncate(1).is_zero()


def test_degree_and_homogeneity():
    f = x(1) * x(2) + x(3) ** 2
    assert f.degree == 2
    assert f.is_homogeneous()
    assert not (f + 1).is_homogeneous()
    assert Poly.zero(F2, 3).degree is None


def test_text_round_trip_over_gf9():
    F9 = get_field(9)
    f = Poly.monomial(F9, (2, 1), 5) + Poly.monomial(F9, (0, 3), 1) + Poly.constant(F9, 2, 7)
    assert parse(to_text(f), F9, 2) == f


def test_text_format():
    f = x(1, 2) ** 2 + x(1, 2) * x(2, 2) + x(2, 2) ** 2
    assert to_text(f) == "x1^2 + x1*x2 + x2^2"
    assert to_text(Poly.zero(F2, 2)) == "0"
    assert to_text(Poly.one(F2, 2)) == "1"


def test_parse_rejects_unknown_variables():
    with pytest.raises(ParameterError):
        parse("x4", F2, 3)


def test_mixing_ambient_rings_raises():
    with pytest.raises(FieldMismatch):
        x(1, 2) + x(1, 3)
    with pytest.raises(FieldMismatch):
        x(1, 2) + x(1, 2, F3)


def test_exact_division():
    f = (x(1) + x(2)) * (x(2) + x(3)) * x(1)
    assert exact_div(f, x(2) + x(3)) == (x(1) + x(2)) * x(1)


def test_inexact_division_carries_remainder():
    with pytest.raises(NotDivisible) as info:
        exact_div(x(1) * x(2) + 1, x(1))
    assert info.value.remainder is not None
    assert not info.value.remainder.is_zero()


def test_vandermonde_determinant():
    xs = [x(i, 2, F3) for i in (1, 2)]
    mat = [[v for v in xs], [v ** 3 for v in xs]]
    expected = xs[0] * xs[1] ** 3 - xs[0] ** 3 * xs[1]
    assert det(mat) == expected


def test_action_convention():
    # x_j -> sum_i g[i][j] x_i
    g = MatrixGF(F2, [[1, 1], [0, 1]])
    assert act(g, x(1, 2)) == x(1, 2)
    assert act(g, x(2, 2)) == x(1, 2) + x(2, 2)


def test_scaling_by_extension_scalars_keeps_representatives():
    g = F4.scalar(2)
    f = x(1, 1, F4)
    assert f.scale(g).coefficient([1]) == g
    assert f.scale(2).is_zero()
    assert f * g * g == f.scale(F4.scalar(3))


def test_action_over_f4_keeps_coefficients():
    g = MatrixGF(F4, [[1, 2], [0, 1]])
    assert to_text(act(g, x(2, 2, F4))) == "2*x1 + x2"
    f = x(2, 2, F4).scale(F4.scalar(3))
    assert to_text(act(g, f)) == "x1 + 3*x2"
    assert act_naive(g, f) == act(g, f)


def test_action_composes():
    g = MatrixGF(F3, [[1, 2, 0], [0, 1, 0], [1, 0, 2]])
    h = MatrixGF(F3, [[0, 1, 0], [1, 0, 0], [0, 1, 1]])
    f = x(1, 3, F3) ** 4 * x(2, 3, F3) + 2 * x(3, 3, F3) ** 5
    assert act(g, act(h, f)) == act(g @ h, f)


def test_action_matches_naive_substitution():
    g = MatrixGF(F3, [[1, 1], [2, 1]])
    f = x(1, 2, F3) ** 7 * x(2, 2, F3) ** 2 + x(2, 2, F3) ** 4
    assert act(g, f) == act_naive(g, f)
    assert act(g, f, m=2) == act_naive(g, f).truncate(2)


def test_singular_matrix_rejected():
    with pytest.raises(ParameterError):
        act(MatrixGF(F2, [[1, 1], [1, 1]]), x(1, 2))


def test_variable_bookkeeping():
    f = x(1, 2) * x(2, 2) ** 2
    assert f.extend(3) == x(1) * x(2) ** 2
    assert f.shift_variables(1) == x(2) * x(3) ** 2
    assert f.insert_variable(2) == x(1) * x(3) ** 2
    assert (f + x(1, 2)).set_zero(2) == x(1, 2)
