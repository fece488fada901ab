import pytest

from invariants.exceptions import FieldMismatch, ParameterError
from invariants.utils.gfq import (
    binom_mod_p, embedding, get_field, make_extension, prime_power,
)


@pytest.mark.parametrize('q', [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    F = get_field(q)
    elements = F.elements()
    one = F.element(1)
    for a in elements:
        assert a + (-a) == F.element(0)
        if a:
            assert a * a.inv() == one
            assert a ** (q - 1) == one
        for b in elements:
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) * a == a * a + b * a


@pytest.mark.parametrize('q', [2, 3, 4, 8, 9])
def test_frobenius_is_additive_and_periodic(q):
    F = get_field(q)
    for a in range(q):
        x = F.scalar(a)
        assert x.frobenius(F.e) == x
        for b in range(q):
            y = F.scalar(b)
            assert (x + y).frobenius(1) == x.frobenius(1) + y.frobenius(1)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    for bad in (1, 6, 12):
        with pytest.raises(ParameterError):
            prime_power(bad)


def test_get_field_rejects_non_prime_power():
    with pytest.raises(ParameterError):
        get_field(6)


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatch):
        get_field(2).element(1) + get_field(3).element(1)


def test_mixing_with_foreign_type_raises():
    with pytest.raises(TypeError):
        get_field(3).element(1) * 1.5


def test_zero_has_no_inverse():
    with pytest.raises(ParameterError):
        get_field(5).element(0).inv()
    with pytest.raises(ParameterError):
        get_field(4).scalar(0).inv()


def test_integers_map_through_prime_field():
    F = get_field(4)
    assert F.element(3) == F.element(1)
    assert F.element(2) == F.element(0)


def test_representatives_of_f4():
    F = get_field(4)
    g, one = F.scalar(2), F.scalar(1)
    assert g + F.scalar(3) == one
    assert g * g == F.scalar(3)
    assert g.frobenius(1) == g + one
    assert len({a.rep for a in F.elements()}) == 4
    with pytest.raises(ParameterError):
        F.scalar(4)


def test_binom_mod_p_matches_lucas():
    assert binom_mod_p(4, 2, 2) == 0
    assert binom_mod_p(5, 1, 2) == 1
    assert binom_mod_p(6, 3, 3) == 2
    assert binom_mod_p(3, 5, 2) == 0
    assert binom_mod_p(3, -1, 2) == 0


def test_primitive_element_generates():
    F = get_field(9)
    g = F.primitive_element()
    powers = {F.power(g, k) for k in range(8)}
    assert powers == set(range(1, 9))


@pytest.mark.parametrize('q,m', [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_extension_embedding_is_a_homomorphism(q, m):
    small = get_field(q)
    big = make_extension(small, m)
    assert big.q == q ** m
    emb = embedding(small, big)
    assert emb[0] == 0 and emb[1] == 1
    for a in range(q):
        for b in range(q):
            assert emb[small.add(a, b)] == big.add(emb[a], emb[b])
            assert emb[small.mul(a, b)] == big.mul(emb[a], emb[b])


def test_extension_frobenius_fixes_the_base():
    small = get_field(2)
    big = make_extension(small, 3)
    fixed = [a for a in range(big.q) if big.frobenius(a, 1) == a]
    assert sorted(fixed) == [0, 1]
