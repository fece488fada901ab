import pytest

from invariants.exceptions import InexactDivision, ParameterError
from invariants.models import Composition, DicksonWord
from invariants.utils.combinat import (
    Classification, SeriesPoly, admissible_betas, classify, conjecture_total, delta_space,
    delta_space_series, dickson_type, gauss_binom, hilbert_conjecture, in_delta_space,
    partitions_in_box, q_int, qt_multinomial, qt_multinomial_factored,
)


def test_q_integers():
    assert q_int(3, 2) == 7
    assert q_int(0, 5) == 1
    assert q_int(0, 5, zero_is_one=False) == 0
    assert q_int(1, 3) == 1
    with pytest.raises(ParameterError):
        q_int(-1, 2)


def test_gaussian_binomials():
    assert gauss_binom(2, 1, 2) == 3
    assert gauss_binom(4, 0, 3) == 1
    assert gauss_binom(3, 1, 2) == 7
    assert gauss_binom(2, 3, 2) == 0


def test_partitions_in_box():
    boxes = [p.parts for p in partitions_in_box(2, 1)]
    assert boxes == [(0, 0), (1, 0), (1, 1)]
    assert [p.parts for p in partitions_in_box(0, 3)] == [()]


def test_delta_space_small_cases():
    assert [w.exps for w in delta_space(2, 1, 2)] == [(0,), (1,), (2,)]
    assert [w.exps for w in delta_space(2, 2, 2)] == [(0, 0)]
    assert delta_space(2, 3, 2) == []
    assert delta_space(5, 0, 3) == [DicksonWord(())]


@pytest.mark.parametrize('m,s,q', [(2, 1, 2), (3, 2, 2), (3, 1, 3), (4, 2, 2), (3, 3, 2)])
def test_delta_space_size_is_gaussian(m, s, q):
    assert len(delta_space(m, s, q)) == gauss_binom(m, s, q)
    assert delta_space_series(m, s, q) == qt_multinomial(m, (s, m - s), q)


def test_every_delta_space_word_is_essential():
    for w in delta_space(3, 2, 2):
        assert in_delta_space(w, 3, 2)
        assert classify(w, 3, 2) is Classification.ESSENTIAL


def test_edge_word():
    word = DicksonWord((3, 0))
    assert dickson_type(word, 2).parts == (2, 0)
    assert classify(word, 3, 2) is Classification.EDGE


def test_words_far_outside_are_neither():
    assert classify(DicksonWord((0, 9)), 3, 2) is Classification.NEITHER


def test_qt_multinomial_small():
    assert qt_multinomial(2, (1, 1), 2) == SeriesPoly([1, 1, 1])
    assert qt_multinomial(3, (3,), 2) == SeriesPoly.one()
    with pytest.raises(ParameterError):
        qt_multinomial(3, (1, 1), 2)


@pytest.mark.parametrize('parts,q', [((1, 1, 1), 2), ((2, 1), 3), ((1, 2, 1), 2), ((2, 0, 1), 2)])
def test_factored_multinomial_agrees(parts, q):
    d = sum(parts)
    assert qt_multinomial_factored(d, parts, q) == qt_multinomial(d, parts, q)


def test_multinomial_at_one_counts_flags():
    assert qt_multinomial(3, (1, 1, 1), 2).total() == 21


def test_conjecture_series():
    assert str(hilbert_conjecture(Composition((1,)), 2, 2)) == "1 + t + t^2 + t^3"
    assert hilbert_conjecture(Composition((2,)), 2, 2).total() == 5


@pytest.mark.parametrize('alpha,m,q', [((2,), 2, 2), ((2, 1), 2, 2), ((1, 2), 3, 2), ((1, 1, 1), 2, 3)])
def test_conjecture_total_matches_series(alpha, m, q):
    alpha = Composition(alpha)
    assert conjecture_total(alpha, m, q) == hilbert_conjecture(alpha, m, q).total()


def test_reversed_compositions_share_totals():
    assert conjecture_total(Composition((2, 1)), 3, 2) == conjecture_total(Composition((1, 2)), 3, 2)


def test_admissible_betas_respect_level():
    betas = [b.parts for b in admissible_betas(Composition((2, 1)), 1)]
    assert betas == [(0, 0), (0, 1), (1, 0)]


def test_series_arithmetic():
    f = SeriesPoly([1, 1])
    assert (f * f) == SeriesPoly([1, 2, 1])
    assert SeriesPoly([1, 0, 0, -1]).divide_one_minus(1) == SeriesPoly([1, 1, 1])
    with pytest.raises(InexactDivision):
        SeriesPoly([1, 1]).divide_one_minus(2)
    assert SeriesPoly.from_json(f.to_json()) == f
    assert str(SeriesPoly([0, -2, 0, 1])) == "-2*t + t^3"
