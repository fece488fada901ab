"""
End-to-end agreement between the conjectured series, the brute-force solver,
the explicit bases and the orbit count, on a desk-scale grid.
"""
import pytest

from invariants.models import Composition
from invariants.utils.basisgen import build, verify_independence_and_span, verify_invariance
from invariants.utils.combinat import conjecture_total, hilbert_conjecture
from invariants.utils.gfq import get_field
from invariants.utils.groups import make_group
from invariants.utils.solver import orbit_count, verify_hilbert
from invariants.utils.steenrod import verify_filtration

COMPOSITIONS = ['1', '2', '1,1', '3', '2,1', '1,2', '1,1,1']
GRID = [(2, m, a) for m in (2, 3) for a in COMPOSITIONS] + [(3, 2, a) for a in COMPOSITIONS]
GRID += [pytest.param(q, m, a, marks=pytest.mark.slow) for q, m in ((2, 4), (3, 3)) for a in COMPOSITIONS]


@pytest.mark.parametrize('q,m,alpha', GRID)
def test_hilbert_series_equality(q, m, alpha):
    report = verify_hilbert(Composition.parse(alpha), m, q)
    assert report['equal'], report


@pytest.mark.parametrize('q,m,alpha', GRID)
def test_basis_is_an_invariant_basis(q, m, alpha):
    alpha = Composition.parse(alpha)
    params = get_field(q)
    G = make_group(alpha, params)
    elems = build(alpha, m, params)
    assert verify_invariance(elems, G, m)['invariant']
    report = verify_independence_and_span(elems, G, m)
    assert report['independent'] and report['spanning']


@pytest.mark.parametrize('q,m,alpha', GRID)
def test_counting_chain(q, m, alpha):
    alpha = Composition.parse(alpha)
    total = conjecture_total(alpha, m, q)
    assert hilbert_conjecture(alpha, m, q).total() == total
    assert len(build(alpha, m, get_field(q))) == total
    assert orbit_count(alpha, m, q) == total


@pytest.mark.parametrize('q,m,n,k', [
    (2, 2, 2, 1), (2, 2, 3, 1), (2, 3, 2, 1), (2, 3, 3, 1), (2, 3, 3, 2), (3, 2, 2, 1), (3, 2, 3, 1),
])
def test_filtration_is_closed(q, m, n, k):
    report = verify_filtration(n, k, m, get_field(q))
    assert report['ok'], report['failures'][:5]


def test_reversed_compositions_have_equal_totals():
    a = verify_hilbert(Composition((2, 1)), 3, 2)
    b = verify_hilbert(Composition((1, 2)), 3, 2)
    assert a['totals']['bruteforce'] == b['totals']['bruteforce']


@pytest.mark.slow
@pytest.mark.parametrize('q,m,expected', [(2, 4, 676), (3, 3, 248)])
def test_borel_totals_at_larger_levels(q, m, expected):
    report = verify_hilbert(Composition((1, 1, 1)), m, q)
    assert report['equal']
    assert report['totals']['orbits'] == expected
