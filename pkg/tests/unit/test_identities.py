import pytest

from invariants.exceptions import ParameterError
from invariants.utils import identities
from invariants.utils.gfq import get_field
from invariants.utils.identities import IDENTITY_CHECKS, MIN_SAMPLES, SuiteContext, run_identities

F2 = get_field(2)
F3 = get_field(3)

NAMES = [name for name, _ in IDENTITY_CHECKS]


def test_sample_floor():
    ctx = SuiteContext(2, F2, samples=5)
    assert ctx.samples == MIN_SAMPLES


def test_seed_reproduces_words():
    a = SuiteContext(3, F2, seed=11)
    b = SuiteContext(3, F2, seed=11)
    assert [a.word(2) for _ in range(10)] == [b.word(2) for _ in range(10)]
    assert all(max(w.exps) <= a.cap for w in (a.word(3) for _ in range(20)))


@pytest.mark.parametrize('name', NAMES)
def test_each_check_holds_over_f2(name):
    report = run_identities(2, F2, only=[name])
    (check,) = report['checks']
    assert check['name'] == name
    assert check['cases'] > 0
    assert check['failures'] == []


@pytest.mark.parametrize('name', NAMES)
def test_each_check_holds_over_f3(name):
    report = run_identities(2, F3, only=[name])
    assert report['ok'], report['checks'][0]['failures'][:3]


@pytest.mark.slow
@pytest.mark.parametrize('name', NAMES)
def test_each_check_holds_at_level_three(name):
    report = run_identities(3, F2, only=[name])
    assert report['ok'], report['checks'][0]['failures'][:3]


def test_quantified_identities_use_every_sample():
    report = run_identities(2, F2, only=['brackets'])
    assert report['checks'][0]['passed'] >= MIN_SAMPLES
    report = run_identities(2, F2, only=['steenrod'])
    assert report['checks'][0]['cases'] >= 3 * MIN_SAMPLES


def test_steenrod_delta_draws_at_least_the_sample_floor():
    ctx = SuiteContext(2, F2)
    cases = identities.check_steenrod_delta(ctx)
    assert sum(1 for c in cases if c['kind'] == 'delta3_mplus1') == MIN_SAMPLES
    assert sum(1 for c in cases if c['kind'] == 'rank3') >= MIN_SAMPLES
    assert all(c['ok'] for c in cases)


def test_repeated_draws_are_computed_once():
    ctx = SuiteContext(2, F2)
    calls = []

    def compute():
        calls.append(1)
        return True

    assert ctx.once(('k', 1), compute) and ctx.once(('k', 1), compute)
    assert len(calls) == 1


def test_random_coefficients_cover_extension_fields():
    F4 = get_field(4)
    ctx = SuiteContext(1, F4, seed=3)
    coefficients = set()
    for _ in range(20):
        f = identities._random_poly(ctx, 2)
        coefficients.update(c.rep for _, c in f.items())
    assert coefficients & {2, 3}


def test_report_shape():
    report = run_identities(2, F2, seed=5, only=['non_descent'])
    assert report['q'] == 2
    assert report['seed'] == 5
    assert report['samples'] == MIN_SAMPLES
    assert report['ok']


def test_errors_become_failed_cases(monkeypatch):
    def boom(ctx):
        raise ParameterError("no such case")

    monkeypatch.setattr(identities, 'IDENTITY_CHECKS', [('boom', boom)])
    report = run_identities(2, F2)
    assert not report['ok']
    assert report['checks'][0]['failures'][0]['error'] == "no such case"
