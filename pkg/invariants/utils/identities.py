"""
Identity suite: every closed formula the bases and the filtration rest on,
evaluated exactly for one (q, m).

Each check yields case records; a case is a dict of parameters plus 'ok'.
Checks quantified over all of D_s draw random Dickson words from a seeded
generator, so a run is reproducible from its seed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from invariants.exceptions import InvariantsError
from invariants.models import Composition, DicksonWord
from invariants.utils.basisgen import edge_reduction_check, key_reduction_check, rank2_edge_check
from invariants.utils.combinat import q_int
from invariants.utils.delta import a_closed, delta, delta_iter, top_class, y_closed
from invariants.utils.dickson import Q, Q_quotient, V, bracket, expand, fundamental_check
from invariants.utils.groups import borel_group, coset_reps, full_group, make_group, transfer
from invariants.utils.mvpoly import Poly, act, act_naive, exact_div
from invariants.utils.solver import DEFAULT_MAX_MONOMIALS
from invariants.utils.steenrod import (
    GradedSpan, cartan_check, delta3_mplus1_check, delta3_recursion_check, delta_commutation_check,
    l_action, oracle_check, unstable_check,
)

logger = logging.getLogger(__name__)

MIN_SAMPLES = 50


@dataclass
class SuiteContext:
    m: int
    params: object
    samples: int = MIN_SAMPLES
    seed: int = 20240101
    max_monomials: int = DEFAULT_MAX_MONOMIALS
    rng: np.random.Generator = field(init=False)
    _memo: dict = field(init=False, default_factory=dict)

    def __post_init__(self):
        self.samples = max(self.samples, MIN_SAMPLES)
        self.rng = np.random.default_rng(self.seed)

    @property
    def q(self):
        return self.params.q

    @property
    def cap(self):
        """Largest exponent drawn for a random Dickson word."""
        return min(q_int(self.m, self.q), 3)

    def once(self, key, compute):
        """compute() evaluated once per key; repeated random draws reuse the result."""
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def word(self, s):
        return DicksonWord(tuple(int(e) for e in self.rng.integers(0, self.cap + 1, size=s)))

    def dickson(self, s):
        w = self.word(s)
        return w, expand(w, self.params, s)


def _case(ok, **params):
    return {**params, 'ok': bool(ok)}


# Delta and Dickson identities in Q_m

def check_delta_dickson(ctx):
    """Q_{s,0} delta_s(f) = 0 and the four commutation rules of Dickson invariants with delta."""
    F, m, q = ctx.params, ctx.m, ctx.q
    cases = []
    for _ in range(ctx.samples):
        for s in (1, 2, 3):
            w, f = ctx.dickson(s - 1)
            value = (Q(s, 0, F) * delta(s, m, f)).truncate(m)
            cases.append(_case(value.is_zero(), part=1, s=s, word=str(w)))
        w, f = ctx.dickson(1)
        q10 = Q(1, 0, F)
        lhs = (Q(2, 1, F) * delta(2, m, f)).truncate(m)
        rhs = delta(2, m, q10.power(q) * f).truncate(m)
        cases.append(_case(lhs == rhs, part=2, word=str(w)))
        w, f = ctx.dickson(2)
        for i in (1, 2):
            lhs = (Q(3, i, F) * delta(3, m, f)).truncate(m)
            rhs = delta(3, m, Q(2, i - 1, F).power(q) * f).truncate(m)
            cases.append(_case(lhs == rhs, part=3, i=i, word=str(w)))
        w, f = ctx.dickson(1)
        twice = delta_iter(2, m, 2, f)
        lhs = (Q(3, 2, F) * twice).truncate(m)
        rhs = delta_iter(2, m, 2, q10.power(q * q) * f).truncate(m)
        cases.append(_case(lhs == rhs, part=4, word=str(w)))
        cases.append(_case((Q(3, 1, F) * twice).truncate(m).is_zero(), part=5, word=str(w)))
    return cases


def check_closed_forms(ctx):
    """y_s and a_{m,3,s} against delta, and the two boundary values."""
    F, m, q = ctx.params, ctx.m, ctx.q
    top = q_int(m, q)
    q10 = Q(1, 0, F)
    cases = []
    for s in range(top):
        cases.append(_case(y_closed(m, s, F) == delta(2, m, q10.power(s)), family='y', s=s))
    for s in range(top + 1):
        value = delta_iter(2, m, 2, q10.power(s)).truncate(m)
        cases.append(_case(a_closed(m, s, F) == value, family='a', s=s))
    boundary = delta(2, m, q10.power(top + 1)).truncate(m)
    cases.append(_case(boundary == -top_class(F, 2, m), family='y', s=top + 1))
    boundary = delta_iter(2, m, 2, q10.power(top + 2)).truncate(m)
    cases.append(_case(boundary == top_class(F, 3, m), family='a', s=top + 2))
    return cases


def check_non_descent(ctx):
    """Q_{1,0}^{[m]+1} vanishes in Q_m, yet delta_2 of it does not."""
    F, m = ctx.params, ctx.m
    f = Q(1, 0, F).power(q_int(m, ctx.q) + 1)
    vanishes = f.truncate(m).is_zero()
    image = delta(2, m, f).truncate(m)
    return [_case(vanishes and not image.is_zero(), m=m)]


def check_delta3_closed_forms(ctx):
    """Closed forms of delta_3 on Q_{2,1}^a Q_{2,0}^b with exponents from box boundaries."""
    F, m, q = ctx.params, ctx.m, ctx.q
    q20, q21, q30 = Q(2, 0, F), Q(2, 1, F), Q(3, 0, F)
    one = Poly.one(F, 2)
    cases = []
    for i in range(m + 1):
        qi = q_int(i, q, zero_is_one=False)
        lhs = delta(3, m, q20.power(qi))
        rhs = delta(3, m - i, one).frobenius_power(i) * q30.power(qi)
        cases.append(_case(lhs == rhs, part=1, i=i))
    if m >= 2:
        bound = q_int(m - 2, q, zero_is_one=False)
        cases.append(_case(q30.power(bound + 1, m).is_zero(), part=2, k=bound + 1))
    if m >= 3:
        qm3 = q_int(m - 3, q, zero_is_one=False)
        lhs = delta(3, m, q21.power(q ** (m - 3)) * q20.power(qm3))
        rhs = Q(3, 1, F).power(q ** (m - 3)) * q30.power(qm3)
        cases.append(_case(lhs == rhs, part=3))
    for lam2 in range(m):
        for lam3 in range(lam2 + 1):
            arg = q21.power((q ** lam2 - q ** lam3) // (q - 1)) * q20.power(q_int(lam3, q, zero_is_one=False))
            inner = q21.power(q_int(lam2 - lam3, q, zero_is_one=False))
            rhs = delta(3, m - lam3, inner).frobenius_power(lam3) * q30.power(q_int(lam3, q, zero_is_one=False))
            cases.append(_case(delta(3, m, arg) == rhs, part=4, lam2=lam2, lam3=lam3))
    return cases


def delta2_reduction_expected(s, t, i, m, params):
    """Closed value in Q_m(3) of delta_2(V_1^{s(q-1)} V_2^{t(q-1)} delta_2(Q_{1,0}^i))."""
    q = params.q
    top = q ** m - 1

    def corner(k, c=1):
        return Poly.monomial(params, [top, top, k * (q - 1)], c).truncate(m)

    if t >= 1:
        if s > 1:
            return Poly.zero(params, 3)
        if s == 1:
            return corner(q * t + i - 1)
        return corner(q * t + i - 2, params.from_int(t + 1))
    value = delta_iter(2, m, 2, Q(1, 0, params).power(i + s)).truncate(m)
    if s >= 2:
        value = value - corner(s + i - 2)
    return value


def check_delta2_reduction(ctx):
    F, m = ctx.params, ctx.m
    v1 = V(1, F, 2).power(ctx.q - 1)
    v2 = V(2, F).power(ctx.q - 1)
    cases = []
    for i in range(min(q_int(m, ctx.q), 3) + 1):
        inner = delta(2, m, Q(1, 0, F).power(i))
        for s in range(4):
            for t in range(3):
                value = delta(2, m, v1.power(s) * v2.power(t) * inner).truncate(m)
                expected = delta2_reduction_expected(s, t, i, m, F)
                cases.append(_case(value == expected, s=s, t=t, i=i))
    return cases


def check_corner_span(ctx):
    """delta_3(g delta_2(Q_{1,0}^i)) lies in the span of delta_2^2(Q_{1,0}^s), s < [m], and the corner monomials."""
    F, m, q = ctx.params, ctx.m, ctx.q
    top = q_int(m, q)
    span = GradedSpan(F, 3, m)
    for s in range(top):
        span.add(delta_iter(2, m, 2, Q(1, 0, F).power(s)))
    for s in range(top + 1):
        span.add(Poly.monomial(F, [q ** m - 1, q ** m - 1, s * (q - 1)]))
    cases = []
    for _ in range(ctx.samples):
        w, g = ctx.dickson(2)
        i = int(ctx.rng.integers(0, top + 1))
        value = delta(3, m, g * delta(2, m, Q(1, 0, F).power(i)))
        cases.append(_case(span.contains(value), word=str(w), i=i))
    return cases


def check_transfers(ctx):
    """Relative transfers used to reach the GL_2 and GL_3 generating sets."""
    F, m, q = ctx.params, ctx.m, ctx.q
    top = q_int(m, q)
    e = q ** m - 1
    cases = []
    G2, B2 = full_group(2, F), borel_group(2, F)
    reps2 = coset_reps(G2, B2)
    for s in range(top):
        f = Poly.monomial(F, [e, s * (q - 1)])
        cases.append(_case(transfer(f, reps2, m, B2) == -y_closed(m, s + 1, F), fact='borel', s=s))
        rhs = (y_closed(m, 0, F) * Poly.monomial(F, [(s + 1) * (q - 1), 0]) - y_closed(m, s + 1, F)).truncate(m)
        cases.append(_case(f == rhs, fact='corner', s=s))
    if q ** (3 * m) > ctx.max_monomials:
        logger.debug(f"rank 3 transfers skipped: Q_{m}(3) over F_{q} exceeds the work bound")
        return cases
    G3, H = full_group(3, F), make_group(Composition((1, 2)), F)
    reps3 = coset_reps(G3, H)
    q10, q20, q21 = Q(1, 0, F, 3), Q(2, 0, F), Q(2, 1, F)
    lead = Poly.monomial(F, [e, 0, 0])
    for i1 in range(min(top, 2) + 1):
        for i2 in range(min(top, 2) + 1):
            base = q21.power(i1) * q20.power(i2)
            value = transfer(delta(1, m, base), reps3, m, H)
            expected = delta(3, m, base * q20).truncate(m)
            cases.append(_case(value == expected, fact='delta_1', i1=i1, i2=i2))
            lhs = delta(3, m, base * q20)
            rhs = Q(2, 0, F, 3) * delta(3, m, base) - delta(2, m, Q(1, 0, F, 2) * base)
            cases.append(_case(lhs == rhs, fact='laplace', i1=i1, i2=i2))
    for j in range(top):
        y = delta(2, m, Q(1, 0, F).power(j)).shift_variables(1, 3)
        value = transfer(lead * y, reps3, m, H)
        expected = -delta_iter(2, m, 2, Q(1, 0, F).power(j + 1)).truncate(m)
        cases.append(_case(value == expected, fact='corner_y', j=j))
    for j1 in range(1, min(top, 2) + 1):
        for j2 in range(q_int(m - 1, q, zero_is_one=False)):
            f = q10.power(j1) * delta(3, m, q21.power(j2))
            cases.append(_case(transfer(f, reps3, m, H).is_zero(), fact='vanishing', j1=j1, j2=j2))
    return cases


def check_brackets(ctx):
    """delta_{3;b} as bracket quotients, the delta_{3;b} recursion and the q = 2 and q = 3 degenerations."""
    F, m, q = ctx.params, ctx.m, ctx.q
    base = bracket([0, 1, 2], F)
    one, q21 = Poly.one(F, 2), Q(2, 1, F)
    cases = []
    for b in range(2, m + 2):
        cases.append(_case(delta(3, b, one) == exact_div(bracket([0, 1, b], F), base), form='one', b=b))
        cases.append(_case(delta(3, b, q21) == exact_div(bracket([0, 2, b], F), base), form='q21', b=b))
    cases.append(_case(delta(3, 3, q21) == Q(3, 1, F), form='q31'))
    for _ in range(ctx.samples):
        w = ctx.word(2)
        for b in range(3, m + 2):
            ok = ctx.once(('recursion', str(w), b), lambda: delta3_recursion_check(w, b, F))
            cases.append(_case(ok, form='recursion', word=str(w), b=b))
    if q == 3 and m == 2:
        six = Poly.monomial(F, [6, 6, 6])
        ok = Q(3, 0, F).truncate(2).is_zero() and Q(3, 1, F).truncate(2).is_zero() and Q(3, 2, F).truncate(2) == six
        cases.append(_case(ok, form='degenerate'))
    if q == 2:
        lhs = Poly.monomial(F, [2 ** m, 0]) + Poly.monomial(F, [0, 2 ** m])
        rhs = q21 * delta(2, m, Poly.one(F, 1)) - delta(2, m, Q(1, 0, F).power(2))
        cases.append(_case(lhs == rhs, form='frobenius_sum'))
    return cases


def check_structure(ctx):
    """Fundamental equation, Q by recursion and by brackets, the action axioms and substitution by powers."""
    F, m = ctx.params, ctx.m
    cases = []
    for n in (1, 2, 3):
        cases.append(_case(fundamental_check(n, F), check='fundamental', n=n))
        for i in range(n + 1):
            cases.append(_case(Q(n, i, F) == Q_quotient(n, i, F), check='quotient', n=n, i=i))
    G = full_group(2, F)
    elements = G.elements
    for _ in range(ctx.samples):
        g = elements[int(ctx.rng.integers(len(elements)))]
        h = elements[int(ctx.rng.integers(len(elements)))]
        exps = [int(e) for e in ctx.rng.integers(0, ctx.q ** m, size=2)]
        f = Poly.monomial(F, exps) + Poly.monomial(F, exps[::-1])
        composed = act(g, act(h, f, m), m) == act(g @ h, f, m)
        naive = act(g, f, m) == act_naive(g, f).truncate(m)
        cases.append(_case(composed, check='composition', exps=exps))
        cases.append(_case(naive, check='substitution', exps=exps))
    return cases


def _random_poly(ctx, nvars, terms=3, bound=6):
    F = ctx.params
    f = Poly.zero(F, nvars)
    for _ in range(terms):
        exps = [int(e) for e in ctx.rng.integers(0, bound, size=nvars)]
        f = f + Poly.monomial(F, exps, F.scalar(int(ctx.rng.integers(1, ctx.q))))
    return f


def check_steenrod(ctx):
    """Cartan and unstable axioms, the product-expansion oracle and P^k on L_2, L_3."""
    F = ctx.params
    cases = []
    for _ in range(ctx.samples):
        f, g = _random_poly(ctx, 2), _random_poly(ctx, 2)
        k = int(ctx.rng.integers(0, 6))
        cases.append(_case(cartan_check(f, g, k), axiom='cartan', k=k))
        cases.append(_case(unstable_check(f), axiom='unstable'))
        cases.append(_case(oracle_check(f, 4), axiom='oracle'))
    for n in (2, 3):
        table = l_action(n, F)
        cases.append(_case(all(table.values()), axiom='L', n=n))
    return cases


def check_steenrod_delta(ctx):
    """
    Commutation of P^k with delta_2 and delta_3, and delta_{3;m+1} on D_2.

    The delta_{3;m+1} arguments are Q_{2,1}^a Q_{2,0}^b with a <= 2, b <= 1.
    """
    F, m, q = ctx.params, ctx.m, ctx.q
    cases = []
    for s in range(min(q_int(m, q), 3) + 1):
        f = Q(1, 0, F).power(s)
        degree = f.degree + q ** m - q
        for k in range(degree + 2):
            cases.append(_case(delta_commutation_check('rank2', f, k, m), kind='rank2', s=s, k=k))
    for _ in range(ctx.samples):
        w, f = ctx.dickson(2)
        degree = w.degree(q) + q ** m - q * q
        for k in range(0, degree + 2, max(1, (degree + 2) // 6)):
            ok = ctx.once(('rank3', str(w), k), lambda: delta_commutation_check('rank3', f, k, m))
            cases.append(_case(ok, kind='rank3', word=str(w), k=k))
    if m >= 2 and q ** (3 * m) <= ctx.max_monomials:
        for _ in range(ctx.samples):
            w = DicksonWord((int(ctx.rng.integers(0, 3)), int(ctx.rng.integers(0, 2))))
            ok = ctx.once(('delta3_mplus1', str(w)), lambda: delta3_mplus1_check(w, m, F))
            cases.append(_case(ok, kind='delta3_mplus1', word=str(w)))
    return cases


def check_edges(ctx):
    """Edge decompositions in ranks 2 and 3 and the key reduction."""
    F, m, q = ctx.params, ctx.m, ctx.q
    cases = []
    for row in rank2_edge_check(m, F):
        cases.append(_case(row['ok'], rank=2, i=row['i']))
    for row in key_reduction_check(m, F):
        cases.append(_case(row['ok'], rank=3, l=row['l']))
    if m >= 3 and q ** (3 * m) <= ctx.max_monomials:
        report = edge_reduction_check(m, F)
        for row in report['edges']:
            cases.append(_case(row['in_span'], rank=3, word=row['word']))
    return cases


IDENTITY_CHECKS = [
    ('delta_dickson', check_delta_dickson),
    ('closed_forms', check_closed_forms),
    ('non_descent', check_non_descent),
    ('delta3_closed_forms', check_delta3_closed_forms),
    ('delta2_reduction', check_delta2_reduction),
    ('corner_span', check_corner_span),
    ('transfers', check_transfers),
    ('brackets', check_brackets),
    ('structure', check_structure),
    ('steenrod', check_steenrod),
    ('steenrod_delta', check_steenrod_delta),
    ('edges', check_edges),
]


def run_identities(m, params, samples=MIN_SAMPLES, seed=20240101, max_monomials=DEFAULT_MAX_MONOMIALS,
                   only=None):
    """
    Run the identity suite for one (q, m).

    Args:
        m (int): Truncation level, at least 1
        params (FieldParams): Field
        samples (int): Random Dickson arguments per quantified identity (at least 50)
        seed (int): Seed of the random generator
        max_monomials (int): Rank 3 checks that need Q_m(3) in full are skipped above this size
        only (list): Names of the checks to run; all when None

    Returns:
        dict: {q, m, seed, samples, checks: [{name, cases, passed, failures}], ok}
    """
    ctx = SuiteContext(m, params, samples, seed, max_monomials)
    results = []
    for name, check in IDENTITY_CHECKS:
        if only is not None and name not in only:
            continue
        try:
            cases = check(ctx)
        except InvariantsError as e:
            logger.error(f"Identity check {name} raised: {str(e)}")
            cases = [_case(False, error=str(e))]
        failures = [c for c in cases if not c['ok']]
        results.append({'name': name, 'cases': len(cases), 'passed': len(cases) - len(failures),
                        'failures': failures})
        if failures:
            logger.warning(f"{name}: {len(failures)} of {len(cases)} cases fail for q={params.q}, m={m}")
        else:
            logger.info(f"{name}: {len(cases)} cases hold for q={params.q}, m={m}")
    ok = all(not r['failures'] for r in results)
    return {'q': params.q, 'm': m, 'seed': seed, 'samples': ctx.samples, 'checks': results, 'ok': ok}
