"""
Steenrod reduced powers on S = F_q[x_1..x_n] and on Q_m(n), their commutation
with delta, and the filtration F_{n,k} of Q_m(n)^{GL_n} by Steenrod submodules.

The total operation sends a linear form v to v + v^q t and is a ring map, so on
a monomial P^k(x^e) = sum over k_1 + .. + k_n = k of prod_i C(e_i, k_i) x_i^{e_i + k_i(q-1)}.
The ideal I_m is stable, hence everything descends to Q_m by truncation.
"""
from __future__ import annotations

import logging
from collections import defaultdict

import numpy as np

from invariants.exceptions import NotInvariant, ParameterError
from invariants.models import DicksonWord
from invariants.utils.basisgen import dickson_words_of_degree
from invariants.utils.combinat import delta_space
from invariants.utils.delta import delta, delta_iter
from invariants.utils.dickson import L_bracket, Q, expand
from invariants.utils.gfq import binom_mod_p
from invariants.utils.groups import leading_block_generators
from invariants.utils.linalg import MatrixGF, RowSpace
from invariants.utils.mvpoly import Poly, Substitution, key_degree, pack, unpack
from invariants.utils.solver import graded_basis

logger = logging.getLogger(__name__)


def _choices(e, k, p, q, bound):
    """(k_i, C(e, k_i) mod p, new exponent) for one variable."""
    out = []
    for i in range(min(e, k) + 1):
        new = e + i * (q - 1)
        if bound is not None and new >= bound:
            break
        b = binom_mod_p(e, i, p)
        if b:
            out.append((i, b, new))
    return out


def _spread(choices, k, idx, p):
    if idx == len(choices):
        if k == 0:
            yield (), 1
        return
    for i, b, new in choices[idx]:
        if i > k:
            break
        for rest, c in _spread(choices, k - i, idx + 1, p):
            yield (new,) + rest, b * c % p


def steenrod_power(k, f, m=None):
    """
    P^k(f).

    Args:
        k (int): Operation index; P^k = 0 for k < 0
        f (Poly): Argument in S (or a class in Q_m)
        m (int): When given the result is the class in Q_m

    Returns:
        Poly: P^k(f)
    """
    F = f.params
    if k < 0:
        return Poly.zero(F, f.nvars)
    if k == 0:
        return f.truncate(m) if m is not None else f
    q, p = F.q, F.p
    bound = q ** m if m is not None else None
    n = f.nvars
    terms = {}
    for key, c in f.terms.items():
        exps = unpack(key, n)
        if sum(exps) < k:
            continue
        choices = [_choices(e, k, p, q, bound) for e in exps]
        for new, b in _spread(choices, k, 0, p):
            target = pack(new)
            terms[target] = F.add(terms.get(target, 0), F.mul(c, F.from_int(b)))
    return Poly(F, n, terms)


def total_power(f, kmax):
    """
    [P^0 f, .., P^kmax f] from the multiplicative total operation
    x_i -> x_i + x_i^q t, by repeated products. Independent of the binomial
    expansion in steenrod_power.
    """
    F, n = f.params, f.nvars
    q = F.q
    zero = Poly.zero(F, n)

    def mul(a, b):
        out = [zero] * (kmax + 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j in range(kmax + 1 - i):
                if not b[j].is_zero():
                    out[i + j] = out[i + j] + x * b[j]
        return out

    gens = []
    for i in range(1, n + 1):
        x = Poly.variable(F, n, i)
        gens.append([x, x.frobenius_power(1)] + [zero] * (kmax - 1) if kmax >= 1 else [x])
    result = [zero] * (kmax + 1)
    for exps, c in f.items():
        part = [Poly.one(F, n)] + [zero] * kmax
        for i, e in enumerate(exps):
            for _ in range(e):
                part = mul(part, gens[i])
        result = [r + x.scale(c) for r, x in zip(result, part)]
    return result


def cartan_check(f, g, k):
    """P^k(fg) = sum_{a+b=k} P^a(f) P^b(g)."""
    lhs = steenrod_power(k, f * g)
    rhs = Poly.zero(f.params, f.nvars)
    for a in range(k + 1):
        rhs = rhs + steenrod_power(a, f) * steenrod_power(k - a, g)
    if lhs != rhs:
        logger.warning(f"Cartan formula fails for k={k}")
    return lhs == rhs


def oracle_check(f, kmax):
    """steenrod_power against the product expansion of the total operation, for k <= kmax."""
    return all(steenrod_power(k, f) == v for k, v in enumerate(total_power(f, kmax)))


def unstable_check(f):
    """
    P^0 f = f, P^{deg f} f = f^q and P^k f = 0 for k > deg f, on each
    homogeneous part of f.
    """
    if steenrod_power(0, f) != f:
        return False
    for d in sorted({key_degree(k) for k in f.terms}):
        part = f.homogeneous_part(d)
        if steenrod_power(d, part) != part.frobenius_power(1):
            return False
        if not steenrod_power(d + 1, part).is_zero():
            return False
    return True


def l_action(n, params):
    """
    P^k(L_n) = Q_{n,i} L_n for k = deg Q_{n,i}/(q-1) and 0 for every other
    k >= 1; checked for every k up to deg L_n.

    Returns:
        dict: {k: bool}
    """
    if n not in (2, 3):
        raise ParameterError(f"Steenrod action on L_n is tabulated for n = 2, 3, got {n}")
    q = params.q
    Ln = L_bracket(n, params)
    expected = {(q ** n - q ** i) // (q - 1): Q(n, i, params) * Ln for i in range(n)}
    zero = Poly.zero(params, n)
    top = sum(q ** j for j in range(n))
    return {k: steenrod_power(k, Ln) == expected.get(k, zero) for k in range(1, top + 1)}


def _check_leading_invariance(f, a):
    gens = leading_block_generators(a, f.nvars, f.params)
    for g in gens:
        if Substitution(g).apply(f) != f:
            raise NotInvariant(f"argument is not invariant under GL_{a} in the first {a} variables")


def delta_commutation_sides(kind, f, k, m):
    """
    Both sides, in S, of the commutation of P^k with delta_2 (kind 'rank2',
    f invariant in x_1) or delta_3 (kind 'rank3', f invariant under GL_2 in x_1, x_2).

    Raises:
        NotInvariant: f fails the invariance hypothesis
    """
    F = f.params
    q = F.q
    c = f.nvars
    n = c + 1
    top = q ** m

    def P(j, g):
        return steenrod_power(j, g)

    if kind == 'rank2':
        if c < 1:
            raise ParameterError("rank 2 commutation needs at least one variable")
        _check_leading_invariance(f, 1)
        D = delta(2, m, f)
        lhs = P(k, D) + Q(2, 1, F, n) * P(k - q, D) + Q(2, 0, F, n) * P(k - q - 1, D)
        q10 = Q(1, 0, F, c)
        rhs = (delta(2, m, q10 * P(k - 1, f)) + delta(2, m, P(k, f))
               + delta(2, m + 1, q10 * P(k - 1 - top, f)) + delta(2, m + 1, P(k - top, f)))
        return lhs, rhs
    if kind == 'rank3':
        if c < 2:
            raise ParameterError("rank 3 commutation needs at least two variables")
        _check_leading_invariance(f, 2)
        q21, q20 = Q(2, 1, F, c), Q(2, 0, F, c)

        def inner(j):
            return P(j, f) + q21 * P(j - q, f) + q20 * P(j - q - 1, f)

        D = delta(3, m, f)
        lhs = (P(k, D) + Q(3, 2, F, n) * P(k - q * q, D) + Q(3, 1, F, n) * P(k - q * q - q, D)
               + Q(3, 0, F, n) * P(k - q * q - q - 1, D))
        rhs = delta(3, m, inner(k)) + delta(3, m + 1, inner(k - top))
        return lhs, rhs
    raise ParameterError(f"unknown commutation kind {kind!r}")


def delta_commutation_check(kind, f, k, m):
    lhs, rhs = delta_commutation_sides(kind, f, k, m)
    if lhs != rhs:
        logger.warning(f"P^{k} does not commute with delta as expected ({kind}, m={m})")
    return lhs == rhs


class GradedSpan:
    """Span of homogeneous classes in Q_m(n), one row space per degree, built on first query."""

    def __init__(self, params, n, m):
        self.params = params
        self.n = n
        self.m = m
        self.vectors = defaultdict(list)
        self._spaces = {}
        self._indices = {}

    def _index(self, d):
        if d not in self._indices:
            self._indices[d] = graded_basis(self.n, self.m, self.params.q, d).index
        return self._indices[d]

    def add(self, f):
        f = f.truncate(self.m)
        for d in sorted({key_degree(k) for k in f.terms}):
            self.vectors[d].append(f.homogeneous_part(d).coefficient_vector(self._index(d)))
            self._spaces.pop(d, None)

    def space(self, d):
        if d not in self._spaces:
            vecs = self.vectors.get(d, [])
            size = len(self._index(d))
            entries = np.array(vecs, dtype=np.int64) if vecs else np.zeros((0, size), dtype=np.int64)
            self._spaces[d] = RowSpace(MatrixGF(self.params, entries))
        return self._spaces[d]

    def contains(self, f):
        f = f.truncate(self.m)
        for d in {key_degree(k) for k in f.terms}:
            if not self.space(d).contains(f.homogeneous_part(d).coefficient_vector(self._index(d))):
                return False
        return True

    def dimensions(self):
        return {d: self.space(d).dimension for d in sorted(self.vectors)}


def _core_element(s, word, n, m, params):
    f = expand(word, params, s)
    return delta_iter(s + 1, m, n - s, f).truncate(m)


class Filtration:
    """
    F_{n,k}: the span of delta_{s+1}^{n-s}(f) over f in Delta^m_s and s <= k.
    """

    def __init__(self, n, k, m, params):
        if not 1 <= n <= 3:
            raise ParameterError(f"the filtration is computed for n <= 3, got {n}")
        if not 0 <= k < min(m, n):
            raise ParameterError(f"filtration level needs 0 <= k < min(m, n) = {min(m, n)}, got {k}")
        self.n, self.k, self.m, self.params = n, k, m, params
        self.elements = []
        self.span = GradedSpan(params, n, m)
        for s in range(k + 1):
            for word in delta_space(m, s, params.q):
                value = _core_element(s, word, n, m, params)
                self.elements.append({'s': s, 'word': word, 'value': value})
                self.span.add(value)
        logger.debug(f"F_({n},{k}) in Q_{m}({n}) over F_{params.q}: {len(self.elements)} spanning elements")

    def contains(self, f):
        return self.span.contains(f)


def verify_filtration(n, k, m, params):
    """
    Closure of F_{n,k} under the Steenrod algebra and under D_n, and its
    annihilation by Q_{n,i} for i <= n-k-1.

    Returns:
        dict: {n, k, m, q, elements, dimensions, base_is_top, steenrod_closed,
            dickson_closed, annihilated, failures, ok}
    """
    q = params.q
    filt = Filtration(n, k, m, params)
    failures = []
    for elem in filt.elements:
        f = elem['value']
        if f.is_zero():
            continue
        label = {'s': elem['s'], 'word': str(elem['word'])}
        for j in range(1, f.degree + 1):
            if not filt.contains(steenrod_power(j, f, m)):
                failures.append({'check': 'steenrod', 'j': j, **label})
        for i in range(n):
            g = (Q(n, i, params) * f).truncate(m)
            if not filt.contains(g):
                failures.append({'check': 'dickson', 'i': i, **label})
            if i <= n - k - 1 and not g.is_zero():
                failures.append({'check': 'annihilation', 'i': i, **label})
    top = Poly.monomial(params, [q ** m - 1] * n)
    base = _core_element(0, DicksonWord(()), n, m, params)
    base_is_top = base in (top, -top)
    checks = {c: not any(x['check'] == c for x in failures) for c in ('steenrod', 'dickson', 'annihilation')}
    ok = all(checks.values()) and base_is_top
    report = {
        'n': n,
        'k': k,
        'm': m,
        'q': q,
        'elements': len(filt.elements),
        'dimensions': [{'degree': d, 'dimension': dim} for d, dim in filt.span.dimensions().items()],
        'base_is_top': base_is_top,
        'steenrod_closed': checks['steenrod'],
        'dickson_closed': checks['dickson'],
        'annihilated': checks['annihilation'],
        'failures': failures,
        'ok': ok,
    }
    if ok:
        logger.info(f"F_({n},{k}) in Q_{m}({n}) over F_{q} is closed: {len(filt.elements)} spanning elements")
    else:
        logger.warning(f"F_({n},{k}) in Q_{m}({n}) over F_{q}: {len(failures)} failures")
    return report


def flexible_span_check(n, k, m, params):
    """
    F_{n,k} is also spanned by delta_{s+1}^{n-s}(f) with f running over every
    Dickson monomial of rank s <= k, not only those in Delta^m_s. Words whose
    image would exceed the top degree of Q_m(n) vanish and are skipped.

    Returns:
        dict: {dimensions: [{degree, core, flexible}], ok}
    """
    q = params.q
    filt = Filtration(n, k, m, params)
    flexible = GradedSpan(params, n, m)
    top = n * (q ** m - 1)
    count = 0
    for s in range(k + 1):
        bound = top - (n - s) * (q ** m - q ** s)
        for d in range(bound + 1):
            for word in dickson_words_of_degree(s, d, q):
                flexible.add(_core_element(s, word, n, m, params))
                count += 1
    core_dims = filt.span.dimensions()
    flex_dims = flexible.dimensions()
    rows = [{'degree': d, 'core': core_dims.get(d, 0), 'flexible': flex_dims.get(d, 0)}
            for d in sorted(set(core_dims) | set(flex_dims))]
    contained = all(flexible.contains(e['value']) for e in filt.elements)
    ok = contained and all(r['core'] == r['flexible'] for r in rows)
    logger.debug(f"flexible span of F_({n},{k}) from {count} Dickson words: ok={ok}")
    return {'dimensions': rows, 'words': count, 'ok': ok}


def delta3_mplus1_value(h, m, params):
    """Class of delta_{3;m+1}(h) in Q_m(3) for a rank 2 Dickson word h."""
    if h.s != 2:
        raise ParameterError(f"delta_(3;m+1) takes a rank 2 Dickson word, got {h}")
    return delta(3, m + 1, expand(h, params, 2)).truncate(m)


def delta3_mplus1_check(h, m, params):
    """
    delta_{3;m+1}(h) in Q_m(3): 0 for q > 3; for q = 3 it is 0 unless h = 1,
    where it equals delta_{3;m}(Q_{2,1}^{q^{m-1}}); for q = 2 it lies in the
    span of delta_2^2(Delta^m_1) and delta_1^3(1), it vanishes when Q_{2,0}
    divides h, and delta_{3;m+1}(Q_{2,1}^s) = delta_2^2(Q_{1,0}^{2s}).
    """
    if m < 2:
        raise ParameterError(f"delta_(3;m+1) reduction needs m >= 2, got {m}")
    q = params.q
    value = delta3_mplus1_value(h, m, params)
    if q > 3:
        return value.is_zero()
    if q == 3:
        if h.degree(q) > 0:
            return value.is_zero()
        expected = delta(3, m, Q(2, 1, params).power(q ** (m - 1))).truncate(m)
        return value == expected
    span = GradedSpan(params, 3, m)
    for w in delta_space(m, 1, q):
        span.add(delta_iter(2, m, 2, expand(w, params, 1)))
    span.add(delta_iter(1, m, 3, Poly.one(params, 0)))
    if not span.contains(value):
        return False
    if h.exps[1] >= 1:
        return value.is_zero()
    expected = delta_iter(2, m, 2, Q(1, 0, params).power(2 * h.exps[0])).truncate(m)
    return value == expected


def delta3_recursion_check(h, b, params):
    """
    delta_{3;b}(h) = Q32^{q^{b-3}} delta_{3;b-1}(h) - Q31^{q^{b-3}} delta_{3;b-2}(h)
    + Q30^{q^{b-3}} delta_{3;b-3}(h) in S, for b >= 3.
    """
    if b < 3:
        raise ParameterError(f"the recursion starts at b = 3, got {b}")
    f = expand(h, params, 2)
    d = {j: delta(3, j, f) for j in range(b - 3, b + 1)}
    rhs = (Q(3, 2, params).frobenius_power(b - 3) * d[b - 1]
           - Q(3, 1, params).frobenius_power(b - 3) * d[b - 2]
           + Q(3, 0, params).frobenius_power(b - 3) * d[b - 3])
    return d[b] == rhs
