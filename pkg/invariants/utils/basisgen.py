"""
Explicit bases of Q_m(n)^{P(alpha)} built from Dickson monomials and delta towers.

Every element is computed in S and truncated once at the end. Range bounds of
the form "i < [a]_q" use the literal value [0]_q = 0, so families whose bounds
collapse at small m are simply empty.
"""
from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from invariants.exceptions import NotInvariant, ParameterError
from invariants.models import BasisElement, Composition, DicksonWord
from invariants.utils.combinat import (
    Classification, SeriesPoly, admissible_betas, classify, delta_space, in_delta_space, q_int,
)
from invariants.utils.delta import delta_iter
from invariants.utils.dickson import Q, bracket, expand, phi
from invariants.utils.linalg import MatrixGF, RowSpace
from invariants.utils.mvpoly import BITS, MASK, Poly, exact_div, pack, unpack
from invariants.utils.solver import graded_basis, invariant_dimension

logger = logging.getLogger(__name__)


@dataclass
class Term:
    """A polynomial in S together with the degree its construction predicts."""

    poly: Poly
    degree: int

    def __mul__(self, other):
        n = max(self.poly.nvars, other.poly.nvars)
        return Term(self.poly.extend(n) * other.poly.extend(n), self.degree + other.degree)


class Builder:
    """Shorthands for one (m, field): Dickson words, delta_{a;m}, monomials."""

    def __init__(self, m, params):
        self.m = m
        self.params = params
        self.q = params.q

    def one(self, nvars=0):
        return Term(Poly.one(self.params, nvars), 0)

    def word(self, exps, nvars=None):
        w = DicksonWord(tuple(exps))
        nvars = w.s if nvars is None else nvars
        return Term(expand(w, self.params, nvars), w.degree(self.q))

    def dickson(self, s, i, e=1, nvars=None):
        nvars = s if nvars is None else nvars
        return Term(Q(s, i, self.params, nvars).power(e), e * (self.q ** s - self.q ** i))

    def mono(self, exps):
        return Term(Poly.monomial(self.params, exps), sum(exps))

    def delta(self, a, t, reps=1):
        poly = delta_iter(a, self.m, reps, t.poly)
        return Term(poly, t.degree + reps * (self.q ** self.m - self.q ** (a - 1)))

    def shifted(self, t, offset, nvars):
        return Term(t.poly.shift_variables(offset, nvars), t.degree)

    def qr(self, a):
        """range(0, [a]_q), literal at a = 0."""
        return range(q_int(a, self.q, zero_is_one=False)) if a >= 0 else range(0)

    def qr_incl(self, a):
        """range(0, [a]_q + 1), literal at a = 0."""
        return range(q_int(a, self.q, zero_is_one=False) + 1) if a >= 0 else range(0)


def _element(family, recipe, parameters, term, n, m):
    poly = term.poly.extend(n).truncate(m)
    return BasisElement(family, recipe, parameters, poly, term.degree)


def _family_gl1(b, n):
    m = b.m
    yield _element(1, "delta_1(1)", {}, b.delta(1, b.one(0)), n, m)
    for w in delta_space(m, 1, b.q):
        yield _element(2, "Q10^e", {'e': w.exps[0]}, b.word(w.exps), n, m)


def _family_gl2(b, n):
    m = b.m
    yield _element(1, "delta_1^2(1)", {}, b.delta(1, b.one(0), 2), n, m)
    for w in delta_space(m, 1, b.q):
        yield _element(2, "delta_2(Q10^e)", {'e': w.exps[0]}, b.delta(2, b.word(w.exps)), n, m)
    for w in delta_space(m, 2, b.q):
        yield _element(3, "Q21^e1 Q20^e2", {'e1': w.exps[0], 'e2': w.exps[1]}, b.word(w.exps), n, m)


def _family_borel2(b, n):
    m, q = b.m, b.q
    top = q ** m - 1
    for i in b.qr_incl(m):
        yield _element(1, "x1^(q^m-1) x2^(i(q-1))", {'i': i}, b.mono((top, i * (q - 1))), n, m)
    for i1 in b.qr(m):
        for i2 in b.qr_incl(m - 1):
            t = b.dickson(1, 0, i1, 2) * b.dickson(2, 1, i2)
            yield _element(2, "Q10^i1 Q21^i2", {'i1': i1, 'i2': i2}, t, n, m)


def _family_borel3(b, n):
    m, q = b.m, b.q
    top = q ** m - 1
    for j3 in b.qr_incl(m):
        yield _element(1, "x1^(q^m-1) x2^(q^m-1) x3^(j3(q-1))", {'j3': j3},
                       b.mono((top, top, j3 * (q - 1))), n, m)
    for j2 in b.qr(m):
        for j3 in b.qr_incl(m - 1):
            t = b.mono((top, j2 * (q - 1), 0)) * b.shifted(b.dickson(2, 1, j3), 1, 3)
            yield _element(2, "x1^(q^m-1) x2^(j2(q-1)) Q21(x2,x3)^j3", {'j2': j2, 'j3': j3}, t, n, m)
    for j1 in b.qr(m):
        for j2 in b.qr_incl(m - 1):
            t = b.mono((j1 * (q - 1), 0, 0)) * b.delta(2, b.dickson(2, 1, j2))
            yield _element(3, "x1^(j1(q-1)) delta_2(Q21^j2)", {'j1': j1, 'j2': j2}, t, n, m)
    for j1 in b.qr(m):
        for j2 in b.qr(m - 1):
            for j3 in b.qr_incl(m - 2):
                t = b.dickson(1, 0, j1, 3) * b.dickson(2, 1, j2, 3) * b.dickson(3, 2, j3)
                yield _element(4, "Q10^j1 Q21^j2 Q32^j3", {'j1': j1, 'j2': j2, 'j3': j3}, t, n, m)


def _family_g21(b, n):
    m = b.m
    d3_one = b.delta(3, b.one(2))
    d2_one = b.delta(2, b.one(1))
    for w in delta_space(m, 2, b.q):
        for i in b.qr(m - 2):
            t = b.word(w.exps, 3) * b.dickson(3, 2, i)
            yield _element(1, "Q21^i1 Q20^i2 Q32^i", {'i1': w.exps[0], 'i2': w.exps[1], 'i': i}, t, n, m)
    for w in delta_space(m, 2, b.q):
        t = b.word(w.exps, 3) * d3_one
        yield _element(2, "Q21^i1 Q20^i2 delta_3(1)", {'i1': w.exps[0], 'i2': w.exps[1]}, t, n, m)
    for i1 in b.qr(m):
        for i in b.qr(m - 1):
            t = b.delta(2, b.dickson(1, 0, i1, 2) * b.dickson(2, 1, i))
            yield _element(3, "delta_2(Q10^i1 Q21^i)", {'i1': i1, 'i': i}, t, n, m)
    for i1 in b.qr(m):
        t = b.delta(2, b.dickson(1, 0, i1, 2) * d2_one)
        yield _element(4, "delta_2(Q10^i1 delta_2(1))", {'i1': i1}, t, n, m)
    for i in b.qr(m):
        yield _element(5, "delta_1^2(Q10^i)", {'i': i}, b.delta(1, b.dickson(1, 0, i), 2), n, m)
    yield _element(6, "delta_1^3(1)", {}, b.delta(1, b.one(0), 3), n, m)


def _family_g12(b, n):
    m = b.m
    d22_one = b.delta(2, b.one(1), 2)
    for j1 in b.qr(m):
        for w in delta_space(m - 1, 2, b.q):
            t = b.dickson(1, 0, j1, 3) * b.word(phi(w).exps)
            yield _element(1, "Q10^j1 Q32^i1 Q31^i2", {'j1': j1, 'i1': w.exps[0], 'i2': w.exps[1]}, t, n, m)
    d3_q21 = {j2: b.delta(3, b.dickson(2, 1, j2)) for j2 in b.qr(m - 1)}
    for j1 in b.qr(m):
        for j2, d3 in d3_q21.items():
            t = b.dickson(1, 0, j1, 3) * d3
            yield _element(2, "Q10^j1 delta_3(Q21^j2)", {'j1': j1, 'j2': j2}, t, n, m)
    for j1 in b.qr(m):
        yield _element(3, "Q10^j1 delta_2^2(1)", {'j1': j1}, b.dickson(1, 0, j1, 3) * d22_one, n, m)
    for w in delta_space(m, 2, b.q):
        t = b.delta(1, b.word(w.exps))
        yield _element(4, "delta_1(Q21^i1 Q20^i2)", {'i1': w.exps[0], 'i2': w.exps[1]}, t, n, m)
    for j1 in b.qr(m):
        t = b.delta(1, b.delta(2, b.dickson(1, 0, j1)))
        yield _element(5, "delta_1(delta_2(Q10^j1))", {'j1': j1}, t, n, m)
    yield _element(6, "delta_1^3(1)", {}, b.delta(1, b.one(0), 3), n, m)


def _family_gl3(b, n):
    m = b.m
    yield _element(1, "delta_1^3(1)", {}, b.delta(1, b.one(0), 3), n, m)
    for w in delta_space(m, 1, b.q):
        yield _element(2, "delta_2^2(Q10^e)", {'e': w.exps[0]}, b.delta(2, b.word(w.exps), 2), n, m)
    for w in delta_space(m, 2, b.q):
        t = b.delta(3, b.word(w.exps))
        yield _element(3, "delta_3(Q21^e1 Q20^e2)", {'e1': w.exps[0], 'e2': w.exps[1]}, t, n, m)
    for w in delta_space(m, 3, b.q):
        yield _element(4, "Q32^e1 Q31^e2 Q30^e3", dict(zip(('e1', 'e2', 'e3'), w.exps)), b.word(w.exps), n, m)


FAMILIES = {
    (1,): _family_gl1,
    (2,): _family_gl2,
    (1, 1): _family_borel2,
    (3,): _family_gl3,
    (2, 1): _family_g21,
    (1, 2): _family_g12,
    (1, 1, 1): _family_borel3,
}


def general_recipe(alpha, m, params):
    """
    For each beta <= alpha with |beta| <= m, the elements
    delta_{B_1+1}^{alpha_1-beta_1}(f_1 delta_{B_2+1}^{alpha_2-beta_2}(f_2 ... )),
    with f_i running over phi^{B_{i-1}} Delta^{m-B_{i-1}}_{beta_i} in B_i variables.

    Returns:
        list: BasisElements, family index = position of beta in lexicographic order
    """
    b = Builder(m, params)
    n = alpha.size
    out = []
    for family, beta in enumerate(admissible_betas(alpha, m), start=1):
        sums = beta.partial_sums()
        choices = []
        for i, bi in enumerate(beta.parts):
            words = delta_space(m - sums[i], bi, b.q)
            for _ in range(sums[i]):
                words = [phi(w) for w in words]
            choices.append(words)
        if any(not c for c in choices):
            logger.debug(f"beta={beta} contributes nothing at m={m}")
            continue
        for combo in itertools.product(*choices):
            term = None
            for i in range(len(alpha) - 1, -1, -1):
                f = b.word(combo[i].exps) if combo[i].s else b.one(sums[i + 1])
                f = Term(f.poly.extend(sums[i + 1]), f.degree)
                term = f if term is None else f * term
                reps = alpha.parts[i] - beta.parts[i]
                if reps:
                    term = b.delta(sums[i + 1] + 1, term, reps)
            recipe = "beta=" + str(beta) + " " + " ".join(str(w) for w in combo)
            out.append(_element(family, recipe, {'beta': list(beta.parts),
                                                 'words': [list(w.exps) for w in combo]}, term, n, m))
    return out


def build(alpha, m, params, conjecture=False):
    """
    The basis B_m(alpha) as BasisElements.

    Args:
        alpha (Composition): Composition of n
        m (int): Truncation level
        params (FieldParams): Field
        conjecture (bool): Use the general nested recipe even when explicit
            families are known

    Returns:
        list: BasisElements in family order
    """
    if isinstance(alpha, int):
        alpha = Composition((alpha,))
    if m < 1:
        raise ParameterError(f"truncation level must be positive, got {m}")
    key = tuple(alpha.parts)
    if conjecture or key not in FAMILIES:
        if alpha.size > 3:
            logger.info(f"alpha={alpha}: using the general recipe")
        return general_recipe(alpha, m, params)
    b = Builder(m, params)
    elems = list(FAMILIES[key](b, alpha.size))
    logger.debug(f"B_{m}({alpha}) over F_{params.q}: {len(elems)} elements")
    return elems


def basis_series(elems):
    counts = defaultdict(int)
    for e in elems:
        counts[e.degree] += 1
    top = max(counts) if counts else -1
    return SeriesPoly([counts[d] for d in range(top + 1)])


def verify_invariance(elems, G, m):
    """
    Every element fixed by every generator of G in Q_m.

    Returns:
        dict: {checked, invariant, failures}
    """
    failures = []
    for e in elems:
        if not G.fixes(e.value, m):
            failures.append({'family': e.family, 'recipe': e.recipe, 'parameters': e.parameters})
    if failures:
        logger.warning(f"{len(failures)} of {len(elems)} elements are not fixed by {G}")
    return {'checked': len(elems), 'invariant': not failures, 'failures': failures}


def _degree_vectors(elems, n, m, q, d):
    basis = graded_basis(n, m, q, d)
    index = basis.index
    return basis, [e.value.coefficient_vector(index) for e in elems]


def verify_independence_and_span(elems, G, m):
    """
    Per degree: number of elements, rank of their coefficient matrix and the
    brute-force invariant dimension.

    Returns:
        dict: {degrees: [...], independent, spanning, homogeneous, total}
    """
    F, n = G.params, G.n
    q = F.q
    by_degree = defaultdict(list)
    bad = []
    for e in elems:
        if e.value.is_zero() or not e.value.is_homogeneous() or e.value.degree != e.degree:
            bad.append({'family': e.family, 'recipe': e.recipe, 'parameters': e.parameters})
        else:
            by_degree[e.degree].append(e)
    rows = []
    for d in range(n * (q ** m - 1) + 1):
        group = by_degree.get(d, [])
        dim, _ = invariant_dimension(G, m, d)
        if group:
            _, vectors = _degree_vectors(group, n, m, q, d)
            rank = MatrixGF(F, np.array(vectors, dtype=np.int64)).rank()
        else:
            rank = 0
        rows.append({'degree': d, 'count': len(group), 'rank': rank, 'dimension': dim,
                     'independent': rank == len(group), 'spanning': rank == dim})
    independent = all(r['independent'] for r in rows) and not bad
    spanning = all(r['spanning'] for r in rows)
    if bad:
        logger.warning(f"{len(bad)} elements are zero or off their predicted degree")
    return {'degrees': rows, 'independent': independent, 'spanning': spanning,
            'homogeneous': not bad, 'failures': bad, 'total': len(elems)}


def span_contains(elems, f, n, m, q):
    """Row-space membership of the class f in the span of elems (same degree)."""
    f = f.truncate(m)
    if f.is_zero():
        return True
    if not f.is_homogeneous():
        return False
    d = f.degree
    group = [e for e in elems if e.degree == d and not e.value.is_zero()]
    basis, vectors = _degree_vectors(group, n, m, q, d)
    target = f.coefficient_vector(basis.index)
    if not vectors:
        return False
    return RowSpace(MatrixGF(f.params, np.array(vectors, dtype=np.int64))).contains(target)


def dickson_words_of_degree(s, d, q):
    """All rank-s Dickson words (e_1..e_s) of degree d."""
    degs = [q ** s - q ** (s - j) for j in range(1, s + 1)]
    out = []

    def rec(prefix, j, remaining):
        if j == s:
            if remaining == 0:
                out.append(DicksonWord(tuple(prefix)))
            return
        for e in range(remaining // degs[j], -1, -1):
            rec(prefix + [e], j + 1, remaining - e * degs[j])

    if s == 0:
        return [DicksonWord(())] if d == 0 else []
    rec([], 0, d)
    return out


def dickson_coordinates(f, s, params):
    """
    Write f in D_s (a polynomial in the first s variables, in S) as a
    combination of Dickson monomials, by linear algebra.

    Returns:
        dict: {DicksonWord: field representative}, nonzero coefficients only

    Raises:
        NotInvariant: f is not a Dickson polynomial
    """
    if f.is_zero():
        return {}
    if not f.is_homogeneous():
        raise NotInvariant("Dickson polynomials are sums of homogeneous parts; expand each separately")
    words = dickson_words_of_degree(s, f.degree, params.q)
    polys = [expand(w, params, f.nvars) for w in words]
    keys = set(f.terms)
    for p in polys:
        keys.update(p.terms)
    index = {k: i for i, k in enumerate(sorted(keys, reverse=True))}
    if not polys:
        raise NotInvariant(f"no Dickson monomial of degree {f.degree}")
    A = MatrixGF(params, np.array([p.coefficient_vector(index) for p in polys], dtype=np.int64))
    x = A.transpose().solve(f.coefficient_vector(index))
    if x is None:
        raise NotInvariant(f"polynomial of degree {f.degree} is not in D_{s}")
    return {w: int(c) for w, c in zip(words, x) if c}


def _bracket_ratio(top, params, nvars=3):
    return exact_div(bracket(top, params, nvars), bracket([0, 1, 2], params, nvars))


def rank2_edge_check(m, params):
    """
    For 0 <= i <= m-1, Q21^{(q^{m-1}-q^i)/(q-1)} Q20^{[i]} - delta_2(Q10^{[i]})
    expands into words of Delta^m_2 whose Q20-exponent is at least [i+1].
    """
    q = params.q
    out = []
    for i in range(m):
        qi = q_int(i, q, zero_is_one=False)
        lead = Q(2, 1, params).power((q ** (m - 1) - q ** i) // (q - 1)) * Q(2, 0, params).power(qi)
        y = delta_iter(2, m, 1, Q(1, 0, params).power(qi))
        coords = dickson_coordinates(lead - y, 2, params)
        bound = q_int(i + 1, q, zero_is_one=False)
        bad = [str(w) for w in coords if not (in_delta_space(w, m, q) and w.exps[1] >= bound)]
        out.append({'i': i, 'words': len(coords), 'ok': not bad, 'offending': bad})
    return out


def key_reduction_check(m, params):
    """
    Dickson expansions of [0,1,l+1]/[0,1,2] delta_{3;m}(Q21) - [0,2,l+1]/[0,1,2] delta_{3;m}(1):
    for l = m-2 every word other than Q31^{[m-2]} contains Q30; for l <= m-2
    the leading word is Q32^{(q^{m-2}-q^l)/(q-1)} Q31^{[l]} and every other
    word has Q31-exponent at least [l+1] or contains Q30.
    """
    if m < 2:
        return []
    q = params.q
    d3_q21 = delta_iter(3, m, 1, Q(2, 1, params))
    d3_one = delta_iter(3, m, 1, Poly.one(params, 2))
    out = []
    for ell in range(m - 1):
        lhs = _bracket_ratio([0, 1, ell + 1], params) * d3_q21 - _bracket_ratio([0, 2, ell + 1], params) * d3_one
        coords = dickson_coordinates(lhs, 3, params)
        lead = DicksonWord(((q ** (m - 2) - q ** ell) // (q - 1), q_int(ell, q, zero_is_one=False), 0))
        lead_ok = coords.get(lead) == 1
        bound = q_int(ell + 1, q, zero_is_one=False)
        rest = [w for w in coords if w != lead]
        ok = lead_ok and all(w.exps[1] >= bound or w.exps[2] >= 1 for w in rest)
        entry = {'l': ell, 'lead': str(lead), 'ok': ok}
        if ell == m - 2:
            entry['ideal_q30'] = lead_ok and all(w.exps[2] >= 1 for w in rest)
            entry['ok'] = ok and entry['ideal_q30']
        out.append(entry)
    return out


def rank3_edge_words(m, q):
    """Edge monomials of Delta^m_3 reduced by the rank 3 argument."""
    if m < 3:
        return []
    words = [DicksonWord((0, 0, q_int(m - 2, q, zero_is_one=False)))]
    for l3 in range(m - 2):
        words.append(DicksonWord((0, (q ** (m - 2) - q ** l3) // (q - 1), q_int(l3, q, zero_is_one=False))))
    for l2 in range(m - 2):
        for l3 in range(l2 + 1):
            words.append(DicksonWord(((q ** (m - 2) - q ** l2) // (q - 1),
                                      (q ** l2 - q ** l3) // (q - 1),
                                      q_int(l3, q, zero_is_one=False))))
    return words


def edge_reduction_check(m, params, elems=None):
    """
    Rank 2 edge decomposition and key reduction in S, and membership of the
    rank 3 edge monomials in span B_m(3) in Q_m.

    Returns:
        dict: {rank2, key_reduction, edges, ok}
    """
    q = params.q
    rank2 = rank2_edge_check(m, params)
    key = key_reduction_check(m, params)
    if elems is None:
        elems = build(Composition((3,)), m, params)
    edges = []
    for w in rank3_edge_words(m, q):
        value = expand(w, params, 3)
        edges.append({'word': str(w), 'class': classify(w, m, q).value,
                      'in_span': span_contains(elems, value, 3, m, q)})
    ok = all(r['ok'] for r in rank2) and all(r['ok'] for r in key) and all(e['in_span'] for e in edges)
    if not ok:
        logger.warning(f"edge reduction check failed for m={m}, q={q}")
    return {'rank2': rank2, 'key_reduction': key, 'edges': edges, 'ok': ok}


def extreme_coefficient(f, var, highest=True):
    """
    Write f as a polynomial in x_var and return (exponent, coefficient) of its
    highest (or lowest) power; the coefficient lives in the remaining variables.
    """
    if f.is_zero():
        raise ParameterError("the zero polynomial has no extreme coefficient")
    n = f.nvars
    shift = BITS * (n - var)
    exps = {(k >> shift) & MASK for k in f.terms}
    target = max(exps) if highest else min(exps)
    terms = {}
    for k, c in f.terms.items():
        if (k >> shift) & MASK == target:
            e = list(unpack(k, n))
            del e[var - 1]
            terms[pack(e)] = c
    return target, Poly(f.params, n - 1, terms)


def leading_table(elems, var, highest=True):
    """(family, parameters, exponent, coefficient) for each element, as x_var extremes."""
    rows = []
    for e in elems:
        exp, coeff = extreme_coefficient(e.value, var, highest)
        rows.append({'family': e.family, 'parameters': e.parameters, 'exponent': exp, 'coefficient': coeff})
    return rows


def is_edge(word, m, q):
    return classify(word, m, q) is Classification.EDGE
