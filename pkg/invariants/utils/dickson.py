"""
Dickson invariants and their building blocks.

V_k is the product of x_k + (every F_q-combination of x_1..x_{k-1}), L_n the
product V_1...V_n, and Q_{n,i} the Dickson invariant of degree q^n - q^i.
"""
from __future__ import annotations

import itertools
import logging
from functools import lru_cache

from invariants.exceptions import NotDivisible
from invariants.models import DicksonWord
from invariants.utils.mvpoly import Poly, det, exact_div

logger = logging.getLogger(__name__)


def V(k, params, nvars=None):
    """
    V_k in nvars variables (default k).

    Args:
        k (int): Index, 1 <= k <= nvars
        params (FieldParams): Field
        nvars (int): Ambient variable count

    Returns:
        Poly: Product over F_q^{k-1} of (x_k + lambda_1 x_1 + ... + lambda_{k-1} x_{k-1})
    """
    nvars = nvars or k
    return _V(k, params, nvars)


@lru_cache(maxsize=None)
def _V(k, params, nvars):
    xs = [Poly.variable(params, nvars, i) for i in range(1, k + 1)]
    result = Poly.one(params, nvars)
    for lams in itertools.product(range(params.q), repeat=k - 1):
        form = xs[k - 1]
        for lam, x in zip(lams, xs):
            if lam:
                form = form + x.scale(params.scalar(lam))
        result = result * form
    return result


def L(n, params, nvars=None):
    """L_n = V_1 ... V_n."""
    nvars = nvars or n
    result = Poly.one(params, nvars)
    for k in range(1, n + 1):
        result = result * V(k, params, nvars)
    return result


def bracket(rs, params, nvars=None):
    """[r_1, .., r_n] = det(x_i^{q^{r_j}}) in the first n = len(rs) variables."""
    n = len(rs)
    nvars = nvars or n
    return _bracket(tuple(rs), params, nvars)


@lru_cache(maxsize=None)
def _bracket(rs, params, nvars):
    q = params.q
    n = len(rs)
    rows = []
    for r in rs:
        row = []
        for i in range(n):
            exps = [0] * nvars
            exps[i] = q ** r
            row.append(Poly.monomial(params, exps))
        rows.append(row)
    return det(rows)


def L_bracket(n, params, nvars=None):
    """L_n as the bracket [0, 1, .., n-1]."""
    return bracket(list(range(n)), params, nvars)


def Q(n, i, params, nvars=None):
    """
    Dickson invariant Q_{n,i}, by the recursion Q_{n,i} = V_n^{q-1} Q_{n-1,i} + Q_{n-1,i-1}^q.

    Q_{n,n} = 1 and Q_{n,i} = 0 for i outside 0..n.
    """
    nvars = nvars if nvars is not None else n
    return _Q(n, i, params, nvars)


@lru_cache(maxsize=None)
def _Q(n, i, params, nvars):
    if i < 0 or i > n:
        return Poly.zero(params, nvars)
    if i == n:
        return Poly.one(params, nvars)
    rest = _Q(n - 1, i - 1, params, nvars).frobenius_power(1)
    head = V(n, params, nvars).power(params.q - 1) * _Q(n - 1, i, params, nvars)
    return head + rest


def Q_quotient(n, i, params, nvars=None):
    """Q_{n,i} = [0, .., i^, .., n] / L_n, kept as an oracle for the recursion."""
    nvars = nvars if nvars is not None else n
    if i < 0 or i > n:
        return Poly.zero(params, nvars)
    rs = [r for r in range(n + 1) if r != i]
    try:
        return exact_div(bracket(rs, params, nvars), L_bracket(n, params, nvars))
    except NotDivisible as e:
        logger.error(f"Bracket quotient for Q_{n},{i} failed: {str(e)}")
        raise


def expand(word, params, nvars=None):
    """Expand a Dickson word into a polynomial in nvars (default s) variables."""
    s = word.s
    nvars = nvars if nvars is not None else s
    return _expand(word.exps, params, nvars)


@lru_cache(maxsize=4096)
def _expand(exps, params, nvars):
    s = len(exps)
    result = Poly.one(params, nvars)
    for j, e in enumerate(exps, start=1):
        if e:
            result = result * Q(s, s - j, params, nvars).power(e)
    return result


def phi(word):
    """Q_{s,i} -> Q_{s+1,i+1}: append a zero exponent for Q_{s+1,0}."""
    return DicksonWord(tuple(word.exps) + (0,))


def fundamental_check(n, params):
    """
    V_{n+1}(x_1..x_n, X) = X^{q^n} + sum_i (-1)^{n-i} Q_{n,i} X^{q^i}, with X = x_{n+1}.

    Returns:
        bool: True when both sides agree in S
    """
    q = params.q
    lhs = V(n + 1, params, n + 1)
    X = Poly.variable(params, n + 1, n + 1)
    rhs = X.frobenius_power(n)
    for i in range(n):
        term = Q(n, i, params).extend(n + 1) * X.frobenius_power(i)
        rhs = rhs + term if (n - i) % 2 == 0 else rhs - term
    if lhs != rhs:
        logger.warning(f"Fundamental equation fails for n={n}, q={q}")
        return False
    return True
