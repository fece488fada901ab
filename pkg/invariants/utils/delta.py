"""
The operator delta_{a;b}.

For f in c variables, delta_{a;b}(f) is the determinant whose first a-1 rows
are x_j^{q^r} (r = 0..a-2) and whose last row is x_j^{q^b} f(x_1..^x_j..x_{c+1}),
for j = 1..a, divided by L_a = [0, 1, .., a-1]. It lives in c+1 variables.

Everything here is computed in the polynomial ring S. Truncating the argument
first and the result afterwards does not commute with delta, so callers that
want a class in Q_m truncate the final answer only.
"""
from __future__ import annotations

import logging

from invariants.exceptions import NotDivisible, ParameterError
from invariants.utils.combinat import q_int
from invariants.utils.dickson import L_bracket
from invariants.utils.mvpoly import Poly, det, exact_div

logger = logging.getLogger(__name__)


def delta(a, b, f):
    """
    delta_{a;b}(f) in S.

    Args:
        a (int): Number of leading variables the determinant runs over
        b (int): Frobenius height of the last row
        f (Poly): Argument in c >= a-1 variables

    Returns:
        Poly: The exact quotient, in c+1 variables

    Raises:
        NotDivisible: when the determinant is not divisible by L_a, i.e. f
            lacks the invariance that makes the quotient a polynomial
    """
    c = f.nvars
    if not 1 <= a <= c + 1:
        raise ParameterError(f"delta_{a} needs 1 <= a <= {c + 1}")
    if b < 0:
        raise ParameterError(f"Frobenius height must be non-negative, got {b}")
    F = f.params
    q = F.q
    n = c + 1
    rows = []
    for r in range(a - 1):
        row = []
        for j in range(a):
            exps = [0] * n
            exps[j] = q ** r
            row.append(Poly.monomial(F, exps))
        rows.append(row)
    last = []
    for j in range(a):
        exps = [0] * n
        exps[j] = q ** b
        last.append(Poly.monomial(F, exps) * f.insert_variable(j + 1))
    rows.append(last)
    numerator = det(rows)
    try:
        return exact_div(numerator, L_bracket(a, F, n))
    except NotDivisible as e:
        logger.debug(f"delta_({a};{b}) is not a polynomial: {str(e)}")
        raise


def delta_iter(a, b, reps, f):
    """delta_{a;b} applied reps times in S, with no truncation in between."""
    for _ in range(reps):
        f = delta(a, b, f)
    return f


def delta_truncated(a, b, f, m, reps=1):
    """Class of delta_{a;b}^reps(f) in Q_m."""
    return delta_iter(a, b, reps, f).truncate(m)


def y_closed(m, s, params):
    """
    y_s = x_1^{q^m-q} x_2^{s(q-1)} + x_1^{q^m-2q+1} x_2^{(s+1)(q-1)} + ... + x_1^{s(q-1)} x_2^{q^m-q}.

    Args:
        m (int): Truncation level
        s (int): 0 <= s <= [m]_q; y_{[m]_q} is the empty sum
        params (FieldParams): Field

    Returns:
        Poly: y_s in two variables
    """
    q = params.q
    top = q_int(m, q)
    if not 0 <= s <= top:
        raise ParameterError(f"y_s needs 0 <= s <= {top}, got {s}")
    terms = {}
    for k in range(top - s):
        terms[((top - 1 - k) * (q - 1), (s + k) * (q - 1))] = 1
    return Poly.from_dict(params, 2, terms)


def a_closed(m, s, params):
    """
    a_{m,3,s}: sum of x_1^{i_1(q-1)} x_2^{i_2(q-1)} x_3^{i_3(q-1)} over
    i_j < [m]_q with i_1 + i_2 + i_3 = 2[m]_q - 2 + s.
    """
    q = params.q
    top = q_int(m, q)
    if not 0 <= s <= top:
        raise ParameterError(f"a_(m,3,s) needs 0 <= s <= {top}, got {s}")
    total = 2 * top - 2 + s
    terms = {}
    for i1 in range(top):
        for i2 in range(top):
            i3 = total - i1 - i2
            if 0 <= i3 < top:
                terms[(i1 * (q - 1), i2 * (q - 1), i3 * (q - 1))] = 1
    return Poly.from_dict(params, 3, terms)


def top_class(params, nvars, m):
    """(x_1 ... x_n)^{q^m - 1}, the class spanning the top degree of Q_m(n)."""
    e = params.q ** m - 1
    return Poly.monomial(params, [e] * nvars)
