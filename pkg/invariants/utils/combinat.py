"""
q-integers, Gaussian binomials, the core sets Delta^m_s of Dickson monomials,
(q,t)-multinomials and the series C_{alpha,m}(t).
"""
from __future__ import annotations

import itertools
import logging
from enum import Enum
from functools import lru_cache

from invariants.exceptions import InexactDivision, ParameterError
from invariants.models import BoxPartition, Composition, DicksonWord

logger = logging.getLogger(__name__)


def q_int(a, q, zero_is_one=True):
    """
    The q-integer [a]_q = (q^a - 1)/(q - 1).

    Args:
        a (int): a >= 0
        q (int): Field size
        zero_is_one (bool): Return 1 for a = 0 (the usual convention); False
            gives the literal value 0, which is what range bounds such as
            "i < [a]_q" use

    Returns:
        int: [a]_q
    """
    if a < 0:
        raise ParameterError(f"q-integer of a negative number: {a}")
    if a == 0:
        return 1 if zero_is_one else 0
    return (q ** a - 1) // (q - 1)


def q_range(a, q):
    """range(0, [a]_q) with the literal value of [0]_q."""
    return range(q_int(a, q, zero_is_one=False)) if a >= 0 else range(0)


@lru_cache(maxsize=None)
def gauss_binom(m, s, q):
    """Number of s-dimensional subspaces of F_q^m, by the q-Pascal recursion."""
    if s < 0 or s > m:
        return 0
    if s == 0 or s == m:
        return 1
    return gauss_binom(m - 1, s - 1, q) + q ** s * gauss_binom(m - 1, s, q)


def partitions_in_box(s, width):
    """
    Partitions lambda_1 >= .. >= lambda_s >= 0 with lambda_1 <= width, in
    lexicographic order.
    """
    if s == 0:
        yield BoxPartition(())
        return
    if width < 0:
        return

    def rec(prefix, remaining, cap):
        if remaining == 0:
            yield BoxPartition(tuple(prefix))
            return
        for part in range(cap + 1):
            yield from rec(prefix + [part], remaining - 1, part)

    for first in range(width + 1):
        yield from rec([first], s - 1, first)


def _interval(lam, lam_next, q):
    low = (q ** lam - q ** lam_next) // (q - 1)
    high = (q ** (lam + 1) - q ** lam_next) // (q - 1)
    return low, high


def dickson_type(word, q):
    """
    The partition (lambda_1..lambda_s) whose exponent box contains the word.

    The boxes for successive lambda_i tile the non-negative integers, so every
    word has exactly one type; it lies in Delta^m_s iff lambda_1 <= m - s.
    """
    lam_next = 0
    parts = []
    for e in reversed(word.exps):
        lam = lam_next
        while True:
            low, high = _interval(lam, lam_next, q)
            if low <= e < high:
                break
            lam += 1
        parts.append(lam)
        lam_next = lam
    return BoxPartition(tuple(reversed(parts)))


def in_delta_space(word, m, q):
    s = word.s
    if s > m:
        return False
    return dickson_type(word, q).fits(s, m)


def delta_space(m, s, q):
    """
    Delta^m_s as a list of DicksonWords, grouped by partition type.

    Returns:
        list: [1] for s = 0, [] for s > m
    """
    if s < 0:
        raise ParameterError(f"rank must be non-negative, got {s}")
    if s == 0:
        return [DicksonWord(())]
    if s > m:
        return []
    words = []
    for lam in partitions_in_box(s, m - s):
        parts = list(lam.parts) + [0]
        ranges = [range(*_interval(parts[i], parts[i + 1], q)) for i in range(s)]
        words.extend(DicksonWord(exps) for exps in itertools.product(*ranges))
    return words


class Classification(Enum):
    ESSENTIAL = 'essential'
    EDGE = 'edge'
    NEITHER = 'neither'


def classify(word, m, q):
    """
    Essential if the word is in Delta^m_s. Edge if not, but removing one
    factor Q_{s,i} lands in Delta^m_s: that exponent then sits at the right
    endpoint of its admissible range. Neither otherwise.
    """
    if in_delta_space(word, m, q):
        return Classification.ESSENTIAL
    for i in range(word.s):
        if word.exponent_of(i) and in_delta_space(word.times(i, -1), m, q):
            return Classification.EDGE
    return Classification.NEITHER


class SeriesPoly:
    """Polynomial in t with integer coefficients; trailing zeros stripped."""

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, d, c=1):
        return cls([0] * d + [c])

    @classmethod
    def one(cls):
        return cls([1])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def coefficient(self, d):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def total(self):
        """Value at t = 1."""
        return sum(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, SeriesPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        size = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly(self.coefficient(d) + other.coefficient(d) for d in range(size))

    def __sub__(self, other):
        size = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly(self.coefficient(d) - other.coefficient(d) for d in range(size))

    def __mul__(self, other):
        if isinstance(other, int):
            return SeriesPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return SeriesPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return SeriesPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by t^k."""
        return SeriesPoly([0] * k + list(self.coeffs)) if self.coeffs else self

    def substitute_power(self, k):
        """t -> t^k."""
        if not self.coeffs:
            return self
        out = [0] * (k * (len(self.coeffs) - 1) + 1)
        for d, c in enumerate(self.coeffs):
            out[k * d] = c
        return SeriesPoly(out)

    def divide_one_minus(self, k):
        """
        Exact quotient by (1 - t^k).

        Raises:
            InexactDivision: when (1 - t^k) does not divide the polynomial
        """
        if k <= 0:
            raise InexactDivision(f"cannot divide by 1 - t^{k}")
        if not self.coeffs:
            return self
        size = len(self.coeffs) - k
        if size <= 0:
            raise InexactDivision(f"degree {self.degree} is too small to divide by 1 - t^{k}")
        quotient = [0] * size
        for d in range(size):
            quotient[d] = self.coeffs[d] + (quotient[d - k] if d >= k else 0)
        result = SeriesPoly(quotient)
        if result * SeriesPoly.one_minus(k) != self:
            raise InexactDivision(f"1 - t^{k} does not divide {self}")
        return result

    @classmethod
    def one_minus(cls, k):
        if k == 0:
            return cls()
        out = [0] * (k + 1)
        out[0] = 1
        out[k] = -1
        return cls(out)

    def to_json(self):
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, items):
        return cls(int(c) for c in items)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            if d == 0:
                body = str(abs(c))
            else:
                var = "t" if d == 1 else f"t^{d}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"SeriesPoly({list(self.coeffs)})"


def qt_multinomial(d, alpha, q):
    """
    The (q,t)-multinomial [d over alpha]_{q,t}.

    Numerator prod_{j<d} (1 - t^{q^d - q^j}); for each part alpha_i the
    denominator contributes prod_{j<alpha_i} (1 - t^{q^{A_i} - q^{A_{i-1}+j}}).

    Args:
        d (int): Total, equal to |alpha|
        alpha (Composition): Weak composition of d
        q (int): Field size

    Returns:
        SeriesPoly: The exact quotient
    """
    parts = tuple(alpha.parts) if isinstance(alpha, Composition) else tuple(alpha)
    if sum(parts) != d:
        raise ParameterError(f"composition {parts} does not sum to {d}")
    return _qt_multinomial(d, parts, q)


@lru_cache(maxsize=None)
def _qt_multinomial(d, parts, q):
    result = SeriesPoly.one()
    for j in range(d):
        result = result * SeriesPoly.one_minus(q ** d - q ** j)
    start = 0
    for a in parts:
        end = start + a
        for j in range(a):
            result = result.divide_one_minus(q ** end - q ** (start + j))
        start = end
    return result


def qt_multinomial_factored(d, alpha, q):
    """
    [d over (beta_1, .., beta_l)] as prod_i [d - B_{i-1} over (beta_i, d - B_i)],
    the i-th factor taken at t^{q^{B_{i-1}}}.
    """
    parts = tuple(alpha.parts) if isinstance(alpha, Composition) else tuple(alpha)
    if sum(parts) != d:
        raise ParameterError(f"composition {parts} does not sum to {d}")
    result = SeriesPoly.one()
    used = 0
    for b in parts[:-1]:
        factor = qt_multinomial(d - used, (b, d - used - b), q)
        result = result * factor.substitute_power(q ** used)
        used += b
    return result


def multinomial_count(d, parts, q):
    """prod_i gauss_binom(d - B_{i-1}, beta_i): the value of the (q,t)-multinomial at t = 1."""
    total, used = 1, 0
    for b in parts:
        total *= gauss_binom(d - used, b, q)
        used += b
    return total


def admissible_betas(alpha, m):
    """Weak compositions beta <= alpha with |beta| <= m, in lexicographic order."""
    for beta in itertools.product(*(range(a + 1) for a in alpha.parts)):
        if sum(beta) <= m:
            yield Composition(beta, weak=True)


def conjecture_degree_shift(alpha, beta, m, q):
    """e(m, alpha, beta) = sum_i (alpha_i - beta_i)(q^m - q^{B_i})."""
    sums = beta.partial_sums()
    return sum((a - b) * (q ** m - q ** sums[i + 1])
               for i, (a, b) in enumerate(zip(alpha.parts, beta.parts)))


def hilbert_conjecture(alpha, m, q):
    """
    C_{alpha,m}(t) = sum over beta <= alpha, |beta| <= m of
    t^{e(m,alpha,beta)} [m over beta, m - |beta|]_{q,t}.

    Returns:
        SeriesPoly: The series
    """
    total = SeriesPoly()
    for beta in admissible_betas(alpha, m):
        parts = tuple(beta.parts) + (m - beta.size,)
        summand = qt_multinomial(m, parts, q)
        total = total + summand.shift(conjecture_degree_shift(alpha, beta, m, q))
    logger.debug(f"C_({alpha}),{m}(t) over GF({q}) has total {total.total()}")
    return total


def conjecture_total(alpha, m, q):
    """C_{alpha,m}(1), summed from Gaussian binomials."""
    return sum(multinomial_count(m, tuple(beta.parts) + (m - beta.size,), q)
               for beta in admissible_betas(alpha, m))


def delta_space_series(m, s, q):
    """Generating function of Delta^m_s by Dickson degree."""
    series = SeriesPoly()
    for word in delta_space(m, s, q):
        series = series + SeriesPoly.monomial(word.degree(q))
    return series
