"""
Sparse multivariate polynomials over F_q.

A monomial x_1^{e_1}...x_n^{e_n} is stored as one packed integer with e_1 in
the most significant field. Packed keys multiply by integer addition and
compare in lexicographic order with x_1 > x_2 > ... > x_n, so the leading
monomial of a polynomial is simply its largest key.
"""
from __future__ import annotations

import heapq
import logging
import re

import numpy as np

from invariants.exceptions import FieldMismatch, NotDivisible, ParameterError
from invariants.utils.gfq import Scalar

logger = logging.getLogger(__name__)

BITS = 24
MASK = (1 << BITS) - 1
MAX_EXPONENT = MASK


def pack(exps):
    key = 0
    for e in exps:
        if e < 0 or e > MAX_EXPONENT:
            raise ParameterError(f"exponent {e} out of range")
        key = (key << BITS) | e
    return key


def unpack(key, nvars):
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & MASK
        key >>= BITS
    return tuple(out)


def key_degree(key):
    total = 0
    while key:
        total += key & MASK
        key >>= BITS
    return total


def key_below(key, bound):
    """True when every exponent packed in key is smaller than bound."""
    while key:
        if (key & MASK) >= bound:
            return False
        key >>= BITS
    return True


def _divides(a, b):
    while a:
        if (a & MASK) > (b & MASK):
            return False
        a >>= BITS
        b >>= BITS
    return True


class Poly:
    """Immutable sparse polynomial: packed monomial key -> nonzero field representative."""

    __slots__ = ('params', 'nvars', 'terms')

    def __init__(self, params, nvars, terms=None):
        self.params = params
        self.nvars = nvars
        self.terms = {k: c for k, c in terms.items() if c} if terms else {}

    @classmethod
    def _raw(cls, params, nvars, terms):
        poly = cls.__new__(cls)
        poly.params = params
        poly.nvars = nvars
        poly.terms = terms
        return poly

    # Constructors

    @classmethod
    def zero(cls, params, nvars):
        return cls._raw(params, nvars, {})

    @classmethod
    def constant(cls, params, nvars, c=1):
        c = _rep(params, c)
        return cls._raw(params, nvars, {0: c} if c else {})

    @classmethod
    def one(cls, params, nvars):
        return cls.constant(params, nvars, 1)

    @classmethod
    def variable(cls, params, nvars, i):
        """The variable x_i (1-based)."""
        if not 1 <= i <= nvars:
            raise ParameterError(f"variable x{i} outside 1..{nvars}")
        return cls._raw(params, nvars, {1 << (BITS * (nvars - i)): 1})

    @classmethod
    def monomial(cls, params, exps, c=1):
        c = _rep(params, c)
        return cls._raw(params, len(exps), {pack(exps): c} if c else {})

    @classmethod
    def from_dict(cls, params, nvars, coeffs):
        terms = {}
        for exps, c in coeffs.items():
            if len(exps) != nvars:
                raise ParameterError(f"monomial {exps} does not have {nvars} exponents")
            k = pack(exps)
            terms[k] = params.add(terms.get(k, 0), _rep(params, c))
        return cls(params, nvars, terms)

    # Inspection

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self):
        """Total degree, None for the zero polynomial."""
        if not self.terms:
            return None
        return max(key_degree(k) for k in self.terms)

    def is_homogeneous(self):
        return len({key_degree(k) for k in self.terms}) <= 1

    def items(self):
        """(exponent tuple, Scalar) pairs in descending lexicographic order."""
        for k in sorted(self.terms, reverse=True):
            yield unpack(k, self.nvars), Scalar(self.terms[k], self.params)

    def coefficient(self, exps):
        return Scalar(self.terms.get(pack(exps), 0), self.params)

    def leading(self):
        if not self.terms:
            raise ParameterError("the zero polynomial has no leading term")
        k = max(self.terms)
        return unpack(k, self.nvars), Scalar(self.terms[k], self.params)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.params == other.params and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.params, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self.nvars} vars over {self.params!r}: {self})"

    def __str__(self):
        return to_text(self)

    # Arithmetic

    def _check(self, other):
        if self.params != other.params or self.nvars != other.nvars:
            raise FieldMismatch(
                f"cannot combine polynomials over {self.params!r}/{self.nvars} vars "
                f"and {other.params!r}/{other.nvars} vars")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.params, self.nvars, other)
        self._check(other)
        F = self.params
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = F.add(terms.get(k, 0), c)
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return Poly._raw(F, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.params
        return Poly._raw(F, self.nvars, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.params, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        F = self.params
        c = _rep(F, c)
        if not c:
            return Poly.zero(F, self.nvars)
        return Poly._raw(F, self.nvars, {k: F.mul(c, v) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        return _multiply(self, other, None)

    __rmul__ = __mul__

    def mul_truncated(self, other, m):
        """Product followed by truncation modulo I_m, without materializing dead monomials."""
        self._check(other)
        return _multiply(self, other, self.params.q ** m)

    def __pow__(self, k):
        return self.power(k)

    def power(self, k, m=None):
        """
        f^k, expanded digit by digit in base q: f^k = prod_j (f^{q^j})^{a_j}.

        Args:
            k (int): Non-negative exponent
            m (int): Truncate modulo I_m along the way when given

        Returns:
            Poly: The power
        """
        if k < 0:
            raise ParameterError("negative powers are not polynomials")
        q = self.params.q
        bound = q ** m if m is not None else None
        result = Poly.one(self.params, self.nvars)
        j = 0
        while k:
            k, a = divmod(k, q)
            if a:
                base = self.frobenius_power(j)
                if bound is not None:
                    base = base.truncate_bound(bound)
                for _ in range(a):
                    result = _multiply(result, base, bound)
            j += 1
        return result

    def frobenius_power(self, j):
        """f^{q^j}; coefficients in F_q are fixed by the q-th power map."""
        if j == 0:
            return self
        factor = self.params.q ** j
        return Poly._raw(self.params, self.nvars, {k * factor: c for k, c in self.terms.items()})

    # Quotient by I_m and variable bookkeeping

    def truncate(self, m):
        """Normal form in Q_m: drop every monomial with an exponent >= q^m."""
        if m < 0:
            raise ParameterError(f"truncation level must be non-negative, got {m}")
        return self.truncate_bound(self.params.q ** m)

    def truncate_bound(self, bound):
        return Poly._raw(self.params, self.nvars,
                         {k: c for k, c in self.terms.items() if key_below(k, bound)})

    def extend(self, nvars):
        """The same polynomial seen in nvars >= self.nvars variables (new ones appended)."""
        extra = nvars - self.nvars
        if extra < 0:
            raise ParameterError(f"cannot shrink {self.nvars} variables to {nvars}")
        if extra == 0:
            return self
        shift = BITS * extra
        return Poly._raw(self.params, nvars, {k << shift: c for k, c in self.terms.items()})

    def shift_variables(self, offset, nvars=None):
        """Rename x_i to x_{i+offset}; the result lives in nvars variables."""
        nvars = nvars if nvars is not None else self.nvars + offset
        if offset + self.nvars > nvars:
            raise ParameterError("shifted variables do not fit")
        tail = nvars - offset - self.nvars
        return Poly._raw(self.params, nvars, {k << (BITS * tail): c for k, c in self.terms.items()})

    def insert_variable(self, j):
        """
        Insert a new variable at position j (1-based), so f(x_1..x_c) becomes
        f(x_1, .., x_{j-1}, x_{j+1}, .., x_{c+1}).
        """
        n = self.nvars
        if not 1 <= j <= n + 1:
            raise ParameterError(f"cannot insert variable at position {j} into {n} variables")
        low_bits = BITS * (n - j + 1)
        low_mask = (1 << low_bits) - 1
        terms = {((k >> low_bits) << (low_bits + BITS)) | (k & low_mask): c
                 for k, c in self.terms.items()}
        return Poly._raw(self.params, n + 1, terms)

    def substitute_variables(self, positions, nvars):
        """Send x_i to x_{positions[i-1]} in a ring with nvars variables."""
        if len(positions) != self.nvars:
            raise ParameterError("one target position per variable is required")
        terms = {}
        for k, c in self.terms.items():
            exps = unpack(k, self.nvars)
            new = [0] * nvars
            for e, pos in zip(exps, positions):
                new[pos - 1] += e
            terms[pack(new)] = c
        return Poly(self.params, nvars, terms)

    def set_zero(self, i):
        """Specialize x_i = 0."""
        shift = BITS * (self.nvars - i)
        return Poly._raw(self.params, self.nvars,
                         {k: c for k, c in self.terms.items() if not (k >> shift) & MASK})

    def homogeneous_part(self, d):
        return Poly._raw(self.params, self.nvars,
                         {k: c for k, c in self.terms.items() if key_degree(k) == d})

    def coefficient_vector(self, index):
        """Coefficients on a monomial basis given as {packed key: position}."""
        vec = np.zeros(len(index), dtype=np.int64)
        for k, c in self.terms.items():
            try:
                vec[index[k]] = c
            except KeyError:
                raise ParameterError(f"monomial {unpack(k, self.nvars)} is outside the basis") from None
        return vec


def _rep(params, c):
    if isinstance(c, Scalar):
        params.check(c.params)
        return c.rep
    return params.from_int(c)


def _multiply(a, b, bound):
    F = a.params
    ta, tb = a.terms, b.terms
    if not ta or not tb:
        return Poly.zero(F, a.nvars)
    if len(ta) < len(tb):
        ta, tb = tb, ta
    acc = {}
    if F.is_prime_field:
        get = acc.get
        for kb, cb in tb.items():
            for ka, ca in ta.items():
                k = ka + kb
                acc[k] = get(k, 0) + ca * cb
        p = F.p
        terms = {}
        for k, c in acc.items():
            c %= p
            if c and (bound is None or key_below(k, bound)):
                terms[k] = c
        return Poly._raw(F, a.nvars, terms)
    add, mul = F.add, F.mul
    for kb, cb in tb.items():
        for ka, ca in ta.items():
            k = ka + kb
            acc[k] = add(acc.get(k, 0), mul(ca, cb))
    terms = {k: c for k, c in acc.items() if c and (bound is None or key_below(k, bound))}
    return Poly._raw(F, a.nvars, terms)


def truncate(f, m):
    return f.truncate(m)


def det(mat):
    """
    Determinant of a square array of polynomials by Laplace expansion along the last row.

    Args:
        mat (list): Square list of lists of Poly

    Returns:
        Poly: The determinant
    """
    size = len(mat)
    if any(len(row) != size for row in mat):
        raise ParameterError("determinant of a non-square array")
    if size == 1:
        return mat[0][0]
    last = mat[-1]
    result = Poly.zero(last[0].params, last[0].nvars)
    for j, entry in enumerate(last):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[:-1]]
        term = entry * det(minor)
        result = result + term if (size - 1 + j) % 2 == 0 else result - term
    return result


def exact_div(f, g):
    """
    Exact quotient f / g by repeated leading-term division in lex order.

    Args:
        f (Poly): Dividend
        g (Poly): Nonzero divisor

    Returns:
        Poly: h with f = g * h

    Raises:
        NotDivisible: when a leading term of the running remainder is not
            divisible by the leading monomial of g; carries that remainder.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    F = f.params
    lead = max(g.terms)
    inv_lead = F.inv(g.terms[lead])
    others = [(k - lead, c) for k, c in g.terms.items() if k != lead]
    rem = dict(f.terms)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quotient = {}
    while heap:
        k = -heapq.heappop(heap)
        c = rem.pop(k, 0)
        if not c:
            continue
        if not _divides(lead, k):
            rem[k] = c
            raise NotDivisible(
                f"{unpack(k, f.nvars)} is not divisible by {unpack(lead, f.nvars)}",
                remainder=Poly(F, f.nvars, rem))
        qc = F.mul(c, inv_lead)
        quotient[k - lead] = qc
        for dk, gc in others:
            kk = k + dk
            old = rem.get(kk, 0)
            new = F.sub(old, F.mul(qc, gc))
            if new:
                if not old:
                    heapq.heappush(heap, -kk)
                rem[kk] = new
            elif old:
                del rem[kk]
    return Poly._raw(F, f.nvars, quotient)


class Substitution:
    """
    The linear substitution x_j -> sum_i g[i][j] x_i, applied to polynomials.

    Powers of the image forms are built digit by digit in base q and cached per
    (variable, exponent), so a monomial with exponents near q^m costs a handful
    of multiplications.
    """

    def __init__(self, matrix, m=None):
        self.params = matrix.params
        self.n = matrix.rows
        if matrix.rows != matrix.cols:
            raise ParameterError("substitution matrix must be square")
        self.m = m
        self.bound = self.params.q ** m if m is not None else None
        entries = matrix.entries
        self.forms = []
        for j in range(self.n):
            terms = {}
            for i in range(self.n):
                c = int(entries[i, j])
                if c:
                    terms[1 << (BITS * (self.n - 1 - i))] = c
            self.forms.append(Poly._raw(self.params, self.n, terms))
        self._powers = {}

    def power_of_form(self, j, e):
        key = (j, e)
        cached = self._powers.get(key)
        if cached is not None:
            return cached
        result = self.forms[j].power(e, self.m)
        self._powers[key] = result
        return result

    def apply(self, f):
        if f.nvars != self.n:
            raise ParameterError(f"substitution on {self.n} variables applied to {f.nvars}")
        F = self.params
        total = Poly.zero(F, self.n)
        for k, c in f.terms.items():
            exps = unpack(k, self.n)
            image = Poly.constant(F, self.n, F.scalar(c))
            for j, e in enumerate(exps):
                if e:
                    image = _multiply(image, self.power_of_form(j, e), self.bound)
                    if image.is_zero():
                        break
            total = total + image
        return total


def act(g, f, m=None):
    """
    Apply the group element g to f by linear substitution.

    Args:
        g (MatrixGF): Invertible n x n matrix over F_q
        f (Poly): Polynomial in n variables
        m (int): When given, the result is the normal form in Q_m

    Returns:
        Poly: g . f
    """
    if not g.is_invertible():
        raise ParameterError("acting matrix is singular")
    result = Substitution(g, m).apply(f)
    return result


def act_naive(g, f):
    """Substitution with plain repeated multiplication; reference for small exponents."""
    sub = Substitution(g)
    total = Poly.zero(f.params, f.nvars)
    for k, c in f.terms.items():
        image = Poly.constant(f.params, f.nvars, f.params.scalar(c))
        for j, e in enumerate(unpack(k, f.nvars)):
            for _ in range(e):
                image = image * sub.forms[j]
        total = total + image
    return total


_TERM_RE = re.compile(r'^(?:(\d+)\*?)?((?:x\d+(?:\^\d+)?\*?)*)$')
_VAR_RE = re.compile(r'x(\d+)(?:\^(\d+))?')


def to_text(f):
    """Render as `c*x1^e1*x2^e2 + ...` in descending lex order; unit coefficients and exponents omitted."""
    if f.is_zero():
        return "0"
    parts = []
    for k in sorted(f.terms, reverse=True):
        c = f.terms[k]
        exps = unpack(k, f.nvars)
        factors = []
        for i, e in enumerate(exps, start=1):
            if e == 1:
                factors.append(f"x{i}")
            elif e:
                factors.append(f"x{i}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def parse(text, params, nvars):
    """
    Parse the text format produced by to_text. A leading '-' on a term negates it.

    Args:
        text (str): Polynomial text
        params (FieldParams): Coefficient field
        nvars (int): Ambient variable count

    Returns:
        Poly: The parsed polynomial
    """
    text = text.strip()
    result = Poly.zero(params, nvars)
    if text in ("", "0"):
        return result
    for raw in re.split(r'\s*\+\s*', text):
        term = raw.replace(" ", "")
        sign = 1
        if term.startswith("-"):
            sign, term = -1, term[1:]
        match = _TERM_RE.match(term)
        if not match or not term:
            raise ParameterError(f"cannot parse term '{raw}'")
        coeff = int(match.group(1)) if match.group(1) else 1
        if coeff >= params.q:
            raise ParameterError(f"coefficient {coeff} is not a representative of {params!r}")
        exps = [0] * nvars
        for var, exp in _VAR_RE.findall(match.group(2)):
            i = int(var)
            if not 1 <= i <= nvars:
                raise ParameterError(f"variable x{i} outside 1..{nvars}")
            exps[i - 1] += int(exp) if exp else 1
        c = coeff if sign > 0 else params.neg(coeff)
        result = result + Poly._raw(params, nvars, {pack(exps): c} if c else {})
    return result
