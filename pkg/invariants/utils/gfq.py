"""
Arithmetic in the finite field F_q, q = p^e.

Field elements are plain integers 0..q-1. For e = 1 the integer is the residue
mod p. For e > 1 it is the base-p encoding of the coefficient vector of a
polynomial in the generator g modulo the field modulus: with modulus
X^2 + X + 1 over F_2, g is 2 and g + 1 is 3.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from invariants.exceptions import FieldMismatch, ParameterError

logger = logging.getLogger(__name__)

# Full arithmetic tables are built up to this size.
TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def prime_power(q):
    """
    Split a prime power into (p, e).

    Args:
        q (int): Field size

    Returns:
        tuple: (p, e) with p prime and q = p**e
    """
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not is_prime(p):
        raise ParameterError(f"{q} is not a prime power")
    return p, e


def _digits(a, p, e):
    out = []
    for _ in range(e):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds, p):
    value = 0
    for d in reversed(ds):
        value = value * p + d
    return value


def _polymulmod(a, b, modulus, p):
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    return prod[:e]


def _poly_rem(a, b, p):
    """Remainder of a by the monic polynomial b (coefficients low to high)."""
    a = list(a)
    db = len(b) - 1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] % p
        if c:
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return [c % p for c in a[:db]]


def is_irreducible(coeffs, p):
    """Trial division of a monic polynomial (coefficients low to high) by every monic factor of half its degree."""
    d = len(coeffs) - 1
    if d <= 1:
        return d == 1
    if coeffs[0] % p == 0:
        return False
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not any(_poly_rem(coeffs, list(low) + [1], p)):
                return False
    return True


def find_irreducible(p, d):
    """First monic irreducible polynomial of degree d over F_p in lexicographic search order."""
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=d):
        coeffs = list(low) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ParameterError(f"no irreducible polynomial of degree {d} over F_{p}")


def binom_mod_p(n, k, p):
    """
    Binomial coefficient C(n, k) mod p by Lucas's theorem.

    Args:
        n (int): Upper index
        k (int): Lower index
        p (int): Prime

    Returns:
        int: C(n, k) mod p, 0 when k < 0 or k > n
    """
    if k < 0 or n < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        result = result * math.comb(ni, ki) % p
        n //= p
        k //= p
    return result


@dataclass(frozen=True)
class FieldParams:
    p: int
    e: int = 1
    modulus: tuple = ()
    # size of the subfield this field is viewed over (0 means the prime field)
    base: int = 0

    @property
    def q(self):
        return self.p ** self.e

    @property
    def is_prime_field(self):
        return self.e == 1

    @property
    def frobenius_base(self):
        return self.base or self.p

    def __repr__(self):
        return f"GF({self.q})" if not self.base else f"GF({self.q} over {self.base})"

    def element(self, value):
        if isinstance(value, Scalar):
            self.check(value.params)
            return value
        return Scalar(self.from_int(value), self)

    def scalar(self, rep):
        """The element whose representative is rep, 0 <= rep < q."""
        if not 0 <= rep < self.q:
            raise ParameterError(f"{rep} is not a representative of {self!r}")
        return Scalar(rep, self)

    def elements(self):
        return [Scalar(r, self) for r in range(self.q)]

    def check(self, other):
        if other != self:
            raise FieldMismatch(f"{self!r} and {other!r} do not match")

    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    @cached_property
    def _tables(self):
        q = self.q
        if q > TABLE_LIMIT:
            return None
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._slow_add(a, b)
                mul[a, b] = self._slow_mul(a, b)
        neg = np.array([self._slow_neg(a) for a in range(q)], dtype=np.int64)
        sub = add[:, neg]
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        return {'add': add, 'sub': sub, 'mul': mul, 'neg': neg, 'inv': inv,
                'add_l': add.tolist(), 'sub_l': sub.tolist(), 'mul_l': mul.tolist(),
                'neg_l': neg.tolist(), 'inv_l': inv.tolist()}

    def _slow_add(self, a, b):
        p, e = self.p, self.e
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, e), _digits(b, p, e))], p)

    def _slow_neg(self, a):
        p, e = self.p, self.e
        return _undigits([(-x) % p for x in _digits(a, p, e)], p)

    def _slow_mul(self, a, b):
        p, e = self.p, self.e
        return _undigits(_polymulmod(_digits(a, p, e), _digits(b, p, e), self.modulus, p), p)

    # Scalar-level arithmetic on integer representatives

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        t = self._tables
        return t['add_l'][a][b] if t else self._slow_add(a, b)

    def sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        t = self._tables
        return t['sub_l'][a][b] if t else self._slow_add(a, self._slow_neg(b))

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        t = self._tables
        return t['neg_l'][a] if t else self._slow_neg(a)

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        t = self._tables
        return t['mul_l'][a][b] if t else self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ParameterError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        t = self._tables
        return t['inv_l'][a] if t else self.power(a, self.q - 2)

    def power(self, a, k):
        if k < 0:
            return self.power(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        k %= self.q - 1
        if self.e == 1:
            return pow(a, k, self.p)
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def frobenius(self, a, j):
        return self.power(a, self.frobenius_base ** j)

    # Vectorized arithmetic on numpy arrays of representatives

    def np_add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self._tables['add'][a, b]

    def np_sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        return self._tables['sub'][a, b]

    def np_mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        return self._tables['mul'][a, b]

    def np_neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self._tables['neg'][a]

    def primitive_element(self):
        q = self.q
        for g in range(1, q):
            x, order = g, 1
            while x != 1:
                x = self.mul(x, g)
                order += 1
            if order == q - 1:
                return g
        raise ParameterError(f"no primitive element in {self!r}")


@dataclass(frozen=True)
class Scalar:
    rep: int
    params: FieldParams

    def _other(self, other):
        if isinstance(other, Scalar):
            self.params.check(other.params)
            return other.rep
        if isinstance(other, int):
            return self.params.from_int(other)
        raise TypeError(f"cannot combine a field element with {type(other).__name__}")

    def __add__(self, other):
        b = self._other(other)
        return Scalar(self.params.add(self.rep, b), self.params)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return Scalar(self.params.sub(self.rep, b), self.params)

    def __rsub__(self, other):
        b = self._other(other)
        return Scalar(self.params.sub(b, self.rep), self.params)

    def __mul__(self, other):
        b = self._other(other)
        return Scalar(self.params.mul(self.rep, b), self.params)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.params.neg(self.rep), self.params)

    def __truediv__(self, other):
        b = self._other(other)
        return Scalar(self.params.mul(self.rep, self.params.inv(b)), self.params)

    def __pow__(self, k):
        return Scalar(self.params.power(self.rep, k), self.params)

    def __bool__(self):
        return self.rep != 0

    def __int__(self):
        return self.rep

    def __str__(self):
        return str(self.rep)

    def inv(self):
        return Scalar(self.params.inv(self.rep), self.params)

    def frobenius(self, j):
        return Scalar(self.params.frobenius(self.rep, j), self.params)


@lru_cache(maxsize=None)
def get_field(q):
    """
    Field of q elements, with the first irreducible modulus found by search.

    Args:
        q (int): Prime power

    Returns:
        FieldParams: Parameters of F_q
    """
    p, e = prime_power(q)
    if e == 1:
        return FieldParams(p)
    modulus = find_irreducible(p, e)
    logger.debug(f"GF({q}) built with modulus {modulus}")
    return FieldParams(p, e, modulus)


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def inv(a):
    return a.inv()


def power(a, k):
    return a ** k


def frobenius(a, j):
    return a.frobenius(j)


@lru_cache(maxsize=None)
def make_extension(params, m):
    """
    The field F_{q^m} viewed over F_q.

    Args:
        params (FieldParams): The base field F_q
        m (int): Extension degree

    Returns:
        FieldParams: F_{q^m} with base = q
    """
    if m < 1:
        raise ParameterError(f"extension degree must be positive, got {m}")
    d = params.e * m
    modulus = params.modulus if m == 1 else find_irreducible(params.p, d)
    return FieldParams(params.p, d, tuple(modulus) if d > 1 else (), base=params.q)


@lru_cache(maxsize=None)
def embedding(small, big):
    """
    Embedding F_q -> F_{q^m} as a list indexed by representatives of F_q.

    For prime fields this is the identity; otherwise a root of the modulus of
    F_q is located in the big field and g is sent to it.
    """
    if big.p != small.p or big.e % small.e:
        raise FieldMismatch(f"{small!r} does not embed in {big!r}")
    if small.e == 1:
        return tuple(range(small.p))
    root = None
    for r in range(big.q):
        acc, x = 0, 1
        for c in small.modulus:
            acc = big.add(acc, big.mul(big.from_int(c), x))
            x = big.mul(x, r)
        if acc == 0:
            root = r
            break
    if root is None:
        raise FieldMismatch(f"modulus of {small!r} has no root in {big!r}")
    images = []
    for a in range(small.q):
        acc, x = 0, 1
        for d in _digits(a, small.p, small.e):
            acc = big.add(acc, big.mul(big.from_int(d), x))
            x = big.mul(x, root)
        images.append(acc)
    return tuple(images)
