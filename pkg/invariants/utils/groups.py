"""
GL_n(F_q), its parabolic subgroups P(alpha) and the Borel subgroup.

A matrix g acts by x_j -> sum_i g[i][j] x_i, so column j is the image of x_j.
P(alpha) is block upper triangular with diagonal blocks of sizes alpha_i; under
this action x_1 spans an invariant line for the Borel subgroup.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from invariants.exceptions import NotInvariant, ParameterError, WorkBoundExceeded
from invariants.models import Composition
from invariants.utils.linalg import MatrixGF
from invariants.utils.mvpoly import Poly, Substitution

logger = logging.getLogger(__name__)

DEFAULT_MAX_GROUP_ORDER = 12000


def gl_order(n, q):
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


def parabolic_order(alpha, q):
    """prod_i |GL_{alpha_i}(F_q)| * q^{(n^2 - sum alpha_i^2)/2}."""
    n = alpha.size
    order = q ** ((n * n - sum(a * a for a in alpha.parts)) // 2)
    for a in alpha.parts:
        order *= gl_order(a, q)
    return order


def gl_generators(n, params):
    """
    diag(gamma, 1, .., 1) for a primitive gamma (omitted when q = 2), the
    n-cycle x_j -> x_{j+1}, and the transvection I + E_{1,2}.

    Args:
        n (int): Rank
        params (FieldParams): Field

    Returns:
        list: Non-identity MatrixGF generators; empty for GL_1(F_2)
    """
    if n < 1:
        raise ParameterError(f"rank must be positive, got {n}")
    gens = []
    if params.q > 2:
        diag = np.eye(n, dtype=np.int64)
        diag[0, 0] = params.primitive_element()
        gens.append(MatrixGF(params, diag))
    if n >= 2:
        cycle = np.zeros((n, n), dtype=np.int64)
        for j in range(n):
            cycle[(j + 1) % n, j] = 1
        gens.append(MatrixGF(params, cycle))
        trans = np.eye(n, dtype=np.int64)
        trans[0, 1] = 1
        gens.append(MatrixGF(params, trans))
    return gens


def _embed(block, offset, n):
    out = np.eye(n, dtype=np.int64)
    size = block.rows
    out[offset:offset + size, offset:offset + size] = block.entries
    return MatrixGF(block.params, out)


def leading_block_generators(a, n, params):
    """GL_a(F_q) acting on x_1..x_a inside GL_n(F_q), fixing the other variables."""
    if not 1 <= a <= n:
        raise ParameterError(f"block of size {a} does not fit in rank {n}")
    return [_embed(g, 0, n) for g in gl_generators(a, params)]


def parabolic_generators(alpha, params):
    """
    Generators of P(alpha): GL generators of each diagonal block, embedded,
    plus I + E_{A_i, A_i + 1} across each pair of adjacent blocks.
    """
    n = alpha.size
    sums = alpha.partial_sums()
    gens = []
    for i, a in enumerate(alpha.parts):
        gens.extend(_embed(g, sums[i], n) for g in gl_generators(a, params))
    for boundary in sums[1:-1]:
        trans = np.eye(n, dtype=np.int64)
        trans[boundary - 1, boundary] = 1
        gens.append(MatrixGF(params, trans))
    return gens


@dataclass
class GroupSpec:
    n: int
    params: object
    kind: str
    alpha: Composition
    generators: list = field(default_factory=list)
    max_order: int = DEFAULT_MAX_GROUP_ORDER

    @property
    def q(self):
        return self.params.q

    @property
    def predicted_order(self):
        return parabolic_order(self.alpha, self.q)

    @cached_property
    def elements(self):
        return closure(self.generators, self.params, self.n, self.max_order)

    @cached_property
    def _keys(self):
        return {g.key() for g in self.elements}

    def order(self):
        return len(self.elements)

    def contains(self, g):
        return g.key() in self._keys

    def fixes(self, f, m=None):
        """True when every generator fixes f (in Q_m when m is given)."""
        return all(not w for w in self.witnesses(f, m))

    def witnesses(self, f, m=None):
        """For each generator, g.f - f (zero when fixed)."""
        base = f.truncate(m) if m is not None else f
        return [Substitution(g, m).apply(f) - base for g in self.generators]

    def __str__(self):
        if self.kind == 'full':
            return f"GL_{self.n}(F_{self.q})"
        if self.kind == 'borel':
            return f"B_{self.n}(F_{self.q})"
        return f"P({self.alpha}) in GL_{self.n}(F_{self.q})"


def make_group(alpha, params, max_order=DEFAULT_MAX_GROUP_ORDER):
    """
    The parabolic P(alpha); alpha = (n) gives GL_n and (1, .., 1) the Borel subgroup.
    """
    if isinstance(alpha, int):
        alpha = Composition((alpha,))
    n = alpha.size
    if len(alpha) == 1:
        kind = 'full'
        gens = gl_generators(n, params)
    else:
        kind = 'borel' if all(a == 1 for a in alpha.parts) else 'parabolic'
        gens = parabolic_generators(alpha, params)
    return GroupSpec(n, params, kind, alpha, gens, max_order)


def full_group(n, params, max_order=DEFAULT_MAX_GROUP_ORDER):
    return make_group(Composition((n,)), params, max_order)


def borel_group(n, params, max_order=DEFAULT_MAX_GROUP_ORDER):
    return make_group(Composition((1,) * n), params, max_order)


def closure(generators, params, n, max_order=DEFAULT_MAX_GROUP_ORDER):
    """
    Every element of the group generated, by breadth-first search on right
    multiplication by generators.

    Raises:
        WorkBoundExceeded: when more than max_order elements turn up
    """
    identity = MatrixGF.identity(params, n)
    seen = {identity.key(): identity}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = g @ s
            k = h.key()
            if k not in seen:
                seen[k] = h
                if len(seen) > max_order:
                    raise WorkBoundExceeded(f"group order exceeds {max_order}")
                queue.append(h)
    logger.debug(f"closure of {len(generators)} generators in GL_{n}(F_{params.q}): {len(seen)} elements")
    return list(seen.values())


def coset_reps(G, H, seed=None):
    """
    Left coset representatives of H in G, so that G is the disjoint union of the gH.

    Args:
        G (GroupSpec): Ambient group
        H (GroupSpec): Subgroup
        seed (int): When given, each representative is drawn at random from its coset

    Returns:
        list: MatrixGF representatives, one per coset
    """
    for h in H.generators:
        if not G.contains(h):
            raise ParameterError(f"{H} is not contained in {G}")
    rng = np.random.default_rng(seed) if seed is not None else None
    covered = set()
    reps = []
    for g in G.elements:
        if g.key() in covered:
            continue
        coset = [g @ h for h in H.elements]
        for x in coset:
            covered.add(x.key())
        reps.append(coset[int(rng.integers(len(coset)))] if rng is not None else g)
    expected = G.order() // H.order()
    if len(reps) != expected:
        raise ParameterError(f"found {len(reps)} cosets, expected index {expected}")
    return reps


def transfer(f, reps, m, H=None):
    """
    tr(f) = sum over coset representatives g of g.f, in Q_m.

    Args:
        f (Poly): H-invariant class in Q_m
        reps (list): Coset representatives of H in G
        m (int): Truncation level
        H (GroupSpec): When given, H-invariance of f is checked first

    Returns:
        Poly: A G-invariant of Q_m

    Raises:
        NotInvariant: f is not fixed by H in Q_m
    """
    f = f.truncate(m)
    if H is not None and not H.fixes(f, m):
        raise NotInvariant(f"argument of the transfer is not fixed by {H}")
    total = Poly.zero(f.params, f.nvars)
    for g in reps:
        total = total + Substitution(g, m).apply(f)
    return total
