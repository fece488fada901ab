"""
Brute-force invariants of Q_m(n), degree by degree, and the orbit count of
P(alpha) on F_{q^m}^n.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from invariants.exceptions import WorkBoundExceeded
from invariants.models import Composition
from invariants.utils.combinat import SeriesPoly, conjecture_total, hilbert_conjecture
from invariants.utils.gfq import _digits, embedding, get_field, make_extension
from invariants.utils.groups import DEFAULT_MAX_GROUP_ORDER, make_group
from invariants.utils.linalg import MatrixGF
from invariants.utils.mvpoly import Poly, Substitution, pack

logger = logging.getLogger(__name__)

DEFAULT_MAX_MONOMIALS = 20000
DEFAULT_MAX_ORBIT_POINTS = 10 ** 7
ORBIT_CHUNK = 1 << 18


def check_work_bound(n, m, q, max_monomials=DEFAULT_MAX_MONOMIALS):
    """
    Refuse parameters whose ring Q_m(n) has more than max_monomials monomials.

    Raises:
        WorkBoundExceeded: when q^{mn} > max_monomials
    """
    size = q ** (m * n)
    if size > max_monomials:
        raise WorkBoundExceeded(
            f"Q_{m}({n}) over F_{q} has {size} monomials, above the limit of {max_monomials}")
    return size


@dataclass
class GradedBasis:
    degree: int
    nvars: int
    monomials: list = field(default_factory=list)

    @property
    def index(self):
        return {pack(e): i for i, e in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def poly(self, params, vector):
        terms = {pack(e): int(c) for e, c in zip(self.monomials, vector) if c}
        return Poly(params, self.nvars, terms)


def graded_basis(n, m, q, d):
    """Monomials of Q_m(n) of total degree d, in descending lexicographic order."""
    top = q ** m - 1
    out = []

    def rec(prefix, remaining, left):
        if left == 1:
            if remaining <= top:
                out.append(tuple(prefix + [remaining]))
            return
        hi = min(top, remaining)
        lo = max(0, remaining - top * (left - 1))
        for e in range(hi, lo - 1, -1):
            rec(prefix + [e], remaining - e, left - 1)

    if 0 <= d <= n * top:
        rec([], d, n)
    return GradedBasis(d, n, out)


def invariant_dimension(G, m, d):
    """
    Fixed vectors of G in degree d of Q_m(n).

    For each generator g the matrix M_g has the images of the basis monomials
    as rows; a coefficient row v is fixed when v (M_g - I) = 0, so the fixed
    space is the kernel of the stacked transposes (M_g - I)^T.

    Returns:
        tuple: (dimension, list of Poly spanning the invariants)
    """
    F = G.params
    basis = graded_basis(G.n, m, F.q, d)
    size = len(basis)
    if size == 0:
        return 0, []
    if not G.generators:
        vectors = [np.eye(size, dtype=np.int64)[i] for i in range(size)]
        return size, [basis.poly(F, v) for v in vectors]
    index = basis.index
    identity = MatrixGF.identity(F, size)
    blocks = []
    for g in G.generators:
        sub = Substitution(g, m)
        rows = [sub.apply(Poly.monomial(F, e)).coefficient_vector(index) for e in basis.monomials]
        blocks.append((MatrixGF(F, np.array(rows, dtype=np.int64)) - identity).transpose())
    stacked = blocks[0].stack(blocks[1:])
    vectors = stacked.kernel()
    return len(vectors), [basis.poly(F, v) for v in vectors]


def _degree_job(args):
    q, parts, m, d, max_order = args
    params = get_field(q)
    G = make_group(Composition(parts), params, max_order)
    dim, _ = invariant_dimension(G, m, d)
    return d, dim


def hilbert_bruteforce(G, m, jobs=1):
    """
    Hilbert series of Q_m(n)^G from per-degree kernels.

    Args:
        G (GroupSpec): Acting group
        m (int): Truncation level
        jobs (int): Worker processes; 1 runs in-process

    Returns:
        SeriesPoly: dimension of the invariants in each degree
    """
    q = G.q
    top = G.n * (q ** m - 1)
    if jobs and jobs > 1:
        args = [(q, G.alpha.parts, m, d, G.max_order) for d in range(top + 1)]
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            dims = dict(executor.map(_degree_job, args))
    else:
        dims = {d: invariant_dimension(G, m, d)[0] for d in range(top + 1)}
    return SeriesPoly([dims[d] for d in range(top + 1)])


def _multiplication_matrix(big, c):
    """F_p-matrix of multiplication by c on the digit vectors of the big field."""
    E = big.e
    out = np.zeros((E, E), dtype=np.int64)
    for k in range(E):
        out[:, k] = _digits(big.mul(c, big.p ** k), big.p, E)
    return out


def _point_map(g, big, emb):
    """Matrix on F_p^{nE} of v -> v g, with (v g)_j = sum_i v_i g[i][j]."""
    n, E = g.rows, big.e
    T = np.zeros((n * E, n * E), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            c = int(g.entries[i, j])
            if c:
                T[j * E:(j + 1) * E, i * E:(i + 1) * E] = _multiplication_matrix(big, emb[c])
    return T


def orbit_count(alpha, m, q, max_points=DEFAULT_MAX_ORBIT_POINTS, max_order=DEFAULT_MAX_GROUP_ORDER):
    """
    Number of orbits of P(alpha) on F_{q^m}^n.

    Points are digit vectors over F_p; each generator becomes a permutation
    array of point codes, and labels are propagated to their orbit minimum.

    Returns:
        int: |F_{q^m}^n / P(alpha)|
    """
    if isinstance(alpha, int):
        alpha = Composition((alpha,))
    params = get_field(q)
    n = alpha.size
    total = q ** (m * n)
    if total > max_points:
        raise WorkBoundExceeded(f"{total} points exceed the orbit limit of {max_points}")
    G = make_group(alpha, params, max_order)
    big = make_extension(params, m)
    emb = embedding(params, big)
    p, width = big.p, n * big.e
    weights = p ** np.arange(width, dtype=np.int64)
    images = []
    for g in G.generators:
        T = _point_map(g, big, emb)
        img = np.empty(total, dtype=np.int64)
        for start in range(0, total, ORBIT_CHUNK):
            codes = np.arange(start, min(start + ORBIT_CHUNK, total), dtype=np.int64)
            digits = (codes[:, None] // weights[None, :]) % p
            img[start:start + len(codes)] = ((digits @ T.T) % p) @ weights
        images.append(img)
    labels = np.arange(total, dtype=np.int64)
    while True:
        before = labels.copy()
        for img in images:
            np.minimum(labels, labels[img], out=labels)
            # img is a permutation, so the scatter has no collisions
            labels[img] = np.minimum(labels[img], labels)
        labels = labels[labels]
        if np.array_equal(labels, before):
            break
    count = int(np.unique(labels).size)
    logger.debug(f"P({alpha}) on F_{q}^{m}^{n}: {count} orbits")
    return count


def verify_hilbert(alpha, m, q, jobs=1, max_monomials=DEFAULT_MAX_MONOMIALS,
                   max_orbit_points=DEFAULT_MAX_ORBIT_POINTS, max_order=DEFAULT_MAX_GROUP_ORDER):
    """
    Compare the brute-force Hilbert series of Q_m(n)^{P(alpha)} with C_{alpha,m}(t).

    Returns:
        dict: {alpha, m, q, conjecture, bruteforce, equal, totals}; the orbit
            count is included when the point set is small enough
    """
    if isinstance(alpha, int):
        alpha = Composition((alpha,))
    n = alpha.size
    check_work_bound(n, m, q, max_monomials)
    params = get_field(q)
    G = make_group(alpha, params, max_order)
    conjecture = hilbert_conjecture(alpha, m, q)
    brute = hilbert_bruteforce(G, m, jobs)
    totals = {'conjecture': conjecture.total(), 'bruteforce': brute.total(),
              'gaussian': conjecture_total(alpha, m, q)}
    if q ** (m * n) <= max_orbit_points:
        totals['orbits'] = orbit_count(alpha, m, q, max_orbit_points, max_order)
    equal = conjecture == brute and len(set(totals.values())) == 1
    if 'orbits' in totals and totals['orbits'] < totals['conjecture']:
        logger.warning(f"orbit count {totals['orbits']} is below C(1) = {totals['conjecture']}")
    report = {
        'alpha': str(alpha),
        'm': m,
        'q': q,
        'conjecture': conjecture.to_json(),
        'bruteforce': brute.to_json(),
        'equal': equal,
        'totals': totals,
    }
    if equal:
        logger.info(f"Hilbert series of Q_{m}({n})^P({alpha}) over F_{q} matches: total {totals['conjecture']}")
    else:
        logger.warning(f"Hilbert series mismatch for alpha={alpha}, m={m}, q={q}: "
                       f"C = {conjecture}, brute force = {brute}")
    return report


def per_degree_rows(report, basis_counts=None):
    """Rows (degree, conjecture, bruteforce, basis count, match) for tabular export."""
    conj = SeriesPoly.from_json(report['conjecture'])
    brute = SeriesPoly.from_json(report['bruteforce'])
    top = max(conj.degree or 0, brute.degree or 0)
    rows = []
    for d in range(top + 1):
        c, b = conj.coefficient(d), brute.coefficient(d)
        count = basis_counts.get(d, 0) if basis_counts is not None else None
        match = c == b and (count is None or count == b)
        rows.append({'degree': d, 'conjecture': c, 'bruteforce': b, 'basis_count': count, 'match': match})
    return rows
