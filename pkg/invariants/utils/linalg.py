"""
Dense matrices over F_q with exact Gaussian elimination.

Entries are numpy int64 arrays of field representatives; row operations are
vectorized through the field's arithmetic (mod p, or table lookups).
"""
from __future__ import annotations

import logging

import numpy as np

from invariants.exceptions import FieldMismatch, ParameterError

logger = logging.getLogger(__name__)


class MatrixGF:
    __slots__ = ('params', 'entries')

    def __init__(self, params, entries):
        self.params = params
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        self.entries = arr

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    @classmethod
    def identity(cls, params, n):
        return cls(params, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, params, rows, cols):
        return cls(params, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def parse(cls, text, params):
        """Read `1,1,0;0,1,0;0,0,1` (rows separated by semicolons)."""
        try:
            rows = [[int(x) for x in row.split(",")] for row in text.strip().split(";")]
        except ValueError as e:
            raise ParameterError(f"cannot parse matrix '{text}': {str(e)}") from e
        if len({len(r) for r in rows}) != 1:
            raise ParameterError(f"ragged matrix '{text}'")
        if any(not 0 <= x < params.q for r in rows for x in r):
            raise ParameterError(f"entries of '{text}' are not representatives of {params!r}")
        return cls(params, rows)

    def __str__(self):
        return ";".join(",".join(str(int(x)) for x in row) for row in self.entries)

    def __repr__(self):
        return f"MatrixGF({self})"

    def key(self):
        return (self.entries.shape, self.entries.tobytes())

    def __eq__(self, other):
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.key())

    def copy(self):
        return MatrixGF(self.params, self.entries.copy())

    def transpose(self):
        return MatrixGF(self.params, self.entries.T.copy())

    def __matmul__(self, other):
        if self.params != other.params:
            raise FieldMismatch("matrices over different fields")
        if self.cols != other.rows:
            raise ParameterError(f"cannot multiply {self.entries.shape} by {other.entries.shape}")
        F = self.params
        if F.is_prime_field:
            return MatrixGF(F, (self.entries @ other.entries) % F.p)
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for k in range(self.cols):
            out = F.np_add(out, F.np_mul(self.entries[:, k][:, None], other.entries[k][None, :]))
        return MatrixGF(F, out)

    def __sub__(self, other):
        return MatrixGF(self.params, self.params.np_sub(self.entries, other.entries))

    def stack(self, others):
        """Vertical concatenation."""
        blocks = [self.entries] + [o.entries for o in others]
        return MatrixGF(self.params, np.vstack(blocks))

    def rref(self):
        """
        Reduced row echelon form.

        Returns:
            tuple: (MatrixGF in rref with zero rows dropped, list of pivot columns)
        """
        F = self.params
        R = self.entries.copy()
        nrows, ncols = R.shape
        pivots = []
        r = 0
        for col in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(R[r:, col])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                R[[r, piv]] = R[[piv, r]]
            lead = int(R[r, col])
            if lead != 1:
                R[r] = F.np_mul(F.inv(lead), R[r])
            rows = np.nonzero(R[:, col])[0]
            rows = rows[rows != r]
            if rows.size:
                factors = R[rows, col][:, None]
                R[rows] = F.np_sub(R[rows], F.np_mul(factors, R[r][None, :]))
            pivots.append(col)
            r += 1
        return MatrixGF(F, R[:r]), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """
        Basis of {v : A v = 0}, one vector per free column, in rref-derived canonical form.

        Returns:
            list: numpy vectors of length cols
        """
        F = self.params
        R, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = np.zeros(self.cols, dtype=np.int64)
            v[free] = 1
            for row, pc in enumerate(pivots):
                v[pc] = F.neg(int(R.entries[row, free]))
            basis.append(v)
        return basis

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def row_space_contains(self, v):
        return RowSpace(self).contains(v)

    def solve(self, b):
        """
        One solution x of A x = b, or None when the system is inconsistent.
        """
        F = self.params
        aug = MatrixGF(F, np.hstack([self.entries, np.asarray(b, dtype=np.int64).reshape(-1, 1)]))
        R, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = np.zeros(self.cols, dtype=np.int64)
        for row, pc in enumerate(pivots):
            x[pc] = R.entries[row, -1]
        return x


class RowSpace:
    """Echelon basis of a row space, for repeated membership queries."""

    def __init__(self, matrix):
        self.params = matrix.params
        self.cols = matrix.cols
        if matrix.rows:
            reduced, self.pivots = matrix.rref()
            self.basis = reduced.entries
        else:
            self.pivots, self.basis = [], np.zeros((0, matrix.cols), dtype=np.int64)

    @property
    def dimension(self):
        return len(self.pivots)

    def reduce(self, v):
        F = self.params
        v = np.asarray(v, dtype=np.int64).copy()
        for row, pc in enumerate(self.pivots):
            c = int(v[pc])
            if c:
                v = F.np_sub(v, F.np_mul(c, self.basis[row]))
        return v

    def contains(self, v):
        if len(v) != self.cols:
            raise ParameterError(f"vector of length {len(v)} against {self.cols} columns")
        return not np.any(self.reduce(v))


def kernel(mat):
    return mat.kernel()


def rank(mat):
    return mat.rank()


def row_space_contains(mat, v):
    return mat.row_space_contains(v)
