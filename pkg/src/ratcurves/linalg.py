"""Exact rank, row reduction and nullspaces over a :class:`FieldCtx`.

Matrices are assembled sparsely (a dict ``{(row, col): value}``) and converted
to the dense working form for the field: an ``int64`` numpy array for prime
fields below ``2**31`` (products of two residues fit in 63 bits), an
object array for larger primes, and lists of Fractions for the rationals.
Elimination pivots on the first nonzero entry of each column.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import FieldCtx

_INT64_SAFE = 2**31


class SparseMatrix:
    """Accumulating builder; repeated ``add`` calls on a cell are summed."""

    def __init__(self, nrows: int, ncols: int, field: FieldCtx):
        self.nrows, self.ncols, self.field = nrows, ncols, field
        self.entries: dict[tuple[int, int], object] = {}

    def add(self, i: int, j: int, value):
        if value == 0:
            return
        key = (i, j)
        self.entries[key] = self.entries.get(key, 0) + value

    def dense(self):
        F = self.field
        if F.is_prime:
            dtype = np.int64 if F.modulus < _INT64_SAFE else object
            M = np.zeros((self.nrows, self.ncols), dtype=dtype)
            for (i, j), v in self.entries.items():
                M[i, j] = int(v) % F.modulus
            return M
        M = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            M[i][j] = Fraction(v)
        return M


def to_dense(rows, ncols: int, field: FieldCtx):
    """Dense working form of a list of row vectors given as raw field values."""
    sm = SparseMatrix(len(rows), ncols, field)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            sm.add(i, j, v)
    return sm.dense()


# -- prime field ---------------------------------------------------------------

def _rref_mod(M: np.ndarray, p: int, full: bool):
    M = M.copy()
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r, c:] = (M[r, c:] * inv) % p
        if not full:
            below = M[r + 1:, c:]
            below -= np.outer(below[:, 0], M[r, c:]) % p
            below %= p
        else:
            target = M[:, c].copy()
            target[r] = 0
            idx = np.flatnonzero(target)
            if idx.size:
                cols = np.arange(c, ncols)
                update = np.outer(M[idx, c], M[r, c:]) % p
                M[np.ix_(idx, cols)] = (M[np.ix_(idx, cols)] - update) % p
        pivots.append(c)
        r += 1
    return M, pivots


# -- rationals -----------------------------------------------------------------

def _rref_q(M, ncols: int, full: bool):
    M = [list(row) for row in M]
    nrows = len(M)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        prow = [x * inv if x != 0 else x for x in M[r]]
        M[r] = prow
        support = [j for j in range(c, ncols) if prow[j] != 0]
        start = 0 if full else r + 1
        for i in range(start, nrows):
            if i == r:
                continue
            factor = M[i][c]
            if factor == 0:
                continue
            row = M[i]
            for j in support:
                row[j] -= factor * prow[j]
        pivots.append(c)
        r += 1
    return M, pivots


# -- public API ----------------------------------------------------------------

def rank(M, field: FieldCtx, ncols: int | None = None) -> int:
    """Rank of a dense matrix in the field's working form."""
    if field.is_prime:
        if M.size == 0:
            return 0
        if M.shape[1] > M.shape[0]:
            M = np.ascontiguousarray(M.T)
        return len(_rref_mod(M, field.modulus, full=False)[1])
    if not M:
        return 0
    return len(_rref_q(M, ncols if ncols is not None else len(M[0]), full=False)[1])


def rref(rows, ncols: int, field: FieldCtx):
    """Reduced row echelon form of raw-valued ``rows``.

    Returns ``(nonzero_rows, pivot_columns)`` with rows as lists of raw field
    values.
    """
    if not rows:
        return [], []
    M = to_dense(rows, ncols, field)
    if field.is_prime:
        R, piv = _rref_mod(M, field.modulus, full=True)
        return [[int(x) for x in R[i]] for i in range(len(piv))], piv
    R, piv = _rref_q(M, ncols, full=True)
    return [R[i] for i in range(len(piv))], piv


def nullspace_dense(M, ncols: int, field: FieldCtx):
    """Basis of the right kernel, returned in reduced row echelon form."""
    if field.is_prime:
        if M.shape[0] == 0:
            R, piv = np.zeros((0, ncols), dtype=np.int64), []
        else:
            R, piv = _rref_mod(M, field.modulus, full=True)
        R = [[int(x) for x in R[i]] for i in range(len(piv))]
    else:
        R, piv = _rref_q(M, ncols, full=True) if M else ([], [])
        R = R[:len(piv)]
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for i, pc in enumerate(piv):
            if R[i][free] != 0:
                v[pc] = field.neg(R[i][free])
        basis.append(v)
    return rref(basis, ncols, field)[0]


def nullity(M, ncols: int, field: FieldCtx) -> int:
    return ncols - rank(M, field, ncols)


def reduce_against(vec, basis_rows, pivots, field: FieldCtx):
    """Reduce ``vec`` modulo the span of rows already in reduced echelon form."""
    v = list(vec)
    for row, pc in zip(basis_rows, pivots):
        c = v[pc]
        if c != 0:
            v = [field.sub(x, field.mul(c, y)) for x, y in zip(v, row)]
    return v


def det(rows, field: FieldCtx):
    """Determinant of a small square matrix given as raw values (Gaussian elimination)."""
    n = len(rows)
    M = [[field(x) for x in r] for r in rows]
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = field.neg(result)
        result = field.mul(result, M[c][c])
        inv = field.inv(M[c][c])
        for i in range(c + 1, n):
            f = field.mul(M[i][c], inv)
            if f != 0:
                M[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(M[i], M[c])]
    return result
