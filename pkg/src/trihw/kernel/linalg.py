"""Dense exact linear algebra over a Field.

Matrices are tuples of row tuples of raw field values.  The ``Matrix``
wrapper carries the field and shape for public APIs; internal helpers work
on plain row lists for speed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Field, PrimeField


class _NoSolution:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NoSolution"

    def __bool__(self):
        return False


NoSolution = _NoSolution()


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, identity_rows(field, n))

    @classmethod
    def zeros(cls, field, m, n):
        return cls(field, m, n, tuple((field.zero,) * n for _ in range(m)))

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            return Matrix(self.field, self.nrows, other.ncols,
                          matmul(self.field, self.rows, other.rows, other.ncols))
        return matvec(self.field, self.rows, other)

    def __add__(self, other):
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(
            tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other):
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(
            tuple(F.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c):
        F = self.field
        return Matrix(F, self.nrows, self.ncols, tuple(tuple(F.mul(c, a) for a in r) for r in self.rows))

    def transpose(self):
        return Matrix(self.field, self.ncols, self.nrows, transpose(self.rows, self.ncols))

    def rank(self):
        return rank(self.field, self.rows, self.ncols)

    def is_zero(self):
        z = self.field.is_zero
        return all(z(a) for r in self.rows for a in r)

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return transpose(self.rows, self.ncols)


def identity_rows(F: Field, n: int):
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def zero_vector(F: Field, n: int):
    return (F.zero,) * n


def unit_vector(F: Field, n: int, i: int):
    v = [F.zero] * n
    v[i] = F.one
    return tuple(v)


def transpose(rows, ncols=None):
    if not rows:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*rows))


def matmul(F: Field, a, b, bcols=None):
    if bcols is None:
        bcols = len(b[0]) if b else 0
    zero = F.zero
    out = []
    if isinstance(F, PrimeField):
        p = F.p
        for row in a:
            acc = [0] * bcols
            for k, x in enumerate(row):
                if x:
                    for j, y in enumerate(b[k]):
                        if y:
                            acc[j] += x * y
            out.append(tuple(v % p for v in acc))
        return tuple(out)
    add, mul, isz = F.add, F.mul, F.is_zero
    for row in a:
        acc = [zero] * bcols
        for k, x in enumerate(row):
            if not isz(x):
                for j, y in enumerate(b[k]):
                    if not isz(y):
                        acc[j] = add(acc[j], mul(x, y))
        out.append(tuple(acc))
    return tuple(out)


def matvec(F: Field, a, v):
    add, mul, isz = F.add, F.mul, F.is_zero
    nz = [(k, x) for k, x in enumerate(v) if not isz(x)]
    out = []
    for row in a:
        acc = F.zero
        for k, x in nz:
            y = row[k]
            if not isz(y):
                acc = add(acc, mul(y, x))
        out.append(acc)
    return tuple(out)


def vec_add(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, v):
    return tuple(F.mul(c, a) for a in v)


def vec_is_zero(F, v):
    return all(F.is_zero(a) for a in v)


def lin_comb(F, coeffs, vectors, n):
    acc = [F.zero] * n
    for c, v in zip(coeffs, vectors):
        if F.is_zero(c):
            continue
        for i, a in enumerate(v):
            if not F.is_zero(a):
                acc[i] = F.add(acc[i], F.mul(c, a))
    return tuple(acc)


def _rref_prime(p, rows, ncols):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], p - 2, p)
        if inv != 1:
            prow = [(x * inv) % p for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] = (ri[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def _rref_generic(F, rows, ncols):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    isz, mul, sub, inv = F.is_zero, F.mul, F.sub, F.inv
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if not isz(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if prow[c] != F.one:
            s = inv(prow[c])
            prow = [mul(s, x) for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if not isz(prow[j])]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if not isz(f):
                    ri = rows[i]
                    for j in nz:
                        ri[j] = sub(ri[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref_rows(F: Field, rows, ncols):
    """Nonzero rows of the reduced echelon form and the pivot columns."""
    if isinstance(F, PrimeField):
        red, piv = _rref_prime(F.p, rows, ncols)
    else:
        red, piv = _rref_generic(F, rows, ncols)
    return [tuple(r) for r in red], piv


def rref(m: Matrix):
    """Full reduced row echelon form (zero rows kept at the bottom), pivots, rank."""
    red, piv = rref_rows(m.field, m.rows, m.ncols)
    full = list(red) + [zero_vector(m.field, m.ncols)] * (m.nrows - len(red))
    return Matrix(m.field, m.nrows, m.ncols, tuple(full)), tuple(piv), len(piv)


def rank(F, rows, ncols):
    return len(rref_rows(F, rows, ncols)[1])


def kernel_rows(F: Field, rows, ncols):
    """Canonical (reduced echelon) basis of the right null space."""
    red, piv = rref_rows(F, rows, ncols)
    pivset = set(piv)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for r, pc in zip(red, piv):
            if not F.is_zero(r[f]):
                v[pc] = F.neg(r[f])
        basis.append(v)
    # free-variable basis is already reduced after reordering by leading index
    return canonical_basis(F, basis, ncols)


def canonical_basis(F, vectors, n):
    red, _ = rref_rows(F, vectors, n)
    return tuple(red)


def solve_rows(F: Field, rows, ncols, rhs):
    """One solution x of rows*x = rhs, or NoSolution."""
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, piv = rref_rows(F, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return NoSolution
    x = [F.zero] * ncols
    for r, pc in zip(red, piv):
        x[pc] = r[ncols]
    return tuple(x)


def inverse_rows(F: Field, rows):
    n = len(rows)
    aug = [tuple(r) + e for r, e in zip(rows, identity_rows(F, n))]
    red, piv = rref_rows(F, aug, 2 * n)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(r[n:]) for r in red)


def rref_matrix(m: Matrix):
    return rref(m)


def kernelBasis(m: Matrix):
    from .subspace import Subspace
    return Subspace(m.field, m.ncols, kernel_rows(m.field, m.rows, m.ncols), _canonical=True)


def solveLinear(m: Matrix, rhs: Sequence):
    return solve_rows(m.field, m.rows, m.ncols, tuple(rhs))


def inverse(m: Matrix) -> Matrix:
    return Matrix(m.field, m.nrows, m.ncols, inverse_rows(m.field, m.rows))
