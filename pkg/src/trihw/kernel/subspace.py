"""Subspaces of K^n stored by their canonical reduced echelon basis."""
from __future__ import annotations

from .fields import Field
from .linalg import canonical_basis, kernel_rows, rref_rows


class Subspace:
    __slots__ = ("field", "ambient", "basis", "pivots", "_pivset")

    def __init__(self, field: Field, ambient: int, vectors=(), _canonical=False):
        self.field = field
        self.ambient = ambient
        if _canonical:
            basis = tuple(tuple(v) for v in vectors)
            pivots = []
            for v in basis:
                pivots.append(next(i for i, a in enumerate(v) if not field.is_zero(a)))
        else:
            red, pivots = rref_rows(field, [tuple(v) for v in vectors], ambient)
            basis = tuple(red)
        self.basis = basis
        self.pivots = tuple(pivots)
        self._pivset = frozenset(self.pivots)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, (), _canonical=True)

    @classmethod
    def full(cls, field, n):
        rows = [tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)]
        return cls(field, n, rows, _canonical=True)

    @classmethod
    def coordinate(cls, field, n, indices):
        idx = sorted(set(indices))
        rows = [tuple(field.one if j == i else field.zero for j in range(n)) for i in idx]
        return cls(field, n, rows, _canonical=True)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce(self, v):
        """Remainder of v modulo the subspace (zero on pivot coordinates)."""
        F = self.field
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                for j, a in enumerate(row):
                    if not F.is_zero(a):
                        v[j] = F.sub(v[j], F.mul(c, a))
        return tuple(v)

    def contains(self, v):
        F = self.field
        return all(F.is_zero(a) for a in self.reduce(v))

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v):
        """Coefficients of v in the stored basis; raises if v is outside."""
        r = self.reduce(v)
        if not all(self.field.is_zero(a) for a in r):
            raise ValueError("vector not in subspace")
        return tuple(v[pc] for pc in self.pivots)

    def complement_indices(self):
        return tuple(i for i in range(self.ambient) if i not in self._pivset)

    def quotient_coordinates(self, v):
        """Coordinates of the class of v in the standard complement basis."""
        r = self.reduce(v)
        return tuple(r[i] for i in self.complement_indices())

    def __add__(self, other):
        return Subspace(self.field, self.ambient, self.basis + other.basis)

    def add_vectors(self, vectors):
        return Subspace(self.field, self.ambient, self.basis + tuple(tuple(v) for v in vectors))

    def intersect(self, other):
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient)
        # solve sum a_i u_i = sum b_j w_j
        cols = list(self.basis) + [tuple(F.neg(a) for a in w) for w in other.basis]
        rows = list(zip(*cols))
        ker = kernel_rows(F, rows, len(cols))
        vecs = []
        k = self.dim
        for sol in ker:
            acc = [F.zero] * self.ambient
            for c, u in zip(sol[:k], self.basis):
                if not F.is_zero(c):
                    for i, a in enumerate(u):
                        if not F.is_zero(a):
                            acc[i] = F.add(acc[i], F.mul(c, a))
            vecs.append(acc)
        return Subspace(F, self.ambient, vecs)

    def is_subspace_of(self, other):
        return all(other.contains(v) for v in self.basis)

    def annihilator(self):
        """The subspace of functionals vanishing on self (in the dual coordinates)."""
        return Subspace(self.field, self.ambient,
                        kernel_rows(self.field, self.basis, self.ambient), _canonical=True)


def span(field, n, vectors):
    return Subspace(field, n, vectors)


def canonical(field, n, vectors):
    return canonical_basis(field, vectors, n)


class Echelon:
    """Incrementally grown semi-echelon basis; cheap membership while closing."""

    def __init__(self, field, n):
        self.field = field
        self.n = n
        self.rows = []
        self.pivots = []

    def reduce(self, v):
        F = self.field
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if not F.is_zero(c):
                for j in range(pc, self.n):
                    a = row[j]
                    if not F.is_zero(a):
                        v[j] = F.sub(v[j], F.mul(c, a))
        return v

    def add(self, v):
        """Add v; return the normalized new row or None if v was dependent."""
        F = self.field
        r = self.reduce(v)
        pc = next((i for i, a in enumerate(r) if not F.is_zero(a)), None)
        if pc is None:
            return None
        inv = F.inv(r[pc])
        r = tuple(F.mul(inv, a) for a in r)
        self.rows.append(r)
        self.pivots.append(pc)
        return r

    def __len__(self):
        return len(self.rows)

    def subspace(self):
        return Subspace(self.field, self.n, self.rows)


class Coordinatizer:
    """Coordinates with respect to an arbitrary independent list of vectors."""

    def __init__(self, field, basis, n):
        from .linalg import rref_rows
        self.field = field
        self.basis = tuple(tuple(b) for b in basis)
        self.n = n
        k = len(self.basis)
        aug = [b + tuple(field.one if i == j else field.zero for j in range(k))
               for i, b in enumerate(self.basis)]
        red, piv = rref_rows(field, aug, n + k)
        if len(piv) != k or (piv and piv[-1] >= n):
            raise ValueError("basis vectors are linearly dependent")
        self._rows = [r[:n] for r in red]
        self._comb = [r[n:] for r in red]
        self._piv = piv
        self.span = Subspace(field, n, self._rows, _canonical=True)

    def coords(self, v):
        F = self.field
        k = len(self.basis)
        if not self.span.contains(v):
            raise ValueError("vector outside span")
        out = [F.zero] * k
        for pc, comb in zip(self._piv, self._comb):
            c = v[pc]
            if not F.is_zero(c):
                for i, e in enumerate(comb):
                    if not F.is_zero(e):
                        out[i] = F.add(out[i], F.mul(c, e))
        return tuple(out)

    def try_coords(self, v):
        try:
            return self.coords(v)
        except ValueError:
            return None
