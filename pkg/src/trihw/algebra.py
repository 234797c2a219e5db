"""Finite-dimensional Z-graded algebras given by structure constants."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .kernel import (Field, NoSolution, Subspace, kernel_rows, rank, solve_rows, unit_vector,
                     zero_vector)
from .kernel.subspace import Coordinatizer, Echelon


class IncompleteSimples(RuntimeError):
    pass


class LiftDivergence(RuntimeError):
    pass


class GradedAlgebra:
    """Basis b_0..b_{n-1} with degrees, products b_i b_j = sum_k c[i][j][k] b_k."""

    def __init__(self, field: Field, degrees: Sequence[int],
                 products: Mapping[tuple, Mapping[int, object]], unit,
                 names: Sequence[str] | None = None, name: str = ""):
        self.field = field
        self.degrees = tuple(int(d) for d in degrees)
        self.dim = n = len(self.degrees)
        F = field
        table = [[() for _ in range(n)] for _ in range(n)]
        for (i, j), vec in products.items():
            entries = tuple(sorted((int(k), c) for k, c in vec.items() if not F.is_zero(c)))
            table[i][j] = entries
        self.table = tuple(tuple(r) for r in table)
        if isinstance(unit, Mapping):
            u = [F.zero] * n
            for k, c in unit.items():
                u[int(k)] = c
            unit = u
        self.unit = tuple(unit)
        self.names = tuple(names) if names else tuple(f"b{i}" for i in range(n))
        self.name = name
        self._opposite = None
        self._cache = {}

    # ----- basic data

    def __repr__(self):
        return f"GradedAlgebra({self.name or '?'}, dim={self.dim}, {self.field.descriptor})"

    def __reduce__(self):
        prods = {(i, j): dict(self.table[i][j]) for i in range(self.dim)
                 for j in range(self.dim) if self.table[i][j]}
        return (GradedAlgebra, (self.field, self.degrees, prods, self.unit, self.names, self.name))

    def same_as(self, other):
        return (self.field == other.field and self.degrees == other.degrees
                and self.table == other.table and self.unit == other.unit)

    def support(self):
        return tuple(sorted(set(self.degrees)))

    def indices_of_degree(self, d):
        return tuple(i for i, e in enumerate(self.degrees) if e == d)

    def basis_vector(self, i):
        return unit_vector(self.field, self.dim, i)

    def zero(self):
        return zero_vector(self.field, self.dim)

    def degree_of(self, v):
        """Degree of a nonzero homogeneous vector, None otherwise."""
        degs = {self.degrees[i] for i, a in enumerate(v) if not self.field.is_zero(a)}
        return degs.pop() if len(degs) == 1 else None

    def element(self, coeffs: Mapping[int, object]):
        v = [self.field.zero] * self.dim
        for k, c in coeffs.items():
            v[k] = self.field.add(v[k], c)
        return tuple(v)

    # ----- multiplication

    def multiply(self, a, b):
        F = self.field
        add, mul, isz = F.add, F.mul, F.is_zero
        out = [F.zero] * self.dim
        bnz = [(j, y) for j, y in enumerate(b) if not isz(y)]
        for i, x in enumerate(a):
            if isz(x):
                continue
            row = self.table[i]
            for j, y in bnz:
                entries = row[j]
                if entries:
                    s = mul(x, y)
                    for k, c in entries:
                        out[k] = add(out[k], mul(s, c))
        return tuple(out)

    def product_of_basis(self, i, j):
        return self.element(dict(self.table[i][j]))

    def add(self, a, b):
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        F = self.field
        return tuple(F.mul(c, x) for x in a)

    def power(self, a, k):
        out = self.unit
        for _ in range(k):
            out = self.multiply(out, a)
        return out

    def left_matrix(self, a):
        """Matrix (rows) of x -> a x in the basis."""
        cols = [self.multiply(a, self.basis_vector(j)) for j in range(self.dim)]
        return tuple(zip(*cols))

    def right_matrix(self, a):
        cols = [self.multiply(self.basis_vector(j), a) for j in range(self.dim)]
        return tuple(zip(*cols))

    # ----- derived algebras

    def opposite(self) -> "GradedAlgebra":
        if self._opposite is None:
            n = self.dim
            prods = {(j, i): dict(self.table[i][j]) for i in range(n) for j in range(n)
                     if self.table[i][j]}
            op = GradedAlgebra(self.field, [-d for d in self.degrees], prods, self.unit,
                               names=self.names, name=(self.name + "^op") if self.name else "op")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def generators(self):
        """A small list of homogeneous basis indices generating A as an algebra."""
        if "generators" in self._cache:
            return self._cache["generators"]
        order = sorted(range(self.dim), key=lambda i: (abs(self.degrees[i]) == 0, i))
        chosen = []
        closure = _left_closure(self, [], [self.unit])
        for i in order:
            if closure.dim == self.dim:
                break
            if not closure.contains(self.basis_vector(i)):
                chosen.append(i)
                closure = _left_closure(self, [self.basis_vector(g) for g in chosen], [self.unit])
        for g in list(chosen):
            trial = [h for h in chosen if h != g]
            if _left_closure(self, [self.basis_vector(h) for h in trial], [self.unit]).dim == self.dim:
                chosen = trial
        self._cache["generators"] = tuple(chosen)
        return self._cache["generators"]


def _left_closure(A: GradedAlgebra, mults, start, right_mults=()):
    """Smallest subspace containing `start` stable under left mult by `mults`
    and right mult by `right_mults`."""
    ech = Echelon(A.field, A.dim)
    queue = []
    for v in start:
        r = ech.add(v)
        if r is not None:
            queue.append(r)
    while queue:
        v = queue.pop()
        for g in mults:
            r = ech.add(A.multiply(g, v))
            if r is not None:
                queue.append(r)
        for g in right_mults:
            r = ech.add(A.multiply(v, g))
            if r is not None:
                queue.append(r)
    return ech.subspace()


# ----------------------------------------------------------------- verification


@dataclass
class AlgebraReport:
    ok: bool
    failures: list = dc_field(default_factory=list)
    failure_count: int = 0

    def to_json(self):
        return {"ok": self.ok, "failure_count": self.failure_count,
                "failures": self.failures[:20]}


def verifyAlgebra(A: GradedAlgebra, limit: int = 50) -> AlgebraReport:
    F = A.field
    n = A.dim
    failures = []
    count = 0

    def fail(msg):
        nonlocal count
        count += 1
        if len(failures) < limit:
            failures.append(msg)

    for i in range(n):
        for j in range(n):
            for k, _ in A.table[i][j]:
                if A.degrees[k] != A.degrees[i] + A.degrees[j]:
                    fail(f"grading: b{i}*b{j} has a term b{k} of degree {A.degrees[k]}")
    for i in range(n):
        b = A.basis_vector(i)
        if A.multiply(A.unit, b) != b:
            fail(f"unit: 1*b{i} != b{i}")
        if A.multiply(b, A.unit) != b:
            fail(f"unit: b{i}*1 != b{i}")
    # associativity on all triples via sparse rows
    add, mul = F.add, F.mul
    for i in range(n):
        row_i = A.table[i]
        for j in range(n):
            pij = row_i[j]
            row_j = A.table[j]
            for k in range(n):
                lhs = {}
                for m, c in pij:
                    for q, d in A.table[m][k]:
                        lhs[q] = add(lhs.get(q, F.zero), mul(c, d))
                rhs = {}
                for m, c in row_j[k]:
                    for q, d in row_i[m]:
                        rhs[q] = add(rhs.get(q, F.zero), mul(c, d))
                keys = set(lhs) | set(rhs)
                if any(not F.is_zero(F.sub(lhs.get(q, F.zero), rhs.get(q, F.zero))) for q in keys):
                    fail(f"associativity: (b{i} b{j}) b{k} != b{i} (b{j} b{k})")
    return AlgebraReport(ok=count == 0, failures=failures, failure_count=count)


def oppositeAlgebra(A: GradedAlgebra) -> GradedAlgebra:
    return A.opposite()


def multiply(A: GradedAlgebra, a, b):
    return A.multiply(a, b)


def subalgebraClosure(A: GradedAlgebra, generators) -> Subspace:
    return _left_closure(A, [tuple(g) for g in generators], [A.unit])


def twoSidedIdeal(A: GradedAlgebra, generators) -> Subspace:
    gens = [A.basis_vector(g) for g in A.generators()]
    return _left_closure(A, gens, [tuple(g) for g in generators], right_mults=gens)


def leftIdeal(A: GradedAlgebra, generators) -> Subspace:
    gens = [A.basis_vector(g) for g in A.generators()]
    return _left_closure(A, gens, [tuple(g) for g in generators])


def homogeneous_subspace_degrees(A: GradedAlgebra, S: Subspace):
    """Degree of each stored basis vector; raises if one is not homogeneous."""
    out = []
    for v in S.basis:
        d = A.degree_of(v)
        if d is None:
            raise ValueError("subspace basis vector is not homogeneous")
        out.append(d)
    return out


def subalgebraAsAlgebra(A: GradedAlgebra, basis, name=""):
    """The subalgebra spanned by `basis` as a standalone GradedAlgebra.

    Returns (algebra, coordinatizer) where the coordinatizer maps ambient
    vectors in the span to coordinates."""
    F = A.field
    basis = [tuple(b) for b in basis]
    coord = Coordinatizer(F, basis, A.dim)
    degs = []
    for b in basis:
        d = A.degree_of(b)
        if d is None:
            raise ValueError("subalgebra basis must be homogeneous")
        degs.append(d)
    prods = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            c = coord.coords(A.multiply(u, v))
            entries = {k: x for k, x in enumerate(c) if not F.is_zero(x)}
            if entries:
                prods[(i, j)] = entries
    unit = coord.coords(A.unit)
    return GradedAlgebra(F, degs, prods, unit, name=name), coord


def quotientAlgebra(A: GradedAlgebra, ideal: Subspace, name=""):
    """A / ideal on the standard complement basis; returns (algebra, kept indices)."""
    F = A.field
    keep = ideal.complement_indices()
    pos = {k: t for t, k in enumerate(keep)}
    prods = {}
    for a in keep:
        for b in keep:
            r = ideal.reduce(A.product_of_basis(a, b))
            entries = {pos[k]: r[k] for k in keep if not F.is_zero(r[k])}
            if entries:
                prods[(pos[a], pos[b])] = entries
    u = ideal.reduce(A.unit)
    unit = [u[k] for k in keep]
    return GradedAlgebra(F, [A.degrees[k] for k in keep], prods, unit,
                         names=[A.names[k] for k in keep], name=name), keep


# ------------------------------------------------------- radical and idempotents


def _action_of(module, vec):
    """Dense matrix of the module action of an algebra element."""
    F = module.algebra.field
    m = module.dim
    acc = [[F.zero] * m for _ in range(m)]
    for i, c in enumerate(vec):
        if F.is_zero(c):
            continue
        mat = module.action[i]
        for r in range(m):
            row = mat[r]
            arow = acc[r]
            for s in range(m):
                x = row[s]
                if not F.is_zero(x):
                    arow[s] = F.add(arow[s], F.mul(c, x))
    return acc


def jacobsonRadical(A: GradedAlgebra, simples) -> Subspace:
    """Intersection of the annihilators of the given simple modules."""
    F = A.field
    rows = []
    for L in simples:
        m = L.dim
        for r in range(m):
            for s in range(m):
                rows.append(tuple(L.action[i][r][s] for i in range(A.dim)))
    J = Subspace(F, A.dim, kernel_rows(F, rows, A.dim), _canonical=True)
    expected = sum(L.dim ** 2 for L in simples)
    if A.dim - J.dim != expected:
        raise IncompleteSimples(
            f"dim A/J = {A.dim - J.dim} but the simples account for {expected}")
    return J


@dataclass(frozen=True)
class LiftedIdempotent:
    element: tuple
    label: object
    basis_index: int       # which basis vector of L the idempotent projects onto
    degree: int            # degree of that basis vector
    top: bool              # True when that degree is the top degree of L


def _newton_lift(A: GradedAlgebra, x, max_steps):
    e = x
    for _ in range(max_steps + 1):
        e2 = A.multiply(e, e)
        if e2 == e:
            return e
        e3 = A.multiply(e2, e)
        F = A.field
        three, two = F.from_int(3), F.from_int(2)
        e = tuple(F.sub(F.mul(three, a), F.mul(two, b)) for a, b in zip(e2, e3))
    if A.multiply(e, e) == e:
        return e
    raise LiftDivergence("idempotent iteration did not stabilize")


def liftIdempotents(A: GradedAlgebra, radical: Subspace, simples):
    """Complete family of orthogonal primitive degree-0 idempotents.

    `simples` is a list of (label, module, top_degree)."""
    F = A.field
    zero_idx = A.indices_of_degree(0)
    rows = []
    slots = []
    for label, L, _ in simples:
        for r in range(L.dim):
            for s in range(L.dim):
                rows.append(tuple(L.action[i][r][s] for i in zero_idx))
                slots.append((label, r, s))
    max_steps = math.ceil(math.log2(radical.dim + 1)) + 2
    targets = []
    for label, L, top in simples:
        for k in range(L.dim):
            targets.append((label, L, top, k))
    lifted = []
    f = A.unit
    for t, (label, L, top, k) in enumerate(targets):
        if t == len(targets) - 1:
            e = f
            if A.multiply(e, e) != e:
                raise LiftDivergence("complement of lifted idempotents is not idempotent")
        else:
            rhs = tuple(F.one if (lab == label and r == k and s == k) else F.zero
                        for lab, r, s in slots)
            sol = solve_rows(F, rows, len(zero_idx), rhs)
            if sol is NoSolution:
                raise LiftDivergence("matrix unit has no degree-0 preimage")
            x = [F.zero] * A.dim
            for i, c in zip(zero_idx, sol):
                x[i] = c
            x = A.multiply(A.multiply(f, tuple(x)), f)
            e = _newton_lift(A, x, max_steps)
        deg = L.degrees[k]
        lifted.append(LiftedIdempotent(e, label, k, deg, deg == top))
        f = A.sub(f, e)
    return lifted


# ------------------------------------------------------------- center and blocks


def center(A: GradedAlgebra) -> Subspace:
    F = A.field
    rows = []
    for g in A.generators():
        b = A.basis_vector(g)
        L = A.left_matrix(b)
        R = A.right_matrix(b)
        for lr, rr in zip(L, R):
            rows.append(tuple(F.sub(x, y) for x, y in zip(lr, rr)))
    return Subspace(F, A.dim, kernel_rows(F, rows, A.dim), _canonical=True)


@dataclass(frozen=True)
class Block:
    idempotent: tuple
    labels: tuple


def centralIdempotents(A: GradedAlgebra, simples, radical: Subspace | None = None):
    """Central primitive idempotents, one per block.

    `simples` is a list of (label, module).  Two simples lie in the same block
    exactly when every central element acts on them by the same scalar."""
    F = A.field
    Z = center(A)
    chars = []
    for label, L in simples:
        vals = []
        for z in Z.basis:
            mat = _action_of(L, z)
            vals.append(mat[0][0])
        chars.append((label, tuple(vals)))
    groups = {}
    order = []
    for label, ch in chars:
        if ch not in groups:
            groups[ch] = []
            order.append(ch)
        groups[ch].append(label)
    blocks = []
    zrows = [tuple(ch[j] for ch in order) for j in range(Z.dim)]
    zrows_t = tuple(zip(*zrows)) if zrows else tuple(() for _ in order)
    nil = radical.dim if radical is not None else A.dim
    max_steps = math.ceil(math.log2(nil + 1)) + 2
    for ch in order:
        rhs = tuple(F.one if other == ch else F.zero for other in order)
        sol = solve_rows(F, zrows_t, Z.dim, rhs)
        if sol is NoSolution:
            raise LiftDivergence("block indicator has no central preimage")
        x = [F.zero] * A.dim
        for c, z in zip(sol, Z.basis):
            if not F.is_zero(c):
                for i, a in enumerate(z):
                    if not F.is_zero(a):
                        x[i] = F.add(x[i], F.mul(c, a))
        e = _newton_lift(A, tuple(x), max_steps)
        blocks.append(Block(e, tuple(groups[ch])))
    total = A.zero()
    for b in blocks:
        total = A.add(total, b.idempotent)
    if total != A.unit:
        raise LiftDivergence("central idempotents do not sum to 1")
    return blocks


def blockOf(blocks, label):
    for idx, b in enumerate(blocks):
        if label in b.labels:
            return idx
    raise KeyError(label)


# --------------------------------------------------------------- Frobenius forms


@dataclass(frozen=True)
class FrobeniusForm:
    phi: tuple          # functional on the full basis, zero outside A_d
    degree: int
    symmetric: bool

    def to_json(self, field):
        return {"degree": self.degree, "symmetric": self.symmetric,
                "phi": {str(k): field.format(c) for k, c in enumerate(self.phi)
                        if not field.is_zero(c)}}


class _NotFound:
    def __repr__(self):
        return "NotFound"

    def __bool__(self):
        return False


NotFound = _NotFound()


def _pairing_data(A: GradedAlgebra, d):
    """For each degree i: (rows of A_i, cols of A_{d-i}, product sparse vectors)."""
    key = ("pairing", d)
    if key in A._cache:
        return A._cache[key]
    data = []
    for i in A.support():
        left = A.indices_of_degree(i)
        right = A.indices_of_degree(d - i)
        prods = [[A.table[a][b] for b in right] for a in left]
        data.append((i, left, right, prods))
    A._cache[key] = data
    return data


def verifyFrobenius(A: GradedAlgebra, phi, d) -> bool:
    F = A.field
    for k, c in enumerate(phi):
        if not F.is_zero(c) and A.degrees[k] != d:
            return False
    for i, left, right, prods in _pairing_data(A, d):
        if len(left) != len(right):
            return False
        gram = []
        for row in prods:
            g = []
            for entries in row:
                acc = F.zero
                for k, c in entries:
                    if not F.is_zero(phi[k]):
                        acc = F.add(acc, F.mul(c, phi[k]))
                g.append(acc)
            gram.append(g)
        if rank(F, gram, len(right)) != len(left):
            return False
    return True


def _commutator_space(A: GradedAlgebra, d):
    F = A.field
    idx = A.indices_of_degree(d)
    pos = {k: t for t, k in enumerate(idx)}
    vecs = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            if A.degrees[i] + A.degrees[j] != d:
                continue
            v = [F.zero] * len(idx)
            for k, c in A.table[i][j]:
                v[pos[k]] = F.add(v[pos[k]], c)
            for k, c in A.table[j][i]:
                v[pos[k]] = F.sub(v[pos[k]], c)
            if any(not F.is_zero(a) for a in v):
                vecs.append(tuple(v))
    return idx, Subspace(F, len(idx), vecs)


def isSymmetricForm(A: GradedAlgebra, phi, d) -> bool:
    F = A.field
    idx, comm = _commutator_space(A, d)
    local = [phi[k] for k in idx]
    for v in comm.basis:
        acc = F.zero
        for a, b in zip(v, local):
            acc = F.add(acc, F.mul(a, b))
        if not F.is_zero(acc):
            return False
    return True


def frobeniusSearch(A: GradedAlgebra, d: int, trials: int = 40, seed: int = 0, hints=()):
    """Seeded certificate search for a d-Frobenius functional."""
    F = A.field
    rng = random.Random(f"frobenius:{seed}:{d}")
    idx = A.indices_of_degree(d)
    if not idx:
        return NotFound

    def embed(local):
        phi = [F.zero] * A.dim
        for k, c in zip(idx, local):
            phi[k] = c
        return tuple(phi)

    for h in hints:
        h = tuple(h)
        if verifyFrobenius(A, h, d):
            return FrobeniusForm(h, d, isSymmetricForm(A, h, d))
    _, comm = _commutator_space(A, d)
    sym = comm.annihilator().basis
    candidates = [embed(v) for v in sym]
    for _ in range(trials if sym else 0):
        coeffs = [F.random(rng) for _ in sym]
        local = [F.zero] * len(idx)
        for c, v in zip(coeffs, sym):
            for t, a in enumerate(v):
                local[t] = F.add(local[t], F.mul(c, a))
        candidates.append(embed(local))
    for phi in candidates:
        if verifyFrobenius(A, phi, d):
            return FrobeniusForm(phi, d, True)
    for k in idx:
        phi = A.basis_vector(k)
        if verifyFrobenius(A, phi, d):
            return FrobeniusForm(phi, d, isSymmetricForm(A, phi, d))
    for _ in range(trials):
        phi = embed([F.random(rng) for _ in idx])
        if verifyFrobenius(A, phi, d):
            return FrobeniusForm(phi, d, isSymmetricForm(A, phi, d))
    return NotFound


def frobeniusScan(A: GradedAlgebra, trials: int = 40, seed: int = 0, hints=()):
    """Map d -> FrobeniusForm or NotFound for every d with A_d nonzero."""
    out = {}
    for d in A.support():
        hs = [h for dh, h in hints if dh == d]
        out[d] = frobeniusSearch(A, d, trials, seed, hs)
    return out
