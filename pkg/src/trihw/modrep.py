"""Graded modules over graded algebras and module-level linear algebra."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .kernel import (LaurentPoly, Subspace, identity_rows, kernel_rows, matmul, matvec, rank,
                     rref_rows, transpose)
from .kernel.subspace import Coordinatizer, Echelon


class ModuleError(RuntimeError):
    pass


class NonIntegralMultiplicity(ModuleError):
    pass


class GradedModule:
    """Finite-dimensional graded module: one action matrix per algebra basis element."""

    def __init__(self, algebra, degrees: Sequence[int], action, name: str = ""):
        self.algebra = algebra
        self.degrees = tuple(int(d) for d in degrees)
        self.dim = len(self.degrees)
        self.action = tuple(tuple(tuple(r) for r in mat) for mat in action)
        if len(self.action) != algebra.dim:
            raise ModuleError("need one action matrix per algebra basis element")
        self.name = name
        self._cache = {}

    def __repr__(self):
        return f"GradedModule({self.name or '?'}, dim={self.dim}, support={self.support()})"

    @property
    def field(self):
        return self.algebra.field

    def support(self):
        return tuple(sorted(set(self.degrees)))

    def indices_of_degree(self, d):
        return tuple(i for i, e in enumerate(self.degrees) if e == d)

    def graded_dims(self):
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def act(self, vec):
        """Matrix rows of the action of an algebra element."""
        F = self.field
        m = self.dim
        acc = [[F.zero] * m for _ in range(m)]
        for i, c in enumerate(vec):
            if F.is_zero(c):
                continue
            for r, row in enumerate(self.action[i]):
                arow = acc[r]
                for s, x in enumerate(row):
                    if not F.is_zero(x):
                        arow[s] = F.add(arow[s], F.mul(c, x))
        return tuple(tuple(r) for r in acc)

    def apply(self, vec, v):
        return matvec(self.field, self.act(vec), v)

    def generator_actions(self):
        if "gens" not in self._cache:
            self._cache["gens"] = [self.action[g] for g in self.algebra.generators()]
        return self._cache["gens"]

    def shift(self, n: int) -> "GradedModule":
        """M[n] with M[n]_i = M_{i-n}."""
        if n == 0:
            return self
        out = GradedModule(self.algebra, [d + n for d in self.degrees], self.action,
                           name=f"{self.name}[{n}]")
        return out


@dataclass(frozen=True)
class ModuleMap:
    source: GradedModule
    target: GradedModule
    matrix: tuple
    shift: int = 0

    def rank(self):
        F = self.source.field
        return rank(F, self.matrix, self.source.dim)

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim


def verifyModuleAxioms(M: GradedModule):
    """List of violated axioms (empty when M is a graded module)."""
    A = M.algebra
    F = A.field
    fails = []
    if M.act(A.unit) != identity_rows(F, M.dim):
        fails.append("unit does not act as the identity")
    for g in A.generators():
        rg = M.action[g]
        for j in range(A.dim):
            lhs = matmul(F, rg, M.action[j], M.dim)
            rhs = M.act(A.product_of_basis(g, j))
            if lhs != rhs:
                fails.append(f"rho(b{g}) rho(b{j}) != rho(b{g} b{j})")
    for i in range(A.dim):
        d = A.degrees[i]
        for r, row in enumerate(M.action[i]):
            for s, x in enumerate(row):
                if not F.is_zero(x) and M.degrees[r] != M.degrees[s] + d:
                    fails.append(f"b{i} maps degree {M.degrees[s]} to degree {M.degrees[r]}")
    return fails


# ------------------------------------------------------------------ Hom spaces


def homSpace(M: GradedModule, N: GradedModule, shift: int = 0):
    """Basis of Hom(M, N[shift]) as ModuleMaps (matrices dim N x dim M)."""
    F = M.field
    var = {}
    for r, dn in enumerate(N.degrees):
        for c, dm in enumerate(M.degrees):
            if dn + shift == dm:
                var[(r, c)] = len(var)
    nv = len(var)
    if nv == 0:
        return []
    eqs = []
    gens = M.algebra.generators()
    for g in gens:
        rn = N.action[g]
        rm = M.action[g]
        # (rn X - X rm)[r][c]
        eq = {}
        for (k, c), idx in var.items():
            for r in range(N.dim):
                a = rn[r][k]
                if not F.is_zero(a):
                    key = (r, c)
                    row = eq.setdefault(key, {})
                    row[idx] = F.add(row.get(idx, F.zero), a)
        for (r, k), idx in var.items():
            mrow = rm[k]
            for c in range(M.dim):
                a = mrow[c]
                if not F.is_zero(a):
                    key = (r, c)
                    row = eq.setdefault(key, {})
                    row[idx] = F.sub(row.get(idx, F.zero), a)
        for row in eq.values():
            dense = [F.zero] * nv
            nonzero = False
            for idx, a in row.items():
                if not F.is_zero(a):
                    dense[idx] = a
                    nonzero = True
            if nonzero:
                eqs.append(tuple(dense))
    ker = kernel_rows(F, eqs, nv)
    maps = []
    for sol in ker:
        mat = [[F.zero] * M.dim for _ in range(N.dim)]
        for (r, c), idx in var.items():
            mat[r][c] = sol[idx]
        maps.append(ModuleMap(M, N, tuple(tuple(r) for r in mat), shift))
    return maps


def homDimension(M, N, shift=0):
    return len(homSpace(M, N, shift))


def combine_maps(F, maps, coeffs):
    if not maps:
        return None
    rows = len(maps[0].matrix)
    cols = len(maps[0].matrix[0]) if rows else 0
    acc = [[F.zero] * cols for _ in range(rows)]
    for c, mp in zip(coeffs, maps):
        if F.is_zero(c):
            continue
        for r in range(rows):
            for s in range(cols):
                x = mp.matrix[r][s]
                if not F.is_zero(x):
                    acc[r][s] = F.add(acc[r][s], F.mul(c, x))
    return tuple(tuple(r) for r in acc)


# ----------------------------------------------------- submodules and quotients


def submoduleGenerated(M: GradedModule, vectors) -> Subspace:
    ech = Echelon(M.field, M.dim)
    queue = []
    for v in vectors:
        r = ech.add(v)
        if r is not None:
            queue.append(r)
    gens = M.generator_actions()
    F = M.field
    while queue:
        v = queue.pop()
        for mat in gens:
            r = ech.add(matvec(F, mat, v))
            if r is not None:
                queue.append(r)
    return ech.subspace()


def isSubmodule(M: GradedModule, W: Subspace) -> bool:
    F = M.field
    return all(W.contains(matvec(F, mat, w)) for mat in M.generator_actions() for w in W.basis)


def _basis_degrees(M: GradedModule, W: Subspace):
    F = M.field
    degs = []
    for v in W.basis:
        ds = {M.degrees[i] for i, a in enumerate(v) if not F.is_zero(a)}
        if len(ds) != 1:
            raise ModuleError("subspace is not graded")
        degs.append(ds.pop())
    return degs


def submodule(M: GradedModule, W: Subspace, name=""):
    """(module on W's stored basis, inclusion matrix dim M x dim W)."""
    F = M.field
    degs = _basis_degrees(M, W)
    action = []
    for mat in M.action:
        cols = []
        for w in W.basis:
            img = matvec(F, mat, w)
            cols.append(tuple(img[pc] for pc in W.pivots))
        action.append(transpose(cols, W.dim) if cols else ())
    incl = transpose(W.basis, M.dim) if W.dim else tuple(() for _ in range(M.dim))
    return GradedModule(M.algebra, degs, action, name=name or f"sub({M.name})"), incl


def quotient(M: GradedModule, W: Subspace, name=""):
    """(M/W on the standard complement basis, projection matrix dim Q x dim M)."""
    F = M.field
    keep = W.complement_indices()
    degs = [M.degrees[k] for k in keep]
    action = []
    for mat in M.action:
        cols = []
        for k in keep:
            col = tuple(row[k] for row in mat)
            red = W.reduce(col)
            cols.append(tuple(red[t] for t in keep))
        action.append(transpose(cols, len(keep)) if cols else ())
    proj = []
    for t in keep:
        e = [F.zero] * M.dim
        e[t] = F.one
        proj.append(e)
    proj_rows = []
    for j in range(M.dim):
        e = tuple(F.one if i == j else F.zero for i in range(M.dim))
        red = W.reduce(e)
        proj_rows.append(tuple(red[t] for t in keep))
    projection = transpose(proj_rows, len(keep))
    return GradedModule(M.algebra, degs, action, name=name or f"quot({M.name})"), projection


def radical(M: GradedModule, J: Subspace) -> Subspace:
    """Rad M = J M."""
    F = M.field
    vecs = []
    for j in J.basis:
        mat = M.act(j)
        cols = transpose(mat, M.dim)
        vecs.extend(c for c in cols if any(not F.is_zero(a) for a in c))
    return Subspace(F, M.dim, vecs)


def socle(M: GradedModule, J: Subspace) -> Subspace:
    """Soc M = {m : J m = 0}."""
    F = M.field
    rows = []
    for j in J.basis:
        rows.extend(M.act(j))
    return Subspace(F, M.dim, kernel_rows(F, rows, M.dim), _canonical=True)


def head(M: GradedModule, J: Subspace):
    return quotient(M, radical(M, J), name=f"hd({M.name})")


def largestSubmoduleInside(M: GradedModule, W: Subspace) -> Subspace:
    F = M.field
    cur = W
    while True:
        if cur.dim == 0:
            return cur
        rows = []
        basis = cur.basis
        for mat in M.generator_actions():
            imgs = [cur.reduce(matvec(F, mat, w)) for w in basis]
            # condition: sum x_j imgs_j = 0
            rows.extend(zip(*imgs))
        ker = kernel_rows(F, rows, len(basis))
        vecs = []
        for sol in ker:
            acc = [F.zero] * M.dim
            for c, w in zip(sol, basis):
                if not F.is_zero(c):
                    for i, a in enumerate(w):
                        if not F.is_zero(a):
                            acc[i] = F.add(acc[i], F.mul(c, a))
            vecs.append(acc)
        nxt = Subspace(F, M.dim, vecs)
        if nxt.dim == cur.dim:
            return nxt
        cur = nxt


def degreeSubspace(M: GradedModule, predicate) -> Subspace:
    idx = [i for i, d in enumerate(M.degrees) if predicate(d)]
    return Subspace.coordinate(M.field, M.dim, idx)


# ---------------------------------------------------------- functors on modules


def dual(M: GradedModule) -> GradedModule:
    """M* over the opposite algebra; (a f)(m) = f(a m), same support."""
    action = [transpose(mat, M.dim) for mat in M.action]
    return GradedModule(M.algebra.opposite(), M.degrees, action, name=f"({M.name})*")


def twist(M: GradedModule, tau, algebra) -> GradedModule:
    """The module over `algebra` on which b acts by rho_M(tau(b)).

    `tau` is an n x n matrix whose column i holds tau(b_i)."""
    cols = transpose(tau, algebra.dim)
    action = [M.act(col) for col in cols]
    return GradedModule(algebra, M.degrees, action, name=f"tw({M.name})")


def directSum(modules, name=""):
    A = modules[0].algebra
    F = A.field
    total = sum(m.dim for m in modules)
    degs = []
    for m in modules:
        degs.extend(m.degrees)
    action = []
    for i in range(A.dim):
        mat = [[F.zero] * total for _ in range(total)]
        off = 0
        for m in modules:
            for r in range(m.dim):
                row = m.action[i][r]
                for s in range(m.dim):
                    mat[off + r][off + s] = row[s]
            off += m.dim
        action.append(mat)
    return GradedModule(A, degs, action, name=name or "+".join(m.name for m in modules))


def regularModule(A) -> GradedModule:
    action = [A.left_matrix(A.basis_vector(i)) for i in range(A.dim)]
    return GradedModule(A, A.degrees, action, name="A")


def leftIdealModule(A, e, name=""):
    """The left ideal A e as a module; also returns its basis as algebra elements."""
    F = A.field
    vecs = [A.multiply(A.basis_vector(i), e) for i in range(A.dim)]
    S = Subspace(F, A.dim, vecs)
    degs = []
    for v in S.basis:
        d = A.degree_of(v)
        if d is None:
            raise ModuleError("left ideal basis is not homogeneous")
        degs.append(d)
    action = []
    for i in range(A.dim):
        b = A.basis_vector(i)
        cols = []
        for w in S.basis:
            img = A.multiply(b, w)
            cols.append(tuple(img[pc] for pc in S.pivots))
        action.append(transpose(cols, S.dim))
    return GradedModule(A, degs, action, name=name or "Ae"), S


def induceFromBorel(td, rep, name: str = "") -> GradedModule:
    """A ⊗_{B^+} rep with A^+ acting through B^+ -> T; basis a^-_i ⊗ v."""
    A = td.algebra
    F = A.field
    table = td.induction_table()
    nm = len(td.minus_basis)
    d = rep.dim
    degs = [td.minus_degrees[i] + rep.degrees[v] for i in range(nm) for v in range(d)]
    size = nm * d
    action = []
    for s in range(A.dim):
        mat = [[F.zero] * size for _ in range(size)]
        for i in range(nm):
            for (p, q), c in table[s][i]:
                tq = rep.action[q]
                for v in range(d):
                    col = i * d + v
                    for w in range(d):
                        x = tq[w][v]
                        if not F.is_zero(x):
                            r = p * d + w
                            mat[r][col] = F.add(mat[r][col], F.mul(c, x))
        action.append(mat)
    return GradedModule(A, degs, action, name=name or f"ind({rep.label})")


def restrict(M: GradedModule, subalgebra, basis) -> GradedModule:
    """Restriction to a subalgebra whose basis vectors (in A) are `basis`."""
    action = [M.act(b) for b in basis]
    return GradedModule(subalgebra, M.degrees, action, name=f"res({M.name})")


# ------------------------------------------------------------ characters


def _t_blocks(td, M: GradedModule, degree):
    idx = M.indices_of_degree(degree)
    mats = []
    for t in td.t_basis:
        full = M.act(t)
        mats.append(tuple(tuple(full[r][c] for c in idx) for r in idx))
    return idx, mats


def _hom_dim(F, left_mats, right_mats, dl, dr):
    """dim {X (dr x dl) : R_t X = X L_t for all t}."""
    nv = dl * dr
    if nv == 0:
        return 0
    eqs = []
    for L, R in zip(left_mats, right_mats):
        for r in range(dr):
            for c in range(dl):
                row = [F.zero] * nv
                for k in range(dr):
                    a = R[r][k]
                    if not F.is_zero(a):
                        row[k * dl + c] = F.add(row[k * dl + c], a)
                for k in range(dl):
                    a = L[k][c]
                    if not F.is_zero(a):
                        row[r * dl + k] = F.sub(row[r * dl + k], a)
                if any(not F.is_zero(x) for x in row):
                    eqs.append(row)
    return nv - rank(F, eqs, nv)


def tModuleMultiplicities(td, mats, dim):
    """Composition multiplicities of a T-module given by T-basis action matrices."""
    F = td.algebra.field
    if dim == 0:
        return {}
    if td.semisimple_t:
        out = {}
        total = 0
        for lam in td.irr_t:
            m = _hom_dim(F, lam.action, mats, lam.dim, dim)
            if m:
                out[lam.label] = m
                total += m * lam.dim
        if total != dim:
            raise NonIntegralMultiplicity(
                f"T-module of dimension {dim} decomposes into only {total} dimensions")
        return out
    # radical layers over the T-radical
    JT = td.t_radical_elements()
    layers = []
    cur = Subspace.full(F, dim)
    while cur.dim:
        vecs = []
        for j in JT:
            mat = _combine(F, mats, j, dim)
            for w in cur.basis:
                vecs.append(matvec(F, mat, w))
        nxt = Subspace(F, dim, vecs)
        layers.append((cur, nxt))
        if nxt.dim == cur.dim:
            raise NonIntegralMultiplicity("T-radical does not act nilpotently")
        cur = nxt
    out = {}
    for top, bottom in layers:
        keep_basis = _complement_in(F, top, bottom, dim)
        sub_mats = []
        for mat in mats:
            cols = []
            for v in keep_basis:
                img = bottom.reduce(matvec(F, mat, v))
                cols.append(_coords_mod(F, img, keep_basis, bottom, dim))
            sub_mats.append(transpose(cols, len(keep_basis)))
        part = tModuleMultiplicities_semisimple(td, sub_mats, len(keep_basis))
        for k, v in part.items():
            out[k] = out.get(k, 0) + v
    return out


def tModuleMultiplicities_semisimple(td, mats, dim):
    F = td.algebra.field
    out = {}
    total = 0
    for lam in td.irr_t:
        m = _hom_dim(F, lam.action, mats, lam.dim, dim)
        if m:
            out[lam.label] = m
            total += m * lam.dim
    if total != dim:
        raise NonIntegralMultiplicity("radical layer is not semisimple over the supplied irrT")
    return out


def _combine(F, mats, coeffs, dim):
    acc = [[F.zero] * dim for _ in range(dim)]
    for c, mat in zip(coeffs, mats):
        if F.is_zero(c):
            continue
        for r in range(dim):
            for s in range(dim):
                x = mat[r][s]
                if not F.is_zero(x):
                    acc[r][s] = F.add(acc[r][s], F.mul(c, x))
    return tuple(tuple(r) for r in acc)


def _complement_in(F, top, bottom, dim):
    ech = Echelon(F, dim)
    for v in bottom.basis:
        ech.add(v)
    keep = []
    for v in top.basis:
        if ech.add(v) is not None:
            keep.append(bottom.reduce(v))
    return keep


def _coords_mod(F, img, keep_basis, bottom, dim):
    # img is reduced mod bottom; express in keep_basis (also reduced mod bottom)
    return Coordinatizer(F, keep_basis, dim).coords(img) if keep_basis else ()


def gradedCharacter(td, M: GradedModule):
    """label -> LaurentPoly of T-composition multiplicities per degree."""
    key = ("char", id(td))
    if key in M._cache:
        return M._cache[key]
    out = {lam.label: LaurentPoly() for lam in td.irr_t}
    for d in M.support():
        idx, mats = _t_blocks(td, M, d)
        mult = tModuleMultiplicities(td, mats, len(idx))
        for label, m in mult.items():
            out[label] = out[label] + LaurentPoly({d: m})
    M._cache[key] = out
    return out


def character_equal(c1, c2):
    keys = set(c1) | set(c2)
    return all(c1.get(k, LaurentPoly()) == c2.get(k, LaurentPoly()) for k in keys)


def character_shift(ch, n):
    return {k: v.shift(n) for k, v in ch.items()}


# ------------------------------------------------------------ multiplicities


def multiplicity(M: GradedModule, proj) -> LaurentPoly:
    """[M : L[n]] = dim Hom(P[n], M) for P = (A e)[s], read off as ranks of e on M_j."""
    F = M.field
    emat = M.act(proj.idempotent)
    terms = {}
    for d in M.support():
        idx = M.indices_of_degree(d)
        block = [tuple(emat[r][c] for c in idx) for r in idx]
        rk = rank(F, block, len(idx))
        if rk:
            terms[d - proj.shift] = rk
    return LaurentPoly(terms)


def multiplicityViaHom(M: GradedModule, P: GradedModule) -> LaurentPoly:
    terms = {}
    lo = min(M.support()) - max(P.support()) if M.dim and P.dim else 0
    hi = max(M.support()) - min(P.support()) if M.dim and P.dim else -1
    for n in range(lo, hi + 1):
        k = homDimension(P.shift(n), M, 0)
        if k:
            terms[n] = k
    return LaurentPoly(terms)


# ------------------------------------------------------------ isomorphism


@dataclass(frozen=True)
class IsoVerdict:
    status: str                 # "yes" | "no" | "unknown"
    certificate: ModuleMap | None = None
    witness: str = ""

    def __bool__(self):
        return self.status == "yes"


def _is_invertible(F, mat, n):
    return rank(F, mat, n) == n


def isIsomorphic(M: GradedModule, N: GradedModule, seed: int = 0, shift: int = 0,
                 td=None, retries: int = 64) -> IsoVerdict:
    """Decide M ~= N[shift] by certificate search."""
    F = M.field
    Nshift = N.shift(shift)
    if M.graded_dims() != Nshift.graded_dims():
        return IsoVerdict("no", witness=f"graded dimensions differ: {M.graded_dims()} vs "
                                        f"{Nshift.graded_dims()}")
    if td is not None:
        cm, cn = gradedCharacter(td, M), gradedCharacter(td, Nshift)
        if not character_equal(cm, cn):
            diff = sorted(k for k in set(cm) | set(cn)
                          if cm.get(k, LaurentPoly()) != cn.get(k, LaurentPoly()))
            return IsoVerdict("no", witness=f"graded characters differ at {diff}")
    homs = homSpace(M, Nshift, 0)
    if not homs:
        return IsoVerdict("no", witness="Hom space is zero")
    ends = homSpace(M, M, 0)
    if len(ends) != len(homs):
        return IsoVerdict("no", witness=f"dim Hom(M,N) = {len(homs)} but dim End(M) = {len(ends)}")
    ends_n = homSpace(Nshift, Nshift, 0)
    if len(ends_n) != len(ends):
        return IsoVerdict("no", witness=f"dim End(M) = {len(ends)} but dim End(N) = {len(ends_n)}")
    n = M.dim
    rng = random.Random(f"iso:{seed}")
    for mp in homs:
        if _is_invertible(F, mp.matrix, n):
            return IsoVerdict("yes", certificate=ModuleMap(M, N, mp.matrix, shift))
    for _ in range(retries):
        coeffs = [F.random(rng) for _ in homs]
        mat = combine_maps(F, homs, coeffs)
        if _is_invertible(F, mat, n):
            return IsoVerdict("yes", certificate=ModuleMap(M, N, mat, shift))
    if F.finite and len(homs) <= 3:
        for coeffs in itertools.product(F.elements(), repeat=len(homs)):
            mat = combine_maps(F, homs, coeffs)
            if _is_invertible(F, mat, n):
                return IsoVerdict("yes", certificate=ModuleMap(M, N, mat, shift))
        return IsoVerdict("no", witness="exhaustive search over Hom found no isomorphism")
    return IsoVerdict("unknown", witness=f"no invertible map in {retries} trials; "
                                         f"dim Hom = {len(homs)}")


def findInjective(M, N, seed=0, shift=0, retries=24):
    return _find_rank(M, N, seed, shift, retries, M.dim)


def findSurjective(M, N, seed=0, shift=0, retries=24):
    return _find_rank(M, N, seed, shift, retries, N.dim)


def _find_rank(M, N, seed, shift, retries, want):
    F = M.field
    homs = homSpace(M, N.shift(shift), 0)
    rng = random.Random(f"rank:{seed}")
    cands = [mp.matrix for mp in homs]
    for _ in range(retries if homs else 0):
        cands.append(combine_maps(F, homs, [F.random(rng) for _ in homs]))
    for mat in cands:
        if rank(F, mat, M.dim) == want:
            return ModuleMap(M, N, mat, shift)
    return None


def socleSubmodule(M: GradedModule, J: Subspace):
    return submodule(M, socle(M, J), name=f"soc({M.name})")


def subspaceOfDegreesAtLeast(M, d):
    return degreeSubspace(M, lambda e: e >= d)


def top_component(M: GradedModule):
    return max(M.degrees) if M.dim else None


def module_rows_equal(a: GradedModule, b: GradedModule):
    return a.degrees == b.degrees and a.action == b.action


__all__ = [
    "GradedModule", "ModuleMap", "ModuleError", "NonIntegralMultiplicity", "IsoVerdict",
    "verifyModuleAxioms", "homSpace", "homDimension", "submoduleGenerated", "isSubmodule",
    "submodule", "quotient", "radical", "socle", "head", "largestSubmoduleInside", "dual",
    "twist", "directSum", "regularModule", "leftIdealModule", "induceFromBorel", "restrict", "gradedCharacter",
    "multiplicity", "multiplicityViaHom", "isIsomorphic", "findInjective", "findSurjective",
    "rref_rows",
]
