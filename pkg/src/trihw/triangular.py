"""Triangular decompositions A = A^- T A^+, PBW coordinates and Borel subalgebras."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import GradedAlgebra, liftIdempotents, subalgebraAsAlgebra
from .kernel import Subspace, kernel_rows, matmul, rank
from .kernel.subspace import Coordinatizer


class NotTriangular(RuntimeError):
    pass


@dataclass(frozen=True)
class TRep:
    """A representation of T: one matrix per T-basis element, placed in given degrees."""
    label: str
    dim: int
    action: tuple
    degrees: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(tuple(tuple(r) for r in m) for m in self.action))
        if not self.degrees:
            object.__setattr__(self, "degrees", (0,) * self.dim)


@dataclass
class TriangularReport:
    ok: bool
    items: dict
    notes: list = dc_field(default_factory=list)

    def failures(self):
        return {k: v for k, v in self.items.items() if v}

    def to_json(self):
        return {"ok": self.ok, "failures": {k: v[:10] for k, v in self.items.items() if v},
                "notes": self.notes}


@dataclass(frozen=True)
class AmbidexterityResult:
    ambidextrous: bool
    witness: tuple = ()        # ((plus_index, t_index, minus_index), coeff) pairs
    witness_text: str = ""

    def __bool__(self):
        return self.ambidextrous


@dataclass(frozen=True)
class BorelData:
    sign: int
    basis: tuple               # algebra vectors spanning B
    augmentation: tuple        # algebra vectors spanning J
    projection: tuple          # dim T x dim B matrix B -> T
    closed: bool
    same_support: bool
    nilpotency: int | None


def _homogeneous_degrees(A, vecs, what):
    out = []
    for v in vecs:
        d = A.degree_of(v)
        if d is None:
            raise NotTriangular(f"{what} basis vector is not homogeneous")
        out.append(d)
    return tuple(out)


def _as_vectors(A, spec):
    """Accept basis indices or explicit vectors."""
    out = []
    for item in spec:
        if isinstance(item, int):
            out.append(A.basis_vector(item))
        else:
            out.append(tuple(item))
    return tuple(out)


class TriangularDecomposition:
    """A candidate triangular decomposition; verifyTriangular decides whether it is one."""

    def __init__(self, algebra: GradedAlgebra, minus, t, plus, irr_t: Sequence[TRep],
                 name: str = ""):
        self.algebra = A = algebra
        self.minus_basis = _as_vectors(A, minus)
        self.t_basis = _as_vectors(A, t)
        self.plus_basis = _as_vectors(A, plus)
        self.minus_degrees = _homogeneous_degrees(A, self.minus_basis, "A^-")
        self.t_degrees = _homogeneous_degrees(A, self.t_basis, "T")
        self.plus_degrees = _homogeneous_degrees(A, self.plus_basis, "A^+")
        self.irr_t = tuple(irr_t)
        self.name = name or algebra.name
        self._cache = {}
        self._opposite = None

    def __repr__(self):
        return (f"TriangularDecomposition({self.name}, "
                f"{len(self.minus_basis)}x{len(self.t_basis)}x{len(self.plus_basis)})")

    @property
    def field(self):
        return self.algebra.field

    @property
    def labels(self):
        return tuple(lam.label for lam in self.irr_t)

    def irr(self, label):
        for lam in self.irr_t:
            if lam.label == label:
                return lam
        raise KeyError(label)

    # ----- T as a standalone algebra

    def t_algebra(self):
        if "T" not in self._cache:
            self._cache["T"] = subalgebraAsAlgebra(self.algebra, self.t_basis, name="T")
        return self._cache["T"]

    def minus_algebra(self):
        if "Aminus" not in self._cache:
            self._cache["Aminus"] = subalgebraAsAlgebra(self.algebra, self.minus_basis, name="A-")
        return self._cache["Aminus"]

    def plus_algebra(self):
        if "Aplus" not in self._cache:
            self._cache["Aplus"] = subalgebraAsAlgebra(self.algebra, self.plus_basis, name="A+")
        return self._cache["Aplus"]

    def t_annihilator(self):
        """Coefficient vectors (over the T basis) killing every member of irrT."""
        if "t_ann" not in self._cache:
            F = self.field
            rows = []
            for lam in self.irr_t:
                for r in range(lam.dim):
                    for s in range(lam.dim):
                        rows.append(tuple(m[r][s] for m in lam.action))
            self._cache["t_ann"] = tuple(kernel_rows(F, rows, len(self.t_basis)))
        return self._cache["t_ann"]

    def t_radical_elements(self):
        return self.t_annihilator()

    @property
    def semisimple_t(self):
        return len(self.t_annihilator()) == 0

    # ----- PBW

    def _pbw_columns(self):
        if "pbw_cols" not in self._cache:
            A = self.algebra
            cols = []
            index = []
            tplus = [[A.multiply(t, p) for p in self.plus_basis] for t in self.t_basis]
            for i, m in enumerate(self.minus_basis):
                for j in range(len(self.t_basis)):
                    for k in range(len(self.plus_basis)):
                        cols.append(A.multiply(m, tplus[j][k]))
                        index.append((i, j, k))
            self._cache["pbw_cols"] = (tuple(cols), tuple(index))
        return self._cache["pbw_cols"]

    def pbw_matrix(self):
        """n x n matrix sending the tensor basis to the algebra basis (columns)."""
        cols, _ = self._pbw_columns()
        return tuple(zip(*cols)) if cols else ()

    def pbw_index(self):
        return self._pbw_columns()[1]

    def is_bijective(self):
        if "bij" not in self._cache:
            cols, _ = self._pbw_columns()
            n = self.algebra.dim
            self._cache["bij"] = len(cols) == n and rank(self.field, cols, n) == n
        return self._cache["bij"]

    def _pbw_inverse(self):
        """Per algebra basis index s: sparse dict tensor-index -> coefficient."""
        if "pbw_inv" not in self._cache:
            if not self.is_bijective():
                raise NotTriangular("multiplication map is not bijective")
            F = self.field
            A = self.algebra
            cols, index = self._pbw_columns()
            coord = Coordinatizer(F, cols, A.dim)
            inv = []
            for s in range(A.dim):
                c = coord.coords(A.basis_vector(s))
                inv.append({index[t]: x for t, x in enumerate(c) if not F.is_zero(x)})
            self._cache["pbw_inv"] = tuple(inv)
        return self._cache["pbw_inv"]

    def pbw_coordinates(self, a):
        """Sparse {(minus, t, plus): coeff} with a = sum coeff * a^-_i t_j a^+_k."""
        F = self.field
        inv = self._pbw_inverse()
        out = {}
        for s, c in enumerate(a):
            if F.is_zero(c):
                continue
            for key, x in inv[s].items():
                out[key] = F.add(out.get(key, F.zero), F.mul(c, x))
        return {k: v for k, v in out.items() if not F.is_zero(v)}

    def from_pbw(self, coords):
        A = self.algebra
        F = self.field
        cols, index = self._pbw_columns()
        pos = {key: t for t, key in enumerate(index)}
        out = A.zero()
        for key, c in coords.items():
            col = cols[pos[key]]
            out = tuple(F.add(x, F.mul(c, y)) for x, y in zip(out, col))
        return out

    def plus_augmentation(self):
        """epsilon(a^+_k): the scalar by which a^+_k acts through B^+ -> T."""
        if "eps_plus" not in self._cache:
            self._cache["eps_plus"] = _augmentation(self.algebra, self.plus_basis,
                                                    self.plus_degrees)
        return self._cache["eps_plus"]

    def induction_table(self):
        """For each algebra basis s and minus index i: {(p, q): c} with
        b_s a^-_i = sum c a^-_p t_q (mod A (A^+)_{>0})."""
        if "ind" not in self._cache:
            A = self.algebra
            F = self.field
            eps = self.plus_augmentation()
            table = []
            for s in range(A.dim):
                b = A.basis_vector(s)
                row = []
                for m in self.minus_basis:
                    coords = self.pbw_coordinates(A.multiply(b, m))
                    acc = {}
                    for (p, q, r), c in coords.items():
                        e = eps[r]
                        if F.is_zero(e):
                            continue
                        acc[(p, q)] = F.add(acc.get((p, q), F.zero), F.mul(c, e))
                    row.append(tuple((k, v) for k, v in sorted(acc.items())
                                     if not F.is_zero(v)))
                table.append(tuple(row))
            self._cache["ind"] = tuple(table)
        return self._cache["ind"]

    # ----- derived decompositions

    def opposite(self) -> "TriangularDecomposition":
        """((A^+)^op, T^op, (A^-)^op) over A^op with irrT replaced by the duals."""
        if self._opposite is None:
            duals = [TRep(lam.label, lam.dim, [tuple(zip(*m)) if lam.dim else () for m in lam.action])
                     for lam in self.irr_t]
            op = TriangularDecomposition(self.algebra.opposite(), self.plus_basis, self.t_basis,
                                         self.minus_basis, duals,
                                         name=(self.name + "^op") if self.name else "op")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def projective_t_module(self, label):
        """Projective cover P_T(label) as a TRep (general split T)."""
        key = ("PT", label)
        if key in self._cache:
            return self._cache[key]
        T, coord = self.t_algebra()
        F = self.field
        rad = Subspace(F, T.dim, self.t_annihilator())
        simples = [(lam.label, _TModuleView(T, lam), 0) for lam in self.irr_t]
        lifted = liftIdempotents(T, rad, simples)
        e = next(x.element for x in lifted if x.label == label and x.basis_index == 0)
        vecs = [T.multiply(T.basis_vector(i), e) for i in range(T.dim)]
        S = Subspace(F, T.dim, vecs)
        action = []
        for i in range(T.dim):
            cols = []
            for w in S.basis:
                img = T.multiply(T.basis_vector(i), w)
                cols.append(tuple(img[pc] for pc in S.pivots))
            action.append(tuple(zip(*cols)))
        rep = TRep(f"P_T({label})", S.dim, action)
        self._cache[key] = rep
        return rep


class _TModuleView:
    """Duck-typed module wrapper around a TRep for algebra-core routines."""

    def __init__(self, T, rep):
        self.algebra = T
        self.dim = rep.dim
        self.degrees = rep.degrees
        self.action = rep.action


def _augmentation(A, basis, degrees):
    F = A.field
    k = next(i for i, u in enumerate(A.unit) if not F.is_zero(u))
    out = []
    for v, d in zip(basis, degrees):
        out.append(F.div(v[k], A.unit[k]) if d == 0 else F.zero)
    return tuple(out)


# ----------------------------------------------------------------- verification


def _span(F, n, vecs):
    return Subspace(F, n, vecs)


def _products_span(A, left, right):
    return Subspace(A.field, A.dim, [A.multiply(a, b) for a in left for b in right])


def _is_closed(A, basis):
    S = Subspace(A.field, A.dim, basis)
    if not S.contains(A.unit):
        return False, "does not contain 1"
    for a in basis:
        for b in basis:
            if not S.contains(A.multiply(a, b)):
                return False, "not closed under multiplication"
    return True, ""


def _commutant_dim(F, mats, d):
    if d == 0:
        return 0
    nv = d * d
    eqs = []
    for m in mats:
        for r in range(d):
            for c in range(d):
                row = [F.zero] * nv
                for k in range(d):
                    a = m[r][k]
                    if not F.is_zero(a):
                        row[k * d + c] = F.add(row[k * d + c], a)
                    b = m[k][c]
                    if not F.is_zero(b):
                        row[r * d + k] = F.sub(row[r * d + k], b)
                eqs.append(row)
    return nv - rank(F, eqs, nv)


def _hom_between(F, left, right, dl, dr):
    nv = dl * dr
    if nv == 0:
        return 0
    eqs = []
    for L, R in zip(left, right):
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
                eqs.append(row)
    return nv - rank(F, eqs, nv)


def verifyTriangular(A: GradedAlgebra, td: TriangularDecomposition) -> TriangularReport:
    F = A.field
    n = A.dim
    items = {k: [] for k in ("a", "b", "c", "d", "e", "irrT", "subalgebras")}
    notes = []
    nm, nt, np_ = len(td.minus_basis), len(td.t_basis), len(td.plus_basis)
    # subalgebras
    for what, basis in (("A^-", td.minus_basis), ("T", td.t_basis), ("A^+", td.plus_basis)):
        if rank(F, basis, n) != len(basis):
            items["subalgebras"].append(f"{what} basis is linearly dependent")
            continue
        ok, why = _is_closed(A, basis)
        if not ok:
            items["subalgebras"].append(f"{what} {why}")
    # (a)
    if nm * nt * np_ != n:
        items["a"].append(f"dimension mismatch: {nm}*{nt}*{np_} = {nm * nt * np_} != {n}")
    elif not td.is_bijective():
        cols, _ = td._pbw_columns()
        items["a"].append(f"multiplication map has rank {rank(F, cols, n)} < {n}")
    # (b)
    if any(d != 0 for d in td.t_degrees):
        items["b"].append("Supp T is not {0}")
    if any(d < 0 for d in td.plus_degrees):
        items["b"].append("Supp A^+ meets negative degrees")
    if any(d > 0 for d in td.minus_degrees):
        items["b"].append("Supp A^- meets positive degrees")
    # (c)
    for what, basis, degs in (("A^-", td.minus_basis, td.minus_degrees),
                              ("A^+", td.plus_basis, td.plus_degrees)):
        zero_part = [v for v, d in zip(basis, degs) if d == 0]
        if len(zero_part) != 1 or rank(F, zero_part + [A.unit], n) != 1:
            items["c"].append(f"degree-0 part of {what} is not K")
    # (d)
    for what, basis in (("A^+", td.plus_basis), ("A^-", td.minus_basis)):
        if _products_span(A, basis, td.t_basis) != _products_span(A, td.t_basis, basis):
            items["d"].append(f"{what} T != T {what}")
    # (e) and irrT data
    T, coord = td.t_algebra()
    for lam in td.irr_t:
        if len(lam.action) != nt:
            items["irrT"].append(f"{lam.label}: need one matrix per T-basis element")
            continue
        for i in range(nt):
            for j in range(nt):
                lhs = matmul(F, lam.action[i], lam.action[j], lam.dim)
                prod = T.product_of_basis(i, j)
                rhs = [[F.zero] * lam.dim for _ in range(lam.dim)]
                for k, c in enumerate(prod):
                    if not F.is_zero(c):
                        for r in range(lam.dim):
                            for s in range(lam.dim):
                                rhs[r][s] = F.add(rhs[r][s], F.mul(c, lam.action[k][r][s]))
                if lhs != tuple(tuple(r) for r in rhs):
                    items["irrT"].append(f"{lam.label}: not a representation of T")
                    break
            else:
                continue
            break
        if _commutant_dim(F, lam.action, lam.dim) != 1:
            items["e"].append(f"End_T({lam.label}) != K")
        flat = [tuple(x for row in m for x in row) for m in lam.action]
        if rank(F, flat, lam.dim ** 2) != lam.dim ** 2:
            items["e"].append(f"{lam.label} is not absolutely irreducible")
    for a in range(len(td.irr_t)):
        for b in range(a + 1, len(td.irr_t)):
            la, lb = td.irr_t[a], td.irr_t[b]
            if la.dim == lb.dim and _hom_between(F, la.action, lb.action, la.dim, lb.dim):
                items["irrT"].append(f"{la.label} and {lb.label} are isomorphic")
    if td.semisimple_t:
        total = sum(lam.dim ** 2 for lam in td.irr_t)
        if total != nt:
            items["irrT"].append(f"sum of squared dimensions {total} != dim T = {nt}")
    elif not items["irrT"] and not _is_nilpotent_ideal(T, td.t_annihilator()):
        # rad T is nilpotent, so a non-nilpotent common annihilator means a missing simple
        items["irrT"].append("irrT is incomplete: its common annihilator is not nilpotent")
    else:
        notes.append("T is not semisimple: completeness of irrT assumed")
    ok = not any(items.values())
    return TriangularReport(ok, items, notes)


def _is_nilpotent_ideal(T, vecs):
    F = T.field
    I = Subspace(F, T.dim, vecs)
    power = I
    for _ in range(T.dim + 1):
        if power.dim == 0:
            return True
        nxt = Subspace(F, T.dim, [T.multiply(a, b) for a in power.basis for b in I.basis])
        if nxt == power:
            return False
        power = nxt
    return power.dim == 0


def pbwCoordinates(td: TriangularDecomposition, a):
    return td.pbw_coordinates(a)


def _element_name(A, v):
    F = A.field
    nz = [(i, c) for i, c in enumerate(v) if not F.is_zero(c)]
    if len(nz) == 1:
        i, c = nz[0]
        nm = A.names[i]
        if F.is_one(c):
            return nm
        return f"{F.format(c)}*{nm}"
    return "(" + " + ".join(f"{F.format(c)}*{A.names[i]}" for i, c in nz) + ")"


def ambidexterityCheck(td: TriangularDecomposition) -> AmbidexterityResult:
    A = td.algebra
    F = A.field
    n = A.dim
    cols = []
    index = []
    for k, p in enumerate(td.plus_basis):
        for j, t in enumerate(td.t_basis):
            pt = A.multiply(p, t)
            for i, m in enumerate(td.minus_basis):
                cols.append(A.multiply(pt, m))
                index.append((k, j, i))
    if len(cols) == n and rank(F, cols, n) == n:
        return AmbidexterityResult(True)
    rows = list(zip(*cols)) if cols else []
    ker = kernel_rows(F, rows, len(cols))
    if not ker:
        return AmbidexterityResult(False, (), "dimension mismatch")
    vec = ker[0]
    witness = tuple((index[t], c) for t, c in enumerate(vec) if not F.is_zero(c))
    terms = []
    for (k, j, i), c in witness:
        body = (f"{_element_name(A, td.plus_basis[k])}⊗{_element_name(A, td.t_basis[j])}"
                f"⊗{_element_name(A, td.minus_basis[i])}")
        terms.append(body if F.is_one(c) else f"{F.format(c)}*{body}")
    return AmbidexterityResult(False, witness, " + ".join(terms))


def borel(td: TriangularDecomposition, sign: int) -> BorelData:
    """B^- = A^- T (sign -1) or B^+ = T A^+ (sign +1)."""
    A = td.algebra
    F = A.field
    side = td.minus_basis if sign < 0 else td.plus_basis
    side_deg = td.minus_degrees if sign < 0 else td.plus_degrees
    basis, aug, proj_cols = [], [], []
    nt = len(td.t_basis)
    eps = _augmentation(A, side, side_deg)
    for i, a in enumerate(side):
        for j, t in enumerate(td.t_basis):
            v = A.multiply(a, t) if sign < 0 else A.multiply(t, a)
            basis.append(v)
            if side_deg[i] != 0:
                aug.append(v)
            col = [F.zero] * nt
            col[j] = eps[i]
            proj_cols.append(tuple(col))
    projection = tuple(zip(*proj_cols)) if proj_cols else ()
    closed, _ = _is_closed(A, basis)
    supp = {A.degree_of(v) for v in basis}
    same_support = supp == set(side_deg)
    nil = None
    if aug:
        # J^k = 0 for the least such k, searched up to 1 + |Supp|
        S_aug = Subspace(F, A.dim, aug)
        power = S_aug
        for k in range(1, len(set(side_deg)) + 2):
            if power.dim == 0:
                nil = k
                break
            power = Subspace(F, A.dim, [A.multiply(a, b) for a in power.basis for b in S_aug.basis])
    else:
        nil = 1
    return BorelData(sign, tuple(basis), tuple(aug), projection, closed, same_support, nil)


def oppositeDecomposition(td: TriangularDecomposition) -> TriangularDecomposition:
    return td.opposite()


def braiding(td: TriangularDecomposition, sign: int, t, a):
    """R^±(t ⊗ a): the product t a written in the A^± ⊗ T basis {a_i t_j}."""
    A = td.algebra
    F = A.field
    key = ("braid_coord", sign)
    if key not in td._cache:
        side = td.minus_basis if sign < 0 else td.plus_basis
        vecs, index = [], []
        for i, s in enumerate(side):
            for j, tt in enumerate(td.t_basis):
                vecs.append(A.multiply(s, tt))
                index.append((i, j))
        td._cache[key] = (Coordinatizer(F, vecs, A.dim), tuple(index))
    coord, index = td._cache[key]
    c = coord.coords(A.multiply(t, a))
    return {index[k]: x for k, x in enumerate(c) if not F.is_zero(x)}


def trivialDecomposition(A: GradedAlgebra, irr_t, name=""):
    """A = T with A^- = A^+ = K."""
    return TriangularDecomposition(A, [A.unit], [A.basis_vector(i) for i in range(A.dim)],
                                   [A.unit], irr_t, name=name)


__all__ = ["TRep", "TriangularDecomposition", "TriangularReport", "AmbidexterityResult",
           "BorelData", "NotTriangular", "verifyTriangular", "pbwCoordinates",
           "ambidexterityCheck", "borel", "oppositeDecomposition", "braiding",
           "trivialDecomposition"]
