"""Constructors for the standard example algebras, with triangular data attached."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import GradedAlgebra
from .kernel import GF, QQ, cyclotomic, inverse_rows
from .triangular import TRep, TriangularDecomposition


@dataclass
class Bundle:
    name: str
    algebra: GradedAlgebra
    td: TriangularDecomposition | None
    tau: tuple | None = None                      # n x n, column i = tau(b_i)
    frobenius_hints: tuple = ()                   # ((degree, phi), ...)
    params: dict = dc_field(default_factory=dict)
    candidates: tuple = ()                        # extra candidate decompositions
    complete_intersection: tuple | None = None    # (x degrees, f degrees) shared by A^- and A^+


def _mono(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def _name(*parts):
    s = "".join(parts)
    return s or "1"


def _perm_matrix(F, images):
    """Matrix whose column i is the basis vector images[i]."""
    n = len(images)
    return tuple(tuple(F.one if images[c] == r else F.zero for c in range(n)) for r in range(n))


def _indices(n):
    return list(range(n))


# ------------------------------------------------------------ truncated square


def truncatedSquare(n: int = 2, field=QQ) -> Bundle:
    """K[x,y]/(x^n, y^n) with deg x = -1, deg y = +1; basis x^a y^b at index a*n + b."""
    if n < 2:
        raise ValueError("n >= 2 required")
    F = field
    idx = lambda a, b: a * n + b
    degrees, names, prods = [], [], {}
    for a in range(n):
        for b in range(n):
            degrees.append(b - a)
            names.append(_name(_mono("x", a), _mono("y", b)))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    if a + c < n and b + d < n:
                        prods[(idx(a, b), idx(c, d))] = {idx(a + c, b + d): F.one}
    A = GradedAlgebra(F, degrees, prods, {0: F.one}, names, name=f"truncatedSquare({n})")
    td = TriangularDecomposition(A, [idx(a, 0) for a in range(n)], [0],
                                 [idx(0, b) for b in range(n)],
                                 [TRep("triv", 1, [((F.one,),)])])
    tau = _perm_matrix(F, [idx(b, a) for a in range(n) for b in range(n)])
    phi = [F.zero] * (n * n)
    phi[idx(n - 1, n - 1)] = F.one
    return Bundle(A.name, A, td, tau, ((0, tuple(phi)),), {"n": n},
                  complete_intersection=((1,), (n,)))


# ------------------------------------------------------------ small toys


def pathological4dim(field=QQ) -> Bundle:
    """K<x,y>/(x^2, yx, y^2); basis 1, x, y, xy."""
    F = field
    one, x, y, xy = 0, 1, 2, 3
    prods = {}
    for i in range(4):
        prods[(one, i)] = {i: F.one}
        prods[(i, one)] = {i: F.one}
    prods[(x, y)] = {xy: F.one}
    A = GradedAlgebra(F, [0, -1, 1, 0], prods, {0: F.one}, ["1", "x", "y", "xy"],
                      name="pathological4dim")
    td = TriangularDecomposition(A, [one, x], [one], [one, y], [TRep("triv", 1, [((F.one,),)])])
    return Bundle(A.name, A, td)


def degenerateTriple(field=QQ) -> Bundle:
    """Commutative K[x,y]/(x^2, xy, y^2); no triangular decomposition exists."""
    F = field
    prods = {}
    for i in range(3):
        prods[(0, i)] = {i: F.one}
        prods[(i, 0)] = {i: F.one}
    A = GradedAlgebra(F, [0, -1, 1], prods, {0: F.one}, ["1", "x", "y"], name="degenerateTriple")
    triv = [TRep("triv", 1, [((F.one,),)])]
    cands = (TriangularDecomposition(A, [0, 1], [0], [0, 2], triv),
             TriangularDecomposition(A, [0, 2], [0], [0, 1], triv))
    return Bundle(A.name, A, None, candidates=cands)


def trivialT(k: int = 2, field=QQ) -> Bundle:
    """A = T = K^k (k orthogonal idempotents), concentrated in degree 0."""
    F = field
    prods = {(i, i): {i: F.one} for i in range(k)}
    A = GradedAlgebra(F, [0] * k, prods, {i: F.one for i in range(k)},
                      [f"e{i}" for i in range(k)], name=f"semisimple({k})")
    irr = [TRep(f"s{i}", 1, [((F.one if j == i else F.zero,),) for j in range(k)])
           for i in range(k)]
    td = TriangularDecomposition(A, [A.unit], _indices(k), [A.unit], irr)
    tau = _perm_matrix(F, _indices(k))
    return Bundle(A.name, A, td, tau, ((0, tuple(F.one for _ in range(k))),), {"k": k})


def dualNumbersT(field=QQ) -> Bundle:
    """T = K[e]/(e^2) in degree 0 with A^- = A^+ = K (non-semisimple T)."""
    F = field
    prods = {(0, 0): {0: F.one}, (0, 1): {1: F.one}, (1, 0): {1: F.one}}
    A = GradedAlgebra(F, [0, 0], prods, {0: F.one}, ["1", "e"], name="dualNumbers")
    td = TriangularDecomposition(A, [0], [0, 1], [0], [TRep("triv", 1, [((F.one,),), ((F.zero,),)])])
    return Bundle(A.name, A, td)


def _root_of_unity_field(m):
    if m == 2:
        return QQ, Fraction(-1)
    F = cyclotomic(m)
    return F, F.zeta()


def _pow(F, z, k):
    out = F.one
    for _ in range(k):
        out = F.mul(out, z)
    return out


def coinvariantSkew(m: int = 2) -> Bundle:
    """K[x]/(x^m) ⋊ Z_m with deg x = +1; basis w^j x^a at index j*m + a."""
    if m < 2:
        raise ValueError("m >= 2 required")
    F, z = _root_of_unity_field(m)
    idx = lambda j, a: j * m + a
    degrees, names, prods = [], [], {}
    for j in range(m):
        for a in range(m):
            degrees.append(a)
            names.append(_name(_mono("w", j), _mono("x", a)))
    for j in range(m):
        for a in range(m):
            for k in range(m):
                for b in range(m):
                    if a + b < m:
                        prods[(idx(j, a), idx(k, b))] = {idx((j + k) % m, a + b): _pow(F, z, (a * k) % m)}
    A = GradedAlgebra(F, degrees, prods, {0: F.one}, names, name=f"coinvariantSkew({m})")
    irr = [TRep(f"chi{k}", 1, [((_pow(F, z, (j * k) % m),),) for j in range(m)]) for k in range(m)]
    td = TriangularDecomposition(A, [0], [idx(j, 0) for j in range(m)],
                                 [idx(0, a) for a in range(m)], irr)
    return Bundle(A.name, A, td, params={"m": m})


# ------------------------------------------------------------ restricted sl2


def restrictedSl2(p: int = 3) -> Bundle:
    """u(sl2) over F_p; PBW basis f^a h^b e^c at index a*p^2 + b*p + c, deg = c - a."""
    if p == 2 or p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError("p must be an odd prime")
    F = GF(p)
    idx = lambda a, b, c: (a * p + b) * p + c
    # polynomials in h modulo h^p - h, stored by their values at h = 0..p-1
    vander = [[pow(lam, b, p) if (lam or b) else 1 for b in range(p)] for lam in range(p)]
    vinv = inverse_rows(F, vander)
    h_vals = tuple(range(p))

    def shift(vals, s):
        return tuple(vals[(lam - s) % p] for lam in range(p))       # P(h - s)

    def times_lin(vals, a0):
        return tuple((lam + a0) * v % p for lam, v in zip(h_vals, vals))   # (h + a0) P

    def add_term(out, key, vals):
        cur = out.get(key)
        out[key] = vals if cur is None else tuple((x + y) % p for x, y in zip(cur, vals))

    def left_f(elt):
        out = {}
        for (a, c), vals in elt.items():
            if a + 1 < p:
                add_term(out, (a + 1, c), vals)
        return out

    def left_h(elt):
        return {(a, c): times_lin(vals, -2 * a) for (a, c), vals in elt.items()}

    def left_e(elt):
        out = {}
        for (a, c), vals in elt.items():
            if c + 1 < p:
                add_term(out, (a, c + 1), shift(vals, 2))      # f^a e P(h) = f^a P(h-2) e
            if a > 0:
                term = tuple(a * v % p for v in times_lin(vals, -a + 1))
                add_term(out, (a - 1, c), term)
        return out

    def basis_elt(a, b, c):
        return {(a, c): tuple(pow(lam, b, p) if (lam or b) else 1 for lam in range(p))}

    def to_coords(elt):
        coords = {}
        for (a, c), vals in elt.items():
            coeffs = [sum(vinv[b][lam] * vals[lam] for lam in range(p)) % p for b in range(p)]
            for b, x in enumerate(coeffs):
                if x:
                    coords[idx(a, b, c)] = x
        return coords

    n = p ** 3
    degrees, names = [], []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                degrees.append(c - a)
                names.append(_name(_mono("f", a), _mono("h", b), _mono("e", c)))
    prods = {}
    for j in range(n):
        a2, r = divmod(j, p * p)
        b2, c2 = divmod(r, p)
        right = basis_elt(a2, b2, c2)
        # left-multiply by e^c, then h^b, then f^a
        by_c = [right]
        for _ in range(p - 1):
            by_c.append(left_e(by_c[-1]))
        for c in range(p):
            by_bc = [by_c[c]]
            for _ in range(p - 1):
                by_bc.append(left_h(by_bc[-1]))
            for b in range(p):
                cur = by_bc[b]
                for a in range(p):
                    coords = to_coords(cur)
                    if coords:
                        prods[(idx(a, b, c), j)] = coords
                    cur = left_f(cur)
    A = GradedAlgebra(F, degrees, prods, {idx(0, 0, 0): 1}, names, name=f"restrictedSl2({p})")
    irr = [TRep(str(lam), 1, [((pow(lam, b, p) if (lam or b) else 1,),) for b in range(p)])
           for lam in range(p)]
    td = TriangularDecomposition(A, [idx(a, 0, 0) for a in range(p)],
                                 [idx(0, b, 0) for b in range(p)],
                                 [idx(0, 0, c) for c in range(p)], irr)
    tau = _perm_matrix(F, [idx(c, b, a) for a in range(p) for b in range(p) for c in range(p)])
    return Bundle(A.name, A, td, tau, (), {"p": p}, complete_intersection=((1,), (p,)))


# ------------------------------------------------------------ RRCA for Z_l


def rrcaCyclic(l: int = 2, c=None) -> Bundle:
    """Restricted rational Cherednik algebra at t = 0 for W = Z_l acting on a line.

    Basis x^a s^j y^b at index (a*l + j)*l + b; deg x = -1, deg y = +1.  Relations:
    s x = z^-1 x s, y s = z^-1 s y, [y, x] = -2 sum_k c_k s^k, x^l = y^l = 0."""
    if l < 2:
        raise ValueError("l >= 2 required")
    F, z = _root_of_unity_field(l)
    if c is None:
        c = [0] * (l - 1)
    c = [F.from_fraction(Fraction(v)) if not isinstance(v, tuple) else v for v in c]
    if len(c) != l - 1:
        raise ValueError("need one parameter per non-identity group element")
    zinv = F.inv(z)
    idx = lambda a, j, b: (a * l + j) * l + b
    # S[b][k] = sum_{i<b} z^{-ik}
    S = [[F.zero] * l for _ in range(l + 1)]
    for b in range(l + 1):
        for k in range(l):
            acc = F.zero
            for i in range(b):
                acc = F.add(acc, _pow(F, zinv, (i * k) % l))
            S[b][k] = acc
    two = F.from_int(2)

    def add_term(out, key, v):
        cur = out.get(key, F.zero)
        out[key] = F.add(cur, v)

    def right_y(elt):
        out = {}
        for (a, j, b), v in elt.items():
            if b + 1 < l:
                add_term(out, (a, j, b + 1), v)
        return out

    def right_s(elt):
        out = {}
        for (a, j, b), v in elt.items():
            add_term(out, (a, (j + 1) % l, b), F.mul(v, _pow(F, zinv, b % l)))
        return out

    def right_x(elt):
        out = {}
        for (a, j, b), v in elt.items():
            if a + 1 < l:
                add_term(out, (a + 1, j, b), F.mul(v, _pow(F, zinv, j % l)))
            if b > 0:
                for k in range(1, l):
                    coef = F.mul(F.mul(two, c[k - 1]), S[b][k])
                    if not F.is_zero(coef):
                        add_term(out, (a, (j + k) % l, b - 1), F.neg(F.mul(v, coef)))
        return out

    n = l ** 3
    degrees, names = [], []
    for a in range(l):
        for j in range(l):
            for b in range(l):
                degrees.append(b - a)
                names.append(_name(_mono("x", a), _mono("s", j), _mono("y", b)))
    prods = {}
    for i in range(n):
        a1, r = divmod(i, l * l)
        j1, b1 = divmod(r, l)
        left = {(a1, j1, b1): F.one}
        by_a = [left]
        for _ in range(l - 1):
            by_a.append(right_x(by_a[-1]))
        for a2 in range(l):
            by_aj = [by_a[a2]]
            for _ in range(l - 1):
                by_aj.append(right_s(by_aj[-1]))
            for j2 in range(l):
                cur = by_aj[j2]
                for b2 in range(l):
                    coords = {idx(*k): v for k, v in cur.items() if not F.is_zero(v)}
                    if coords:
                        prods[(i, idx(a2, j2, b2))] = coords
                    cur = right_y(cur)
    A = GradedAlgebra(F, degrees, prods, {0: F.one}, names,
                      name=f"rrcaCyclic({l}, c={[F.format(v) for v in c]})")
    irr = [TRep(f"chi{k}", 1, [((_pow(F, z, (j * k) % l),),) for j in range(l)])
           for k in range(l)]
    td = TriangularDecomposition(A, [idx(a, 0, 0) for a in range(l)],
                                 [idx(0, j, 0) for j in range(l)],
                                 [idx(0, 0, b) for b in range(l)], irr)
    tau = None
    if l == 2:
        tau = _perm_matrix(F, [idx(b, j, a) for a in range(l) for j in range(l) for b in range(l)])
    return Bundle(A.name, A, td, tau, (), {"l": l, "c": [F.format(v) for v in c]},
                  complete_intersection=((1,), (l,)))


def genericRRCA(l: int = 2, max_tries: int = 8):
    """rrcaCyclic at a rational c certified generic: every block holds one simple."""
    from .hwcat import Engine
    base = list(range(1, l))
    for attempt in range(max_tries):
        c = [Fraction(v * (attempt + 1), 1) + Fraction(attempt, 7) for v in base]
        b = rrcaCyclic(l, c)
        blocks = Engine(b.td).blocks()
        if len(blocks) == l:
            b.params["certified_generic"] = True
            b.params["attempts"] = attempt + 1
            return b
    raise RuntimeError("no generic parameter found")


ZOO = {
    "truncatedSquare": truncatedSquare,
    "pathological4dim": pathological4dim,
    "degenerateTriple": degenerateTriple,
    "coinvariantSkew": coinvariantSkew,
    "restrictedSl2": restrictedSl2,
    "rrcaCyclic": rrcaCyclic,
    "semisimple": trivialT,
    "dualNumbers": dualNumbersT,
}

__all__ = ["Bundle", "truncatedSquare", "pathological4dim", "degenerateTriple", "coinvariantSkew",
           "restrictedSl2", "rrcaCyclic", "genericRRCA", "trivialT", "dualNumbersT", "ZOO"]
