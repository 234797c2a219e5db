"""Brute-force oracles that share no code with the highest-weight engine.

Graded composition series of modules whose graded pieces are one-dimensional: every graded
submodule is spanned by a set of basis vectors closed under the action, so a composition
series is a maximal chain of closed index sets, found by exhaustive closure search."""
from __future__ import annotations


def closure(mats, start, is_zero):
    """Smallest index set containing `start` and closed under every matrix (column = image)."""
    seen = set(start)
    stack = list(start)
    while stack:
        i = stack.pop()
        for m in mats:
            for j in range(len(m)):
                if j not in seen and not is_zero(m[j][i]):
                    seen.add(j)
                    stack.append(j)
    return frozenset(seen)


def composition_chain(mats, dim, is_zero):
    """Maximal chain of closed sets 0 = S_0 < S_1 < ... < S_r = all indices."""
    chain = [frozenset()]
    cur = frozenset()
    while len(cur) < dim:
        best = None
        for i in range(dim):
            if i in cur:
                continue
            c = closure(mats, cur | {i}, is_zero)
            if best is None or len(c) < len(best):
                best = c
        chain.append(best)
        cur = best
    return chain


def graded_factors(mats, degrees, is_zero):
    """Composition factors as (index set, top degree)."""
    chain = composition_chain(mats, len(degrees), is_zero)
    out = []
    for lo, hi in zip(chain, chain[1:]):
        part = hi - lo
        out.append((part, max(degrees[i] for i in part)))
    return out


def _top_index(part, degrees):
    return max(part, key=lambda i: degrees[i])


# ------------------------------------------------------------ u(sl2) baby Vermas by formula


def sl2_baby_verma(p, lam):
    """Matrices of e, f, h on f^i v (i < p), degree -i, straight from the sl2 formulas."""
    def zero():
        return [[0] * p for _ in range(p)]
    e, f, h = zero(), zero(), zero()
    for i in range(p):
        h[i][i] = (lam - 2 * i) % p
        if i + 1 < p:
            f[i + 1][i] = 1
        if i > 0:
            e[i - 1][i] = (i * (lam - i + 1)) % p
    return (e, f, h), [-i for i in range(p)]


def sl2_decomposition(p):
    """{lam: {(mu, n): multiplicity}} and {lam: dim L(lam)} for u(sl2) over F_p."""
    D, dims = {}, {}
    for lam in range(p):
        mats, degs = sl2_baby_verma(p, lam)
        row = {}
        for part, top in graded_factors(mats, degs, lambda x: x % p == 0):
            i = _top_index(part, degs)
            mu = mats[2][i][i]
            row[(str(mu), top)] = row.get((str(mu), top), 0) + 1
            if top == 0:
                dims[str(lam)] = len(part)
        D[str(lam)] = row
    return D, dims


# ------------------------------------------------------------ generic one-dimensional labels


def factors_with_labels(module, td):
    """Graded factors labelled by the T-character on their top vector (one-dimensional irr_T)."""
    F = module.field
    mats = [module.action[g] for g in range(module.algebra.dim)]
    out = {}
    for part, top in graded_factors(mats, module.degrees, F.is_zero):
        i = _top_index(part, module.degrees)
        scalars = []
        for t in td.t_basis:
            m = module.act(t)
            scalars.append(m[i][i])
        label = None
        for lam in td.irr_t:
            if lam.dim == 1 and all(a[0][0] == s for a, s in zip(lam.action, scalars)):
                label = lam.label
        out[(label, top)] = out.get((label, top), 0) + 1
    return out


def laurent_row(factors, labels):
    """{label: {exp: count}} from {(label, exp): count}."""
    row = {l: {} for l in labels}
    for (l, n), c in factors.items():
        row[l][n] = row[l].get(n, 0) + c
    return row
