import itertools

import pytest
from hypothesis import given, settings, strategies as st

from trihw import zoo
from trihw.algebra import GradedAlgebra
from trihw.hwcat import Engine
from trihw.kernel import QQ
from trihw.klres import (CIPresentation, bettiTable, degreesKLCriterion, klParityCheck,
                         koszulCheckUpTo, resolveTrivial, tateCharacter, tateMatchesResolution)


def monomial_ci(exps, degs, sign=1):
    """K[x_1..x_k]/(x_i^{n_i}) with deg x_i = sign * d_i; basis = exponent vectors."""
    F = QQ
    basis = list(itertools.product(*[range(n) for n in exps]))
    index = {b: i for i, b in enumerate(basis)}
    degrees = [sign * sum(a * d for a, d in zip(b, degs)) for b in basis]
    prods = {}
    for b in basis:
        for c in basis:
            s = tuple(x + y for x, y in zip(b, c))
            if s in index:
                prods[(index[b], index[c])] = {index[s]: F.one}
    unit = {index[tuple(0 for _ in exps)]: F.one}
    return GradedAlgebra(F, degrees, prods, unit, name=f"ci{exps}{degs}")


# ------------------------------------------------------------ resolutions


def test_dual_numbers_periodic_resolution():
    B = monomial_ci((2,), (1,), sign=-1)
    table = bettiTable(resolveTrivial(B, 5))
    assert table == {m: {-m: 1} for m in range(6)}


def test_cubic_truncation_generator_degrees():
    B = monomial_ci((3,), (1,))
    table = resolveTrivial(B, 5).betti()
    assert [list(table[m]) for m in range(6)] == [[0], [1], [3], [4], [6], [7]]


def test_semisimple_resolution_has_length_zero():
    B = monomial_ci((1,), (1,))
    res = resolveTrivial(B, 4)
    assert res.complete and len(res.steps) == 1


def _compose(B, res):
    """Check d_m ∘ d_{m+1} = 0 and that every differential entry lies in the augmentation ideal."""
    F = B.field
    M = res.module
    steps = res.steps
    for k, comp in enumerate(steps[1].images if len(steps) > 1 else []):
        acc = [F.zero] * M.dim
        for s, x in comp.items():
            v = M.apply(x, steps[0].images[s])
            acc = [F.add(a, b) for a, b in zip(acc, v)]
        assert all(F.is_zero(a) for a in acc)
    for m in range(1, len(steps)):
        for comp in steps[m].images:
            for x in comp.values():
                assert all(F.is_zero(c) for c, d in zip(x, B.degrees) if d == 0)
    for m in range(2, len(steps)):
        prev = steps[m - 1].images
        for comp in steps[m].images:
            acc = {}
            for s, x in comp.items():
                for r, y in prev[s].items():
                    z = B.multiply(x, y)
                    acc[r] = tuple(F.add(a, b) for a, b in zip(acc.get(r, B.zero()), z))
            assert all(F.is_zero(a) for v in acc.values() for a in v)


@pytest.mark.parametrize("exps,degs", [((2,), (1,)), ((3,), (1,)), ((2, 2), (1, 1)),
                                       ((2, 3), (1, 2))])
def test_resolution_is_a_minimal_complex(exps, degs):
    B = monomial_ci(exps, degs)
    _compose(B, resolveTrivial(B, 4))


def test_resolution_over_full_algebra_is_a_complex():
    e = Engine(zoo.restrictedSl2(3).td)
    from trihw.klres import ProjectiveGenerator, minimalResolution
    gens = [ProjectiveGenerator(l, e.projective(l).idempotent, e.simple(l).module)
            for l in e.labels]
    for lam in e.labels:
        res = minimalResolution(e.A, e.simple(lam).module, 3, gens, e.radical())
        if lam == "2":
            assert res.complete and len(res.steps) == 1      # Steinberg simple is projective
            continue
        M = res.module
        F = e.F
        for comp in res.steps[1].images:
            acc = [F.zero] * M.dim
            for s, x in comp.items():
                acc = [F.add(a, b) for a, b in zip(acc, M.apply(x, res.steps[0].images[s]))]
            assert all(F.is_zero(a) for a in acc)


# ------------------------------------------------------------ Koszul


def test_koszul_checks():
    assert koszulCheckUpTo(monomial_ci((2,), (1,)), 5)[0]
    ok, witness = koszulCheckUpTo(monomial_ci((3,), (1,)), 4)
    assert not ok and witness[0] == 2 and 3 in witness[1]
    assert koszulCheckUpTo(monomial_ci((2, 2), (1, 1)), 4)[0]
    assert koszulCheckUpTo(monomial_ci((2,), (1,), sign=-1), 4)[0]


# ------------------------------------------------------------ Tate character


def test_tate_small_values():
    ci = CIPresentation((1,), (2,))
    assert tateCharacter(ci, 0, 0) == 1
    assert tateCharacter(ci, 1, 1) == 1 and tateCharacter(ci, 1, 0) == 0
    assert tateCharacter(ci, 2, 2) == 1
    two = CIPresentation((1, 3), (2, 5))
    assert tateCharacter(two, 1, 1) == tateCharacter(two, 1, 3) == 1


@given(st.lists(st.tuples(st.integers(2, 3), st.integers(1, 2)), min_size=1, max_size=2))
@settings(max_examples=12, deadline=None)
def test_tate_matches_monomial_resolution(data):
    exps = tuple(n for n, _ in data)
    degs = tuple(d for _, d in data)
    ci = CIPresentation(degs, tuple(n * d for n, d in data))
    B = monomial_ci(exps, degs)
    assert tateMatchesResolution(ci, B, 4) == []


def test_ci_validation():
    with pytest.raises(ValueError):
        CIPresentation((1, 2), (2,))
    with pytest.raises(ValueError):
        CIPresentation((0,), (2,))


@pytest.mark.parametrize("x,f,verdict", [((1,), (2,), "Yes"), ((1,), (3,), "No"),
                                         ((1, 3), (1, 2), "Indeterminate"),
                                         ((1, 1), (2, 4), "Yes"), ((2,), (2,), "Indeterminate")])
def test_degree_criterion(x, f, verdict):
    assert degreesKLCriterion(CIPresentation(x, f)) == verdict


# ------------------------------------------------------------ KL parity


@pytest.mark.parametrize("n,holds", [(2, True), (3, False), (4, True)])
def test_kl_truncated_square(n, holds):
    b = zoo.truncatedSquare(n)
    v = klParityCheck(Engine(b.td), 6, CIPresentation(*b.complete_intersection))
    assert v.holds is holds
    if holds:
        assert v.certified_all_m
    else:
        assert v.witness["m"] <= 2


def test_kl_semisimple_is_vacuous():
    v = klParityCheck(Engine(zoo.trivialT(2).td), 6)
    assert v.holds and not v.certified_all_m and v.depth == 6


def test_kl_without_presentation_is_bounded():
    v = klParityCheck(Engine(zoo.truncatedSquare(2).td), 4)
    assert v.holds and not v.certified_all_m
    assert "depth 4" in v.describe()


def test_kl_sl2_not_certified_because_simples_are_not_rigid():
    b = zoo.restrictedSl2(3)
    v = klParityCheck(Engine(b.td), 3, CIPresentation(*b.complete_intersection))
    assert not v.certified_all_m
