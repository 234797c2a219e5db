import pytest

from trihw import zoo
from trihw.hwcat import (Engine, NotTriangularInvolution, RequiresSemisimpleT)
from trihw.kernel import LaurentPoly
from trihw.modrep import (findInjective, findSurjective, homSpace, isIsomorphic, regularModule)

TS2 = zoo.truncatedSquare(2)
TS3 = zoo.truncatedSquare(3)
PATH = zoo.pathological4dim()
SL2 = zoo.restrictedSl2(3)
RR0 = zoo.rrcaCyclic(2, [0])
RR1 = zoo.rrcaCyclic(2, [1])
SS = zoo.trivialT(3)
DN = zoo.dualNumbersT()
CS = zoo.coinvariantSkew(2)
ALL = [TS2, TS3, PATH, SL2, RR0, RR1, SS, CS]
ENG = {b.name: Engine(b.td) for b in ALL + [DN]}
ids = lambda b: b.name


def E(b):
    return ENG[b.name]


def one(n=0):
    return LaurentPoly({n: 1})


# ------------------------------------------------------------ standard objects


@pytest.mark.parametrize("b", ALL + [DN], ids=ids)
def test_proper_standard_dimension(b):
    for lam in b.td.irr_t:
        assert E(b).properStandard(lam.label).dim == len(b.td.minus_basis) * lam.dim
        assert E(b).properCostandard(lam.label).dim == len(b.td.plus_basis) * lam.dim


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_costandard_support(b):
    for lam in b.td.irr_t:
        d = lam.degrees[0]
        supp = set(E(b).properCostandard(lam.label).degrees)
        assert supp == {d - e for e in b.td.plus_degrees}


def test_semisimple_algebra_objects_coincide():
    e = E(SS)
    for lam in e.labels:
        L = e.simple(lam).module
        for M in (e.properStandard(lam), e.properCostandard(lam), e.projectiveCover(lam),
                  e.injectiveHull(lam), e.standardObject(lam)):
            assert M.dim == 1 and isIsomorphic(M, L).status == "yes"
    dm = e.decompositionMatrices()
    for i in range(3):
        for j in range(3):
            assert dm.D_Delta[i][j] == (one() if i == j else LaurentPoly())
    assert set(e.rigidSimples()) == set(e.labels)
    assert e.semisimplicityCheck().details["semisimple"]
    fams = e.families()
    assert sorted(map(sorted, fams)) == [[l] for l in sorted(e.labels)]


def test_standard_object_for_dual_numbers():
    e = E(DN)
    assert e.standardObject("triv").dim == 2 * e.properStandard("triv").dim
    S = e.standardObject("triv")
    D = e.properStandard("triv")
    assert findSurjective(S, D) is not None
    with pytest.raises(RequiresSemisimpleT):
        e.standardFiltration(S)


# ------------------------------------------------------------ simples


@pytest.mark.parametrize("b,dims", [(TS2, {"triv": 1}), (TS3, {"triv": 1}),
                                    (SL2, {"0": 1, "1": 2, "2": 3})], ids=lambda x: str(x)[:20])
def test_simple_dimensions(b, dims):
    assert {l: E(b).simple(l).module.dim for l in E(b).labels} == dims


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_bijection_and_absolute_simplicity(b):
    rep = E(b).verifyBijection()
    assert rep.ok, rep.violations
    assert rep.details["count"] == len(b.td.irr_t)


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_simples_have_one_dimensional_endomorphisms_and_top(b):
    e = E(b)
    for lam in e.labels:
        sd = e.simple(lam)
        assert len(homSpace(sd.module, sd.module)) == 1
        assert sd.module.indices_of_degree(sd.degree)
        assert max(sd.module.degrees) == sd.degree


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_costandard_socle_is_simple(b):
    e = E(b)
    for lam in e.labels:
        ws = e.identifySimple(e.socleOf(e.properCostandard(lam)))
        assert ws is not None and ws.label == lam and ws.shift == 0


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_standard_endomorphisms_are_scalars(b):
    e = E(b)
    for lam in e.labels:
        assert len(homSpace(e.standardObject(lam), e.standardObject(lam))) == 1
        assert len(homSpace(e.costandardObject(lam), e.costandardObject(lam))) == 1


# ------------------------------------------------------------ projectives and matrices


@pytest.mark.parametrize("b", [TS2, TS3, PATH], ids=ids)
def test_local_algebra_projective_is_regular(b):
    P = E(b).projectiveCover("triv")
    assert P.dim == b.algebra.dim
    assert isIsomorphic(P, regularModule(b.algebra)).status == "yes"


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_projective_covers_sum_to_regular(b):
    e = E(b)
    total = sum(e.projectiveCover(l).dim * e.simple(l).module.dim for l in e.labels)
    assert total == b.algebra.dim


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_projective_head_is_simple(b):
    from trihw.modrep import head
    e = E(b)
    for lam in e.labels:
        top, _ = head(e.projectiveCover(lam), e.radical())
        assert isIsomorphic(top, e.simple(lam).module, td=b.td).status == "yes"


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_decomposition_relation_and_highest_weight(b):
    rep = E(b).verifyRelation()
    assert rep.ok, rep.violations


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_ungraded_decomposition_is_evaluation_at_one(b):
    e = E(b)
    dm = e.decompositionMatrices()
    ung = e.ungradedDecomposition()
    assert ung == tuple(tuple(p.at_one() for p in row) for row in dm.D_Delta)


def test_truncated_square_matrices():
    dm = E(TS2).decompositionMatrices()
    assert dm.C_L == ((one(),),)
    assert dm.D_Delta == ((one() + one(-1),),)
    assert dm.C_Delta == dm.D_Delta


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_brauer_reciprocity(b):
    rep = E(b).brauerReciprocityCheck()
    assert rep.ok, rep.violations


@pytest.mark.parametrize("b", ALL, ids=ids)
def test_projective_filtration_matches_hom_counts(b):
    e = E(b)
    for lam in e.labels:
        P = e.projectiveCover(lam)
        assert e.filtrationMultiplicities(P) == e.homMultiplicities(P)


# ------------------------------------------------------------ BGG, families, rigidity


@pytest.mark.parametrize("b,bgg", [(TS2, True), (SL2, True), (RR0, True), (RR1, True),
                                   (SS, True), (CS, False)], ids=lambda x: str(x)[:20])
def test_bgg(b, bgg):
    assert bool(E(b).bggCheck()) is bgg
    assert bool(E(b).bggBimoduleCheck()) is bgg


@pytest.mark.parametrize("b", [TS2, SL2, RR0, RR1, SS], ids=ids)
def test_families_equal_standard_families_when_bgg(b):
    assert E(b).compareFamilies().ok


def test_sl2_families():
    fams = sorted(sorted(f) for f in E(SL2).families())
    assert fams == [["0", "1"], ["2"]]


def test_rigidity():
    assert E(TS2).rigidSimples() == ("triv",)
    assert E(TS2).rigidQuotient().dim == 1
    assert E(SL2).rigidSimples() == ("0",)


def test_block_factorization_at_generic_parameter():
    rep = E(RR1).blockFactorization()
    assert rep.ok, rep.violations
    assert all(d["dim Z"] == d["(dim λ)^2"] for d in rep.details.values())


@pytest.mark.parametrize("b", [TS2, SL2, RR0], ids=ids)
def test_block_factorization_fails_away_from_generic(b):
    assert not E(b).blockFactorization().ok


# ------------------------------------------------------------ self-injectivity and tilting


@pytest.mark.parametrize("b", [TS2, TS3, SL2, RR0], ids=ids)
def test_self_injective_with_trivial_nakayama(b):
    si = E(b).selfInjectivityCheck()
    assert si.self_injective
    assert all(ws.label == lam for lam, ws in si.nakayama.items())


def test_pathological_not_self_injective():
    si = E(PATH).selfInjectivityCheck()
    assert not si.self_injective
    assert si.projective_injective == ()
    with pytest.raises(Exception):
        E(PATH).tiltingData()


@pytest.mark.parametrize("p", [3, 5])
def test_sl2_highest_weight_permutation(p):
    e = E(SL2) if p == 3 else Engine(zoo.restrictedSl2(5).td)
    td = e.tiltingData()
    assert td.consistent, td.notes
    for lam in range(p):
        ws = td.h[str(lam)]
        assert ws.label == str((-lam - 2) % p)
        assert ws.shift == (p - 1) - lam


@pytest.mark.parametrize("b", [TS2, SL2, RR0], ids=ids)
def test_tilting_objects(b):
    assert E(b).verifyTilting().ok


def test_steinberg_is_everything():
    e = E(SL2)
    L = e.simple("2").module
    for M in (e.properStandard("2"), e.projectiveCover("2"), e.tiltingModule("2")):
        k = max(M.degrees) - max(L.degrees)
        assert isIsomorphic(M, L, shift=k, td=SL2.td).status == "yes"


def _delta_layers(e, M, lam):
    N = e.properCostandard(lam)
    span = range(min(M.degrees) - max(N.degrees), max(M.degrees) - min(N.degrees) + 1)
    return LaurentPoly({n: k for n in span if (k := len(homSpace(M, N, n)))})


def _nabla_layers(e, M, lam):
    N = e.properStandard(lam)
    span = range(min(M.degrees) - max(N.degrees), max(M.degrees) - min(N.degrees) + 1)
    return LaurentPoly({n: k for n in span if (k := len(homSpace(N, M, -n)))})


@pytest.mark.parametrize("b", [TS2, SL2, RR0], ids=ids)
def test_tilting_multiplicities_symmetric(b):
    e = E(b)
    for mu in e.labels:
        T = e.tiltingModule(mu)
        for lam in e.labels:
            assert _delta_layers(e, T, lam).at_one() == _nabla_layers(e, T, lam).at_one()
        assert findInjective(e.standardObject(mu), T) is not None
        assert findSurjective(T, e.costandardObject(mu)) is not None


# ------------------------------------------------------------ duality


@pytest.mark.parametrize("b", [TS2, SL2, RR0, RR1], ids=ids)
def test_duality_functor(b):
    e = E(b)
    frob = e.frobenius(0)
    rep = e.verifyDuality(b.tau, frob or None)
    assert rep.ok, rep.violations


def test_identity_is_not_an_anti_involution():
    F = SL2.algebra.field
    n = SL2.algebra.dim
    ident = tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))
    with pytest.raises(NotTriangularInvolution):
        E(SL2).dualityFunctor(ident)


# ------------------------------------------------------------ semisimplicity and Ext


@pytest.mark.parametrize("b,expected", [(SS, True), (TS2, False), (SL2, False), (RR1, True)],
                         ids=lambda x: str(x)[:20])
def test_semisimplicity(b, expected):
    rep = E(b).semisimplicityCheck()
    assert rep.ok
    assert rep.details["semisimple"] is expected


@pytest.mark.parametrize("b", [TS2, SL2, RR0], ids=ids)
def test_ext_standard_costandard(b):
    e = E(b)
    for lam in e.labels:
        for mu in e.labels:
            ext = e.ext(e.standardObject(lam), e.properCostandard(mu), 2)
            assert ext[0] == (one() if lam == mu else LaurentPoly())
            assert ext[1] == LaurentPoly() and ext[2] == LaurentPoly()


def test_ext_one_between_simples_in_distinct_degrees():
    e = E(TS2)
    L = e.simple("triv").module
    ext = e.ext(L, L, 1)
    assert ext[1].coefficient(0) == 0
    assert any(ext[1].coefficient(n) for n in (-1, 1))
