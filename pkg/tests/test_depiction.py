import pytest

from depict.affine import AffineDomain, is_subring
from depict.depiction import (
    ContractedPrime,
    CriterionNotApplicable,
    DepictionError,
    GhtResult,
    LiftError,
    SubringKplusI,
    check_depiction,
    contraction_equal,
    fiber_over,
    gdim_point,
    geometric_height,
    in_Z,
    is_saturated_on,
    lift_prime,
    maximal_depiction,
    minimal_primes,
    noetherian_codim1,
    prime_certificate,
    u_locus,
)
from depict.groebner import intersect

from worked import final, intro, not1, smeared_prime_gens, sn_family


@pytest.fixture(scope="module")
def sn():
    return sn_family()


@pytest.fixture(scope="module")
def ex_not1():
    return not1()


def test_construction_rejects_degenerate_ideals():
    S = AffineDomain.from_strings(["x", "y"])
    with pytest.raises(DepictionError):
        SubringKplusI(S, S.ideal(["0"]))
    with pytest.raises(DepictionError):
        SubringKplusI(S, S.ideal(["x", "x - 1"]))


def test_check_depiction_examples(sn, ex_not1):
    R, S, T = ex_not1
    assert check_depiction(S, R)
    Rsn, rings = sn
    assert all(check_depiction(S, Rsn) for S in rings.values())
    P = AffineDomain.from_strings(["x", "y", "z"])
    assert not check_depiction(P, SubringKplusI(P, P.ideal(["x", "y", "z"])))
    # I is not an ideal of T: the criterion does not apply
    with pytest.raises(CriterionNotApplicable):
        check_depiction(T, R)


def test_u_locus_examples(ex_not1):
    Rf, Tf = final()
    assert u_locus(Tf, Rf).vanishing.equals(Tf.ideal(["x"]))
    R, S, T = ex_not1
    U = u_locus(T, R)
    assert U.kind == "open-complement" and U.vanishing.equals(T.ideal(["x - 1", "y"]))
    # in S the closed complement is the line x = 0 together with the point (1, 0)
    Z = u_locus(S, R).vanishing
    parts = intersect(S.ideal(["x"]).lift, S.ideal(["x - 1", "y"]).lift)
    assert Z.lift == parts


def test_in_Z_examples(ex_not1):
    R, S, T = ex_not1
    assert in_Z(ContractedPrime(R, S.ideal(["x - 2", "y"])))
    assert not in_Z(ContractedPrime(R, S.ideal(["x"])))
    assert in_Z(ContractedPrime(R, S.zero_ideal()))


def test_codim1_examples(sn, ex_not1):
    Rsn, rings = sn
    assert noetherian_codim1(rings[1], Rsn)
    Ri, S = intro()
    assert not noetherian_codim1(S, Ri)
    R, S, T = ex_not1
    assert not noetherian_codim1(S, R)
    with pytest.raises(CriterionNotApplicable):
        noetherian_codim1(T, R)


def test_codim1_is_depiction_independent(sn):
    Rsn, rings = sn
    assert len({noetherian_codim1(S, Rsn) for S in rings.values()}) == 1


def test_maximal_depiction_sn(sn):
    Rsn, rings = sn
    for n, S in rings.items():
        rep = maximal_depiction(S, Rsn)
        assert rep.codim1 and rep.T is not None
        assert rep.T.generators_in_coords() == ["x", "y", "z"]
        assert rep.branch == ("normal-depiction" if n == 1 else "normalization-is-depiction")
        assert rep.chain == {"S_in_T": True, "T_in_Sbar": True}
        assert rep.T_saturated is True
        # maximality: every S_m sits inside T
        assert all(is_subring(Sm, rep.T) for Sm in rings.values())


def test_maximal_depiction_without_codim1(ex_not1):
    R, S, T = ex_not1
    rep = maximal_depiction(S, R)
    assert not rep.codim1 and rep.T is None and rep.T_saturated is None
    assert rep.to_dict()["T_saturated"] == "untested"


def test_maximal_depiction_normalization_unavailable():
    # a non-toric, non-polynomial domain: the node y^2 = x^2 (x + 1) crossed with a plane
    S = AffineDomain.from_strings(["x", "y", "z", "u"], ["y^2 - x^3 - x^2"], name="N")
    assert not check_depiction(S, SubringKplusI(S, S.ideal(["x - 3", "y - 6", "z", "u"])))
    R = SubringKplusI(S, S.ideal(["x - 3", "y - 6", "z"]))
    assert check_depiction(S, R) and noetherian_codim1(S, R)
    rep = maximal_depiction(S, R)
    assert rep.branch == "normalization-unavailable" and rep.T is None
    assert rep.T_interval[1] is None


def test_geometric_height_examples(sn, ex_not1):
    Rsn, rings = sn
    S1 = rings[1]
    g = geometric_height(ContractedPrime(Rsn, S1.ideal(["x - 1", "y - 1", "z - 1"])))
    assert (g.lower, g.exact, g.justification) == (3, True, "Z-membership")
    g = geometric_height(ContractedPrime(Rsn, S1.ideal(["x", "y"])))
    assert (g.value, g.justification) == (2, "codim1-T")
    R, S, T = ex_not1
    g = geometric_height(ContractedPrime(R, S.ideal(["x"])), [S, T])
    assert (g.lower, g.upper, g.exact, g.justification) == (1, 1, True, "bounds-only")
    assert T.ideal(["x - 1", "y"]).height() == 2


def test_gdim_examples(sn, ex_not1):
    Rsn, rings = sn
    for S in rings.values():
        g = gdim_point(ContractedPrime(Rsn, S.ideal(smeared_prime_gens(S))), list(rings.values()))
        assert g.exact and g.value == 1
    assert gdim_point(ContractedPrime(Rsn, rings[1].ideal(["x - 2", "y", "z + 1"]))).value == 0
    R, S, T = ex_not1
    assert gdim_point(ContractedPrime(R, S.ideal(["x"])), [S, T]).value == 1


def test_gdim_consistency_with_minimal_primes(sn):
    Rsn, rings = sn
    T = maximal_depiction(rings[2], Rsn).T
    IT = Rsn.ideal_in(T)
    g = gdim_point(ContractedPrime(Rsn, rings[2].ideal(smeared_prime_gens(rings[2]))))
    assert g.value == IT.quotient_dim()
    for t in minimal_primes(IT):
        assert t.quotient_dim() == g.value


def test_ght_result_invariants():
    with pytest.raises(ValueError):
        GhtResult(2, 1, False, "bounds-only")
    with pytest.raises(ValueError):
        GhtResult(0, 1, False, "bounds-only")
    with pytest.raises(ValueError):
        GhtResult(1, 2, True, "bounds-only")


def test_contraction_equal_examples(ex_not1):
    R, S, T = ex_not1
    x, pt, y = (ContractedPrime(R, S.ideal(g)) for g in (["x"], ["x - 1", "y"], ["y"]))
    assert contraction_equal(x, pt)
    assert not contraction_equal(y, x)
    assert contraction_equal(y, y)
    a = ContractedPrime(R, S.ideal(["x - 2", "y"]))
    b = ContractedPrime(R, T.ideal(["x - 2", "y"]))
    assert contraction_equal(a, b)
    assert not contraction_equal(a, ContractedPrime(R, S.ideal(["x - 3", "y"])))


def test_fiber_examples(sn, ex_not1):
    R, S, T = ex_not1
    f = fiber_over(ContractedPrime(R, S.ideal(["x"])), T)
    assert f.kind == "closed" and len(f.primes) == 1
    assert f.primes[0].equals(T.ideal(["x - 1", "y"]))
    f = fiber_over(ContractedPrime(R, S.ideal(["x - 2", "y"])), T)
    assert f.kind == "singleton"
    assert f.primes[0].generators() == ["x - 2", "y", "w - 1/2"]
    Rsn, rings = sn
    f = fiber_over(ContractedPrime(Rsn, rings[2].ideal(smeared_prime_gens(rings[2]))), rings[1])
    assert [p.generators() for p in f.primes] == [["x", "y"]]


def test_smeared_primes_collapse(sn):
    Rsn, rings = sn
    S1 = rings[1]
    smeared = [S1.ideal(g) for g in (["x", "y"], ["x", "y", "z"], ["x", "y", "z - 5"])]
    ps = [ContractedPrime(Rsn, q) for q in smeared]
    assert all(p.smeared for p in ps)
    assert all(contraction_equal(a, b) for a in ps for b in ps)


def test_unique_lifts_preserve_height(sn):
    Rsn, rings = sn
    S1 = rings[1]
    corpus = [["x - 1", "y - 1", "z - 1"], ["x - 1", "y"], ["x - z", "y - 2*z"], ["x*y - 1"]]
    for gens in corpus:
        p = ContractedPrime(Rsn, S1.ideal(gens))
        assert not p.smeared
        heights = {lift_prime(p, S).height() for S in rings.values()}
        assert heights == {p.q.height()}
        for S in rings.values():
            assert fiber_over(p, S).kind == "singleton"


def test_lift_of_smeared_prime_refused(ex_not1):
    R, S, T = ex_not1
    with pytest.raises(LiftError):
        lift_prime(ContractedPrime(R, S.ideal(["x"])), T)


def test_saturation_examples(sn, ex_not1):
    Rf, Tf = final()
    assert is_saturated_on(Tf, Rf, [Tf.ideal(["x"])])
    R, S, T = ex_not1
    assert not is_saturated_on(T, R, [T.ideal(["x - 1", "y"])], [S])
    Rsn, rings = sn
    assert is_saturated_on(rings[1], Rsn, [rings[1].ideal(["x", "y"])])
    with pytest.raises(DepictionError):
        is_saturated_on(rings[1], Rsn, [rings[1].ideal(["x", "y", "z"])])


def test_prime_certificates(ex_not1):
    R, S, T = ex_not1
    assert prime_certificate(T.ideal(["x - 1", "y"])) == "graph"
    assert prime_certificate(S.ideal(["x^2 - x", "x*y"])) is None
    assert minimal_primes(S.ideal(["x^2 - x", "x*y"])) is None
    Ri, P = intro()
    assert [m.generators() for m in minimal_primes(P.ideal(["x*y", "x*z"]))] == [["x"], ["y", "z"]]


def test_transfer_contraction_requires_containment(sn):
    Rsn, rings = sn
    # I = (x, y)S1 is an ideal of S2 (contraction verified)
    t = Rsn.transfer(rings[2])
    assert t.kind == "contraction" and t.is_ideal
    # k + zS1 is not inside S2 (z is not in S2)
    R2 = SubringKplusI(rings[1], rings[1].ideal(["z"]))
    assert not R2.contained_in(rings[2])
