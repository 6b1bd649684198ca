from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from projmorph import fixtures
from projmorph.linalg import span_rank
from projmorph.modcat import (dual_hom_module, indecomposables, is_isomorphic, projective_cover, same_up_to_projectives, tau,
                              transpose)
from projmorph.modules import (PreconditionFailed, direct_sum, hom_basis, identity, injective_module, kernel,
                               proj_map, projective_module, simple_module, zero_map)
from projmorph.morphcat import (MorphObject, MorphSES, NotInI, V_generators, check_zero_auslander,
                                classify_P_object, cok, cok_map, generating_family, hom_basis_H, identity_object,
                                is_iso_H, is_left_approximation, is_left_minimal, is_right_approximation,
                                is_right_minimal, ker, left_P_approx, morph_injections, morph_projections,
                                morph_sum, left_P_approx_min,
                                left_P_approx_selfinjective, left_P_approx_special, normalize_ses,
                                nu_equivalence, p_indecomposables, presentation_object, right_P_approx,
                                right_P_approx_min_cod, right_P_approx_min_dom, right_P_approx_special,
                                stable_hom, standard_ses_pair, star_duality, theta_stable_tau, to_zero,
                                tr_via_morphcat, zero_to)


def P(A, v):
    return projective_module(A, (A.vertex_index(str(v)),))


def S(A, v):
    return simple_module(A, str(v))


def rad_inclusion(A2):
    """The inclusion P1 -> P2 over A2, left multiplication by the arrow."""
    alpha = A2.paths_between(1, 0)[0]
    return MorphObject(proj_map(A2, (0,), (1,), [[{alpha: Fraction(1)}]]))


def probes(A):
    return p_indecomposables(A) + generating_family(A)


def approx_ok(phi, side, minimal=True):
    A = phi.source.algebra
    if side == "right":
        return is_right_approximation(phi, probes(A)).ok and (not minimal or is_right_minimal(phi))
    return is_left_approximation(phi, probes(A)).ok and (not minimal or is_left_minimal(phi))


def test_hom_H(A2, A3r):
    assert len(hom_basis_H(zero_to(P(A2, 1)), zero_to(P(A2, 1)))) == 1
    assert len(hom_basis_H(rad_inclusion(A2), identity_object(P(A2, 2)))) == 1
    for A in (A2, A3r):
        for u in range(A.n):
            for v in range(A.n):
                X, Y = to_zero(projective_module(A, (u,))), zero_to(projective_module(A, (v,)))
                assert hom_basis_H(X, Y) == []


def test_cok(A2):
    Pm = P(A2, 2)
    assert is_isomorphic(cok(zero_to(Pm)), Pm)
    assert is_isomorphic(cok(rad_inclusion(A2)), S(A2, 2))
    assert cok(identity_object(Pm)).dim == 0


def test_ker(A2):
    I = injective_module(A2, (0,))
    assert is_isomorphic(ker(to_zero(I)), I)
    Y = nu_equivalence(rad_inclusion(A2))
    assert is_isomorphic(ker(Y), S(A2, 1))
    assert ker(identity_object(I)).dim == 0
    with pytest.raises(NotInI):
        ker(to_zero(S(A2, 1)))          # S1 is not injective over A2


def test_stable_hom(A2):
    X = rad_inclusion(A2)
    assert stable_hom(X, X, [X])[0] == 0
    assert stable_hom(X, X, V_generators(A2))[0] == 1
    for Y in p_indecomposables(A2):
        assert stable_hom(identity_object(P(A2, 2)), Y, V_generators(A2))[0] == 0


def test_classify(A2):
    assert classify_P_object(zero_to(P(A2, 1)))[0] == "projective"
    assert classify_P_object(identity_object(P(A2, 1)))[0] == "both"
    assert classify_P_object(rad_inclusion(A2))[0] == "neither"
    assert classify_P_object(to_zero(P(A2, 2)))[0] == "injective"


def test_standard_ses_pair(A2):
    for X in (zero_to(P(A2, 2)), rad_inclusion(A2), identity_object(P(A2, 1))):
        s1, s2 = standard_ses_pair(X)
        assert s1.is_exact() and s2.is_exact()
    _, s2 = standard_ses_pair(identity_object(P(A2, 1)))
    assert is_iso_H(s2.right, to_zero(P(A2, 1)))


def test_zero_auslander():
    for name in ("A2", "A3r", "k", "A3", "k[x]/x^2"):
        assert check_zero_auslander(fixtures.FIXTURES[name]())["ok"], name


# -- right approximations -----------------------------------------------------

def test_right_special(A2):
    phi = right_P_approx_special(S(A2, 2), "0->M")
    assert is_iso_H(phi.source, rad_inclusion(A2)) and approx_ok(phi, "right")
    phi = right_P_approx_special(P(A2, 2), "M->M")
    assert phi.top.is_iso() and phi.bottom.is_iso() and approx_ok(phi, "right")
    phi = right_P_approx_special(S(A2, 2), "M->0")
    assert is_iso_H(phi.source, to_zero(P(A2, 2))) and approx_ok(phi, "right")


def test_right_general(A2):
    M = S(A2, 2)
    phi = right_P_approx(zero_to(M))
    assert is_iso_H(phi.source, right_P_approx_special(M, "0->M").source)
    _, g = projective_cover(M)
    phi = right_P_approx(MorphObject(g))
    assert is_iso_H(phi.source, right_P_approx_min_dom(g).source)
    I = injective_module(A2, (0,))
    (inc,) = hom_basis(S(A2, 1), I)
    phi = right_P_approx(MorphObject(inc))
    assert phi.source.in_P() and approx_ok(phi, "right", minimal=False)
    assert cok_map(phi).is_surjective()


def test_right_min_dom(A2, A3r):
    _, g = projective_cover(S(A2, 2))
    phi = right_P_approx_min_dom(g)
    assert phi.source.dom.proj_labels == (0, 1) and phi.source.cod.proj_labels == (1,)
    assert approx_ok(phi, "right")
    _, g = projective_cover(S(A3r, 3))
    phi = right_P_approx_min_dom(g)
    assert phi.source.dom.proj_labels == (1, 2) and phi.source.cod.proj_labels == (2,)
    assert approx_ok(phi, "right")
    _, g = projective_cover(P(A2, 2))
    phi = right_P_approx_min_dom(g)
    assert approx_ok(phi, "right")
    with pytest.raises(PreconditionFailed):
        right_P_approx_min_dom(identity(S(A2, 2)))


def test_right_min_cod(A2):
    Pm = P(A2, 2)
    phi = right_P_approx_min_cod(identity(Pm))
    assert phi.top.is_iso() and approx_ok(phi, "right")
    (g,) = hom_basis(S(A2, 1), Pm)
    phi = right_P_approx_min_cod(g)
    assert phi.top.is_iso() and phi.source.dom.dims == (1, 0) and approx_ok(phi, "right")
    phi = right_P_approx_min_cod(zero_map(direct_sum([], A2), Pm))
    assert phi.source.dims == (0, 0, 1, 1) and approx_ok(phi, "right")


# -- left approximations --------------------------------------------------------

def test_left_special(A2):
    phi = left_P_approx_special(P(A2, 2), "M->0")
    assert phi.top.is_iso() and phi.target.cod.dim == 0 and approx_ok(phi, "left")
    # S1 = P1 over A2 is projective, so delta is an isomorphism onto P1
    phi = left_P_approx_special(S(A2, 1), "0->M")
    assert is_iso_H(phi.target, zero_to(P(A2, 1))) and approx_ok(phi, "left")
    phi = left_P_approx_special(S(A2, 1), "M->M")
    assert is_iso_H(phi.target, identity_object(P(A2, 1))) and approx_ok(phi, "left")
    # (M -> 0) for non-projective M lands in (Q0 -g-> Q1)
    phi = left_P_approx_special(S(A2, 2), "M->0")
    assert approx_ok(phi, "left")


def test_left_general(A2):
    I = injective_module(A2, (0,))
    (inc,) = hom_basis(S(A2, 1), I)
    phi = left_P_approx(MorphObject(inc))
    assert phi.target.in_P()
    assert approx_ok(phi, "left", minimal=False)
    phi = left_P_approx(zero_to(S(A2, 2)))
    assert phi.top.source.dim == 0 and approx_ok(phi, "left", minimal=False)


def test_left_selfinjective(dual, A2):
    Sx = simple_module(dual, "1")
    phi = left_P_approx_selfinjective(zero_to(Sx))
    assert approx_ok(phi, "left", minimal=False)
    L = projective_module(dual, (0,))
    phi = left_P_approx_selfinjective(identity_object(L))
    assert approx_ok(phi, "left", minimal=False)
    with pytest.raises(PreconditionFailed):
        left_P_approx_selfinjective(zero_to(S(A2, 2)))


def test_left_min(A2, A3r):
    I = injective_module(A2, (0,))
    (g,) = hom_basis(P(A2, 1), I)
    phi = left_P_approx_min(MorphObject(g))
    assert phi.bottom.is_iso() and approx_ok(phi, "left")
    _, g = projective_cover(S(A3r, 3))
    phi = left_P_approx_min(MorphObject(g))
    assert is_iso_H(phi.target, to_zero(P(A3r, 3))) and approx_ok(phi, "left")
    with pytest.raises(PreconditionFailed):
        left_P_approx_min(MorphObject(identity(S(A2, 2))))


# -- functors and dualities -----------------------------------------------------------

def test_nu_equivalence(A2):
    Y = nu_equivalence(zero_to(P(A2, 1)))
    assert Y.dom.dim == 0 and is_isomorphic(Y.cod, injective_module(A2, (0,)))
    Y = nu_equivalence(identity_object(P(A2, 2)))
    assert Y.map.is_iso()
    assert is_isomorphic(ker(nu_equivalence(rad_inclusion(A2))), tau(S(A2, 2)))


def test_star_duality(A2):
    X = star_duality(zero_to(P(A2, 2)))
    assert X.cod.dim == 0 and X.dom.proj_labels == (1,)
    X = star_duality(identity_object(P(A2, 2)))
    assert X.map.is_iso()
    X = rad_inclusion(A2)
    assert is_iso_H(star_duality(star_duality(X)), X)
    # the kernel of the dual is the dual of Cok
    Xs = star_duality(X)
    assert is_isomorphic(kernel(Xs.map)[0], dual_hom_module(cok(X))[0])


def test_normalize(A2):
    X, Y = zero_to(P(A2, 1)), to_zero(P(A2, 2))
    D = morph_sum([X, Y])
    s = MorphSES(morph_injections([X, Y], D)[0], morph_projections([X, Y], D)[1])
    norm, iso, q = normalize_ses(s)
    assert q.is_zero() and norm.is_exact()
    s1, _ = standard_ses_pair(rad_inclusion(A2))
    norm, iso, q = normalize_ses(s1)
    assert norm.is_exact()
    assert (iso.target.map @ iso.top).comps == (iso.bottom @ iso.source.map).comps


def test_theta_and_tr(A2, A3r):
    for A, v in ((A2, 2), (A3r, 3), (A3r, 2)):
        M = S(A, v)
        assert is_isomorphic(theta_stable_tau(M), tau(M))
        assert same_up_to_projectives(tr_via_morphcat(M), transpose(M))
    assert same_up_to_projectives(tr_via_morphcat(P(A2, 2)), direct_sum([], A2.opposite()))
    with pytest.raises(PreconditionFailed):
        theta_stable_tau(P(A2, 2))


# -- properties ------------------------------------------------------------------------

PAIRS = [(name, X, Y) for name in ("A2", "A3r", "k[x]/x^2")
         for X in p_indecomposables(fixtures.FIXTURES[name]())
         for Y in p_indecomposables(fixtures.FIXTURES[name]())]


@given(st.sampled_from(PAIRS))
@settings(max_examples=60, deadline=None)
def test_dualities_preserve_hom_dimension(item):
    _, X, Y = item
    d = len(hom_basis_H(X, Y))
    assert len(hom_basis_H(nu_equivalence(X), nu_equivalence(Y))) == d
    assert len(hom_basis_H(star_duality(Y), star_duality(X))) == d


@given(st.sampled_from(PAIRS))
@settings(max_examples=60, deadline=None)
def test_cok_is_full(item):
    _, X, Y = item
    target = [t.flat() for t in hom_basis(cok(X), cok(Y))]
    if not target:
        return
    n = len(target[0])
    images = [cok_map(phi).flat() for phi in hom_basis_H(X, Y)]
    assert span_rank(images + target, n) == span_rank(images, n)


@given(st.sampled_from([(n, M) for n in ("A2", "A3r", "A3") for M in indecomposables(fixtures.FIXTURES[n]())]))
@settings(max_examples=30, deadline=None)
def test_cok_is_dense(item):
    _, M = item
    X, _ = presentation_object(M)
    assert X.in_P() and is_isomorphic(cok(X), M)


@given(st.sampled_from([(n, X) for n in ("A2", "A3r") for X in p_indecomposables(fixtures.FIXTURES[n]())]))
@settings(max_examples=30, deadline=None)
def test_normalize_commutes(item):
    _, X = item
    for s in standard_ses_pair(X):
        norm, iso, q = normalize_ses(s)
        assert norm.is_exact()
        assert (iso.target.map @ iso.top).comps == (iso.bottom @ iso.source.map).comps
        assert (norm.middle.map @ norm.mono.top).comps == (norm.mono.bottom @ norm.left.map).comps
