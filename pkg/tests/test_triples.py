from __future__ import annotations

import pytest

from semiprim import corpus
from semiprim.action import action_of_transitive_group, regular_action
from semiprim.analysis import is_semiprimitive, plinth_report
from semiprim.config import Caps
from semiprim.errors import CapacityExceeded, IncompatibleIsomorphism, InvalidTriple, NotAnAutomorphism
from semiprim.group import centralizer_of_transitive, generated_by
from semiprim.iso import is_perm_isomorphic
from semiprim.library import alternating, cyclic, symmetric
from semiprim.triples import (
    GroupWithElements,
    automorphism_from_images,
    build_from_triple,
    extract_triple,
    find_gluing_isomorphism,
    k_zero,
    make_triple,
    triple_product,
    validate_triple,
)

from conftest import perm


def inversion_triple(n):
    K = cyclic(n)
    g = K.gens[0]
    inverse = tuple(g.index(i) for i in range(n))
    return make_triple(K, [[inverse]])


def postconditions(t, A):
    """Semiprimitive, plinth of order |K|, stabilizer of order |H|, centralizer of order |K0 : L|."""
    assert is_semiprimitive(A)
    assert A.plinth.order() == len(t.K)
    assert A.stab.order() == t.H.order()
    C = centralizer_of_transitive(A.ambient, A.plinth)
    assert C.order() == k_zero(t).order() // t.L.order()


def test_c3_inversion_is_valid_and_builds_sym3():
    t = inversion_triple(3)
    assert validate_triple(t).valid
    A = build_from_triple(t)
    assert (A.degree, A.order()) == (3, 6)
    assert is_perm_isomorphic(A, action_of_transitive_group(symmetric(3))).is_yes
    postconditions(t, A)


def test_c4_inversion_fails_condition_one():
    v = validate_triple(inversion_triple(4))
    assert not v.valid and v.failed_condition == 1
    Y, h = v.witness
    assert Y.order() == 2
    with pytest.raises(InvalidTriple):
        build_from_triple(inversion_triple(4))


@pytest.mark.parametrize("K", [cyclic(6), symmetric(3), alternating(4)])
def test_trivial_h_gives_regular_action(K):
    t = make_triple(K, [])
    assert validate_triple(t).valid
    A = build_from_triple(t)
    assert A.degree == K.order() and A.stab.order() == 1
    postconditions(t, A)


def test_alt5_conjugation_triple():
    K = alternating(5)
    g = perm("(0 1)(2 3)", 5)
    KE = GroupWithElements(K)
    t = make_triple(K, [KE.conjugation(g)], generated_by(K, [g]))
    assert validate_triple(t).valid
    A = build_from_triple(t)
    assert (A.degree, A.order()) == (30, 60)
    postconditions(t, A)


def test_automorphism_checks():
    KE = GroupWithElements(cyclic(4))
    g = KE.group.gens[0]
    with pytest.raises(NotAnAutomorphism):
        automorphism_from_images(KE, [perm("(0 2)(1 3)", 4)])  # wrong order
    with pytest.raises(NotAnAutomorphism):
        automorphism_from_images(KE, [perm("(0 1)", 4)])  # outside K


def test_extract_d30():
    A = corpus.dihedral(15)
    K = plinth_report(A).plinths[0]
    t = extract_triple(A, K)
    assert (len(t.K), t.H.order(), t.L.order()) == (15, 2, 1)
    assert validate_triple(t).valid


def test_extract_alt5_on_5():
    A = corpus.alt5_on_5()
    t = extract_triple(A, A.ambient)
    assert (len(t.K), t.H.order(), t.L.order()) == (60, 12, 12)
    assert validate_triple(t).valid


def test_extract_regular():
    A = regular_action(symmetric(3))
    t = extract_triple(A, A.ambient)
    assert (len(t.K), t.H.order(), t.L.order()) == (6, 1, 1)


def test_extract_at_other_point():
    A = corpus.dihedral(15)
    K = plinth_report(A).plinths[0]
    t = extract_triple(A, K, omega=4)
    assert validate_triple(t).valid
    assert is_perm_isomorphic(build_from_triple(t), A).is_yes


@pytest.mark.parametrize("name", ["d30", "frob20", "alt5_on_5", "psl27_on_14", "asq_with_semiregular", "hs_diag", "glue_d6_d10"])
def test_roundtrip(name):
    A = next(e for e in corpus.CORPUS if e.name == name).build()
    K = plinth_report(A).plinths[0]
    t = extract_triple(A, K)
    assert validate_triple(t).valid
    B = build_from_triple(t)
    postconditions(t, B)
    assert is_perm_isomorphic(B, A).is_yes


def test_gluing_isomorphism_small():
    t1, t2 = inversion_triple(3), inversion_triple(5)
    mu = find_gluing_isomorphism(t1, t2)
    assert mu is not None
    a = find_gluing_isomorphism(extract_triple(corpus.alt5_on_5(), corpus.alt5_on_5().ambient), t2)
    assert a is None


def test_triple_product_d30():
    t1, t2 = inversion_triple(3), inversion_triple(5)
    mu = find_gluing_isomorphism(t1, t2)
    t = triple_product(t1, t2, mu)
    assert (len(t.K), t.H.order(), t.L.order()) == (15, 2, 1)
    assert validate_triple(t).valid
    A = build_from_triple(t)
    assert is_perm_isomorphic(A, corpus.dihedral(15)).is_yes


def test_triple_product_needs_matching_h():
    t1 = inversion_triple(3)
    t2 = make_triple(cyclic(5), [])
    with pytest.raises(IncompatibleIsomorphism):
        triple_product(t1, t2, [t2.H.identity])


def test_big_triples_glue_but_product_exceeds_table_cap():
    A1 = corpus.sym7_on_42()
    A2 = corpus.sd_alt5_wr2()
    t1 = extract_triple(A1, plinth_report(A1).plinths[0])
    t2 = extract_triple(A2, plinth_report(A2).plinths[0])
    assert (len(t1.K), t1.H.order(), t1.L.order()) == (2520, 120, 60)
    assert (len(t2.K), t2.H.order(), t2.L.order()) == (3600, 120, 60)
    mu = find_gluing_isomorphism(t1, t2)
    assert mu is not None
    with pytest.raises(CapacityExceeded):
        triple_product(t1, t2, mu)


def test_element_cap():
    with pytest.raises(CapacityExceeded):
        GroupWithElements(symmetric(6), Caps(element_cap=100))
