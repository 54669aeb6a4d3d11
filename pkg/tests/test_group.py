from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from semiprim.action import make_action, regular_action, action_of_transitive_group
from semiprim.errors import NotAHomomorphism
from semiprim.group import (
    PermGroup,
    centralizer_of_transitive,
    core,
    coset_action,
    derived_subgroup,
    generated_by,
    hom_from_images,
    intersection,
    is_normal,
    is_primitive,
    join,
    minimal_blocks,
    normal_closure,
    whole,
)
from semiprim.iso import is_perm_isomorphic
from semiprim.library import alternating, cyclic, dihedral, symmetric
from semiprim.perm import mul, inv, parse_cycles, to_raw

from conftest import perm


def brute_centralizer_order(G, K):
    return sum(1 for g in G.raw_elements() if all(mul(g, k) == mul(k, g) for k in K.gens))


def test_orbits():
    assert sorted(symmetric(3).orbit(0)) == [0, 1, 2]
    G = PermGroup(4, [perm("(0 1)", 4)])
    assert sorted(map(sorted, G.orbits())) == [[0, 1], [2], [3]]
    assert len(alternating(5).orbits()) == 1


def test_point_stabilizers():
    assert alternating(5).point_stabilizer(0).order() == 12
    assert cyclic(5).point_stabilizer(3).order() == 1
    S = symmetric(3).point_stabilizer(2)
    assert S.order() == 2 and S.contains(parse_cycles("(0 1)", 3))


def test_action_predicates():
    assert cyclic(5).action_predicates() == {"is_transitive": True, "is_semiregular": True, "is_regular": True}
    p = symmetric(3).action_predicates()
    assert p["is_transitive"] and not p["is_semiregular"]
    q = PermGroup(4, [perm("(0 1)(2 3)", 4)]).action_predicates()
    assert not q["is_transitive"] and q["is_semiregular"]


def test_blocks():
    assert is_primitive(symmetric(4))
    D8 = PermGroup(4, [perm("(0 1 2 3)", 4), perm("(1 3)", 4)])
    bs = minimal_blocks(D8, 0, 2)
    assert sorted(map(sorted, bs.blocks())) == [[0, 2], [1, 3]]
    assert not is_primitive(cyclic(6))


def test_coset_actions():
    S3 = symmetric(3)
    img, hom = coset_action(S3, generated_by(S3, [perm("(0 1)", 3)]))
    assert img.degree == 3 and img.order() == 6 and img.is_transitive()
    img, hom = coset_action(S3, whole(S3))
    assert img.degree == 1 and hom.kernel().order() == 6
    A5 = alternating(5)
    syl2 = generated_by(A5, [perm("(0 1)(2 3)", 5), perm("(0 2)(1 3)", 5)])
    img, _ = coset_action(A5, syl2)
    assert img.degree == 15 and len(img.orbits()) == 1


def test_subgroup_algebra():
    S3 = symmetric(3)
    assert core(S3, generated_by(S3, [perm("(0 1)", 3)])).order() == 1
    D = derived_subgroup(S3)
    assert D.order() == 3 and D.contains(parse_cycles("(0 1 2)", 3))
    A5 = alternating(5)
    assert normal_closure(A5, [perm("(0 1 2)", 5)]).order() == 60


def test_intersection_and_join():
    S4 = symmetric(4)
    A = generated_by(S4, [perm("(0 1 2 3)", 4)])
    B = generated_by(S4, [perm("(0 2)", 4), perm("(1 3)", 4)])
    assert intersection(A, B, parent=S4).order() == 2
    assert join(A, B, parent=S4).order() == 8


def test_centralizer_examples():
    D10 = dihedral(5)
    C5 = generated_by(D10, [perm("(0 1 2 3 4)", 5)])
    assert centralizer_of_transitive(D10, C5).order() == 5
    S5 = symmetric(5)
    assert centralizer_of_transitive(S5, generated_by(S5, alternating(5).gens)).order() == 1


@pytest.mark.parametrize("G", [dihedral(5), dihedral(6), symmetric(4), cyclic(8), PermGroup(8, [perm("(0 1 2 3)(4 5 6 7)", 8), perm("(0 4)(1 5)(2 6)(3 7)", 8)])])
def test_centralizer_matches_brute_force(G):
    C = centralizer_of_transitive(G, G)
    assert C.order() == brute_centralizer_order(G, G)
    assert C.is_semiregular()


def test_homomorphisms():
    A5 = alternating(5)
    idm = hom_from_images(A5, A5, A5.gens)
    assert idm.kernel().order() == 1 and idm.image().order() == 60
    S3 = symmetric(3)
    C2 = cyclic(2)
    sign = [perm("(0 1)", 2) if _odd(g) else perm("", 2) for g in S3.gens]
    h = hom_from_images(S3, C2, sign)
    assert h.kernel().order() == 3
    triv = hom_from_images(A5, PermGroup(1, []), [perm("", 1)] * len(A5.gens))
    assert triv.kernel().order() == 60


def _odd(g):
    n = len(g)
    seen, parity = set(), 0
    for i in range(n):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = g[j]
            length += 1
        parity += length - 1
    return parity % 2 == 1


def test_hom_rejects_bad_images():
    S3 = symmetric(3)
    C3 = cyclic(3)
    with pytest.raises(NotAHomomorphism):
        hom_from_images(S3, C3, [perm("(0 1 2)", 3)] * len(S3.gens))


def test_hom_image_kernel_orders():
    G = dihedral(6)
    img, hom = coset_action(G, generated_by(G, [perm("(0 3)(1 4)(2 5)", 6)]))
    assert hom.image().order() * hom.kernel().order() == G.order()


@pytest.mark.parametrize("G", [symmetric(5), dihedral(15), alternating(6), PermGroup(6, [perm("(0 1)", 6), perm("(2 3 4)", 6)])])
def test_orbit_stabilizer(G):
    for p in range(G.degree):
        assert G.order() == G.point_stabilizer(p).order() * len(G.orbit(p))


def _subgroup_pairs():
    S4 = symmetric(4)
    yield S4, generated_by(S4, [perm("(0 1 2 3)", 4)])
    yield S4, generated_by(S4, [perm("(0 1)(2 3)", 4), perm("(0 2)(1 3)", 4)])
    A5 = alternating(5)
    yield A5, A5.point_stabilizer(0)
    D = dihedral(6)
    yield D, generated_by(D, [perm("(0 2 4)(1 3 5)", 6)])


@pytest.mark.parametrize("pair", list(_subgroup_pairs()))
def test_coset_kernel_is_core(pair):
    G, H = pair
    _, hom = coset_action(G, H)
    assert hom.kernel().equals(core(G, H))


def test_iso_examples():
    A = action_of_transitive_group(dihedral(15))
    assert is_perm_isomorphic(A, A).is_yes
    B = action_of_transitive_group(symmetric(3))
    C = regular_action(cyclic(6))
    assert is_perm_isomorphic(B, C).status == "proven_no"


def test_iso_distinguishes_actions_of_same_degree():
    # Sym(4) on 6 points: cosets of C4 vs cosets of the Klein group V4 through a transposition pair
    S4 = symmetric(4)
    A = make_action(S4, generated_by(S4, [perm("(0 1 2 3)", 4)]))
    B = make_action(S4, generated_by(S4, [perm("(0 1)", 4), perm("(2 3)", 4)]))
    assert A.degree == B.degree == 6
    assert is_perm_isomorphic(A, B).status == "proven_no"


def test_iso_relabelled_is_yes():
    G = dihedral(7)
    sigma = to_raw([3, 0, 6, 1, 5, 2, 4], 7)
    conj = PermGroup(7, [mul(mul(inv(sigma), g), sigma) for g in G.gens])
    assert is_perm_isomorphic(action_of_transitive_group(G), action_of_transitive_group(conj)).is_yes


small_groups = st.sampled_from([symmetric(4), dihedral(5), dihedral(8), alternating(5), cyclic(9)])


@settings(max_examples=15, deadline=None)
@given(small_groups, st.data())
def test_normality_of_normal_closure(G, data):
    x = data.draw(st.sampled_from(G.raw_elements()))
    N = normal_closure(G, [x])
    assert is_normal(G, N)
    assert N.contains_raw(x)
