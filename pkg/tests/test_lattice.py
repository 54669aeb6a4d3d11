from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from semiprim.errors import NotPrime
from semiprim.group import PermGroup, direct_product, generated_by, is_normal
from semiprim.lattice import (
    composition_factors,
    conjugacy_classes,
    duality_decomposition,
    is_characteristically_simple,
    maximal_normal_below,
    minimal_normal_subgroups,
    normal_subgroups,
    p_core,
    socle,
    structure_predicates,
)
from semiprim.library import alternating, cyclic, dihedral, elementary_abelian, symmetric

import oracles
from conftest import perm


def test_class_examples():
    assert sorted(conjugacy_classes(alternating(5)).sizes) == [1, 12, 12, 15, 20]
    assert conjugacy_classes(cyclic(6)).sizes == [1] * 6
    assert sorted(conjugacy_classes(symmetric(3)).sizes) == [1, 2, 3]


@pytest.mark.parametrize("G", [alternating(5), symmetric(4), dihedral(7), symmetric(5)])
def test_classes_match_oracle(G):
    elems = [tuple(g) for g in G.raw_elements()]
    expected = sorted(len(c) for c in oracles.conjugacy_classes(elems))
    assert sorted(conjugacy_classes(G).sizes) == expected


def test_normal_subgroup_examples():
    assert normal_subgroups(alternating(5)).orders == [1, 60]
    assert normal_subgroups(dihedral(15)).orders == [1, 3, 5, 15, 30]


def test_lattice_members_are_normal_unions_of_classes():
    G = symmetric(4)
    lat = normal_subgroups(G)
    cls = conjugacy_classes(G)
    for key, N in zip(lat.keys, lat.subgroups):
        assert is_normal(G, N)
        assert sum(cls.sizes[c] for c in key) == N.order()


def test_minimal_normals_and_socle():
    T2 = direct_product(alternating(5), alternating(5))
    assert len(minimal_normal_subgroups(T2)) == 2
    assert socle(T2).order() == 3600
    assert socle(symmetric(4)).order() == 4
    D30 = dihedral(15)
    C15 = generated_by(D30, [perm("(" + " ".join(map(str, range(15))) + ")", 15)])
    assert sorted(M.order() for M in maximal_normal_below(D30, C15)) == [3, 5]


def test_socle_is_join_of_atoms():
    for G in (symmetric(4), dihedral(6), elementary_abelian(2, 3)):
        lat = normal_subgroups(G)
        assert lat.orders[lat.join_all(lat.atoms())] == socle(G).order()


def test_structure_predicates():
    a = structure_predicates(alternating(5))
    assert a["is_perfect"] and not a["is_soluble"]
    assert composition_factors(alternating(5)).factors == ((60, False),)
    s = structure_predicates(symmetric(3))
    assert not s["is_perfect"] and s["is_soluble"]
    assert sorted(o for o, _ in composition_factors(symmetric(3)).factors) == [2, 3]
    assert sorted(o for o, _ in composition_factors(cyclic(15)).factors) == [3, 5]


def test_characteristically_simple():
    assert is_characteristically_simple(elementary_abelian(2, 2))[0]
    assert not is_characteristically_simple(cyclic(6))[0]
    assert is_characteristically_simple(direct_product(alternating(5), alternating(5)))[0]


def test_p_core():
    assert p_core(symmetric(4), 2).order() == 4
    assert p_core(alternating(5), 2).order() == 1
    assert p_core(cyclic(12), 3).order() == 3
    with pytest.raises(NotPrime):
        p_core(cyclic(12), 4)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([symmetric(4), dihedral(6), alternating(4), cyclic(12), elementary_abelian(3, 2)]), st.sampled_from([2, 3, 5]))
def test_p_core_has_p_power_order(G, p):
    o = p_core(G, p).order()
    while o % p == 0:
        o //= p
    assert o == 1


def test_duality_examples():
    D30 = dihedral(15)
    C15 = generated_by(D30, [perm("(" + " ".join(map(str, range(15))) + ")", 15)])
    dec = duality_decomposition(D30, C15, generated_by(D30, []))
    assert len(dec.family) == 2
    assert dec.lattice.orders[dec.S] == 1
    assert sorted(dec.factor_orders()) == [3, 5]
    V = elementary_abelian(2, 2)
    dec = duality_decomposition(V, V, generated_by(V, []))
    assert len(dec.family) == 3 and len(dec.factors) == 2


def test_duality_perfect_t3():
    T3 = direct_product(alternating(5), alternating(5), alternating(5))
    dec = duality_decomposition(T3, T3, generated_by(T3, []))
    assert len(dec.factors) == len(dec.family) == 3
    assert dec.factor_orders() == [60, 60, 60]


@pytest.mark.parametrize("G", [dihedral(6), symmetric(4), elementary_abelian(2, 3), alternating(4)])
def test_lattice_matches_oracle(G):
    elems = [tuple(g) for g in G.raw_elements()]
    expected = Counter(len(N) for N in oracles.normal_subgroups(elems))
    lat = normal_subgroups(G)
    assert Counter(lat.orders) == expected
    # exact match of element sets
    got = {frozenset(tuple(x) for x in N.raw_elements()) for N in lat.subgroups}
    assert got == oracles.normal_subgroups(elems)
