"""Stabilizer chains, checked against sympy as an independent oracle."""

from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SPerm
from sympy.combinatorics import PermutationGroup as SGroup

from semiprim.chain import build_chain
from semiprim.group import PermGroup
from semiprim.library import alternating, dihedral, symmetric
from semiprim.perm import parse_cycles, raw_identity, to_raw


def sympy_order(degree, gens):
    if not gens:
        return 1
    return SGroup([SPerm(list(g)) for g in gens]).order()


def test_alt5_order():
    G = PermGroup(5, [parse_cycles("(0 1 2)", 5).raw, parse_cycles("(2 3 4)", 5).raw])
    assert G.order() == 60


def test_dihedral_order():
    r = parse_cycles("(" + " ".join(map(str, range(15))) + ")", 15).raw
    w = parse_cycles("(1 14)(2 13)(3 12)(4 11)(5 10)(6 9)(7 8)", 15).raw
    assert PermGroup(15, [r, w]).order() == 30


def test_trivial_group():
    assert PermGroup(7, []).order() == 1


def test_chain_self_check():
    for G in (symmetric(6), alternating(7), dihedral(12)):
        ch = G.chain
        assert ch.check()
        prod = 1
        for s in ch.orbit_sizes:
            prod *= s
        assert prod == ch.order()


def test_known_order_mode_agrees():
    G = symmetric(7)
    ch = build_chain(7, G.gens, known_order=5040)
    assert ch.order() == 5040


def test_membership():
    A = alternating(6)
    assert A.contains(parse_cycles("(0 1 2)", 6))
    assert not A.contains(parse_cycles("(0 1)", 6))


gen_lists = st.integers(min_value=2, max_value=9).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=0, max_size=3).map(lambda gs: (n, gs))
)


@settings(max_examples=60, deadline=None)
@given(gen_lists)
def test_order_matches_sympy(data):
    n, gs = data
    gens = [to_raw(g, n) for g in gs]
    G = PermGroup(n, gens)
    assert G.order() == sympy_order(n, gs)
    assert G.chain.check()


@settings(max_examples=40, deadline=None)
@given(gen_lists, st.randoms(use_true_random=False))
def test_membership_matches_sympy(data, rnd):
    n, gs = data
    gens = [to_raw(g, n) for g in gs]
    G = PermGroup(n, gens)
    S = SGroup([SPerm(list(g)) for g in gs]) if gs else SGroup([SPerm(list(range(n)))])
    for _ in range(5):
        images = list(range(n))
        rnd.shuffle(images)
        assert G.contains_raw(to_raw(images, n)) == S.contains(SPerm(images))


def test_random_elements_are_members():
    G = alternating(8)
    rng = random.Random(3)
    for _ in range(20):
        assert G.contains_raw(G.random_raw(rng))
    assert G.contains_raw(raw_identity(8))
