from __future__ import annotations

import random

import pytest

from semiprim import corpus
from semiprim.errors import BadModule, CapacityExceeded, NotApplicable
from semiprim.lattice import normal_subgroups
from semiprim.library import alternating, symmetric
from semiprim.perm import mul


@pytest.fixture(scope="module")
def noniso():
    return corpus.nonisoplinth()


def test_nonisoplinth_law_is_associative(noniso):
    X = noniso.group_law
    rng = random.Random(0)
    T = X.T.raw_elements()
    sample = [(tuple(rng.randrange(X.p) for _ in range(X.dim)), rng.choice(T), rng.choice(T)) for _ in range(3000)]
    triples = [sample[3 * i: 3 * i + 3] for i in range(1000)]
    basis = [tuple(int(i == j) for j in range(X.dim)) for i in range(X.dim)]
    gens = [(e, X.one, X.one) for e in basis] + [(X.zero, g, X.one) for g in X.T.gens] + [(X.zero, X.one, g) for g in X.T.gens]
    triples += [[a, b, c] for a in gens for b in gens for c in gens]
    for x, y, z in triples:
        assert X.mul(X.mul(x, y), z) == X.mul(x, X.mul(y, z))


def test_nonisoplinth_identity_and_realization(noniso):
    X = noniso.group_law
    e = X.identity()
    rng = random.Random(1)
    T = X.T.raw_elements()
    for _ in range(200):
        x = (tuple(rng.randrange(X.p) for _ in range(X.dim)), rng.choice(T), rng.choice(T))
        y = (tuple(rng.randrange(X.p) for _ in range(X.dim)), rng.choice(T), rng.choice(T))
        assert X.mul(e, x) == x == X.mul(x, e)
        # the point realization is a homomorphism (right action: x first)
        assert noniso.element_perm(X.mul(x, y)) == mul(noniso.element_perm(x), noniso.element_perm(y))


def test_nonisoplinth_shape(noniso):
    assert noniso.order() == 57600 and noniso.degree == 960
    assert noniso.ambient.degree == 21


def test_reducible_module_rejected():
    T = alternating(5)
    # the full permutation module fixes the all-ones vector
    mats = [[tuple(int(g[i] == j) for j in range(5)) for i in range(5)] for g in T.gens]
    with pytest.raises(BadModule):
        corpus.nonisoplinth(T, (2, 5, mats))


def test_deleted_module_needs_coprime_characteristic():
    with pytest.raises(BadModule):
        corpus.deleted_module(alternating(5), 5)


def test_centerfree_perfect_needs_perfect():
    with pytest.raises(NotApplicable):
        corpus.centerfree_perfect(symmetric(4))


def test_asq_example():
    A = corpus.asq_with_semiregular()
    assert (A.order(), A.degree) == (120, 30)


def test_many_plinths_shape():
    A = corpus.many_plinths(alternating(5), 3)
    assert (A.order(), A.degree) == (216000, 3600)


def test_corpus_tags():
    names = [e.name for e in corpus.CORPUS]
    assert len(names) == len(set(names))
    assert {e.name for e in corpus.corpus_entries("negative")} == {"neg_d8", "neg_sym4_on_6", "neg_alt4_on_6", "neg_c2_wr_c2"}
    assert corpus.corpus_entries() == corpus.CORPUS


@pytest.mark.parametrize("name", [e.name for e in corpus.corpus_entries("small")] + [e.name for e in corpus.corpus_entries("capacity")])
def test_manifest(name):
    A = next(e for e in corpus.CORPUS if e.name == name).build()
    failed = [r for r in corpus.run_manifest(A) if not r.passed]
    assert not failed, failed


def test_capacity_entries_refuse_lattice():
    A = corpus.sec6_family("eg6.2")
    with pytest.raises(CapacityExceeded):
        normal_subgroups(A.ambient)
