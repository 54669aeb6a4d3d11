"""Glued products of semiprimitive actions, realized as fiber products.

Given actions of ``G1 = K1 H1`` and ``G2 = K2 H2`` and an isomorphism
``mu: H1 -> H2`` carrying ``K1 meet H1`` onto ``K2 meet H2``, the glued
product is generated by ``K1 x 1``, ``1 x K2`` and the pairs ``(h, mu(h))``.
It acts faithfully on the disjoint union of the two ambient point sets and
its designated stabilizer is ``{(h, mu(h))}``.
"""

from __future__ import annotations

from .action import TransitiveAction, make_action, quotient_action
from .analysis import plinth_report
from .chain import build_chain
from .config import DEFAULT_CAPS, Caps
from .errors import IncompatibleIsomorphism, NotADirectDecomposition, NotAHomomorphism
from .group import (
    Homomorphism,
    PermGroup,
    Subgroup,
    as_raw,
    intersection,
    is_normal,
    join,
)
from .iso import find_isomorphism, is_perm_isomorphic
from .lattice import as_group
from .perm import concat, raw_identity


def _default_plinth(A: TransitiveAction, caps: Caps) -> Subgroup:
    return plinth_report(A, caps).plinths[0]


def check_mu(A1: TransitiveAction, A2: TransitiveAction, mu, K1: PermGroup, K2: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Verify that ``mu`` (images of ``A1.stab`` generators) is a compatible isomorphism."""
    H1, H2 = A1.stab, A2.stab
    images = [as_raw(x, A2.ambient.degree) for x in mu]
    if H1.order() != H2.order():
        raise IncompatibleIsomorphism(f"stabilizer orders {H1.order()} and {H2.order()} differ")
    try:
        hom = Homomorphism(as_group(H1), as_group(H2), images, check=True)
    except NotAHomomorphism as e:
        raise IncompatibleIsomorphism(f"mu is not a homomorphism: {e}") from None
    if not hom.is_surjective():
        raise IncompatibleIsomorphism("mu is not onto the second stabilizer")
    L1 = intersection(K1, H1, caps, parent=A1.ambient)
    L2 = intersection(K2, H2, caps, parent=A2.ambient)
    if L1.order() != L2.order() or not all(L2.contains_raw(hom.raw_image(x)) for x in L1.gens):
        raise IncompatibleIsomorphism("mu does not carry K1 meet H1 onto K2 meet H2")
    return hom, L1, L2


def glue_actions(
    A1: TransitiveAction,
    A2: TransitiveAction,
    mu,
    K1: PermGroup | None = None,
    K2: PermGroup | None = None,
    caps: Caps = DEFAULT_CAPS,
    with_plinth: bool = False,
):
    """The glued product of ``A1`` and ``A2`` along ``mu``.

    ``mu`` lists the images in ``A2.stab`` of the generators of ``A1.stab``.
    The plinths default to the first plinth of each action.
    """
    if K1 is None:
        K1 = _default_plinth(A1, caps)
    if K2 is None:
        K2 = _default_plinth(A2, caps)
    hom, L1, _ = check_mu(A1, A2, mu, K1, K2, caps)
    n1, n2 = A1.ambient.degree, A2.ambient.degree
    id1, id2 = raw_identity(n1), raw_identity(n2)
    k_gens = [concat(k, id2) for k in K1.gens] + [concat(id1, k) for k in K2.gens]
    d_gens = [concat(h, y) for h, y in zip(A1.stab.gens, hom.images)]
    order = K1.order() * K2.order() * A1.stab.order() // L1.order()
    G = PermGroup(n1 + n2, k_gens + d_gens, name="glued")
    assert G.order() == order, (G.order(), order)
    stab = Subgroup(G, d_gens, order=A1.stab.order())
    name = f"{A1.name or 'A1'} * {A2.name or 'A2'}"
    A = make_action(G, stab, caps, name=name)
    if with_plinth:
        return A, Subgroup(G, k_gens)
    return A


def find_glue_mu(
    A1: TransitiveAction,
    A2: TransitiveAction,
    K1: PermGroup | None = None,
    K2: PermGroup | None = None,
    caps: Caps = DEFAULT_CAPS,
    effort_cap: int | None = None,
):
    """Images of ``A1.stab`` generators defining a compatible ``mu``, or None."""
    if K1 is None:
        K1 = _default_plinth(A1, caps)
    if K2 is None:
        K2 = _default_plinth(A2, caps)
    H1, H2 = A1.stab, A2.stab
    if H1.order() != H2.order():
        return None
    L1 = intersection(K1, H1, caps, parent=A1.ambient)
    L2 = intersection(K2, H2, caps, parent=A2.ambient)
    if L1.order() != L2.order():
        return None
    cap = caps.effort_cap if effort_cap is None else effort_cap
    g1, g2 = as_group(H1), as_group(H2)
    hom = find_isomorphism(g1, g2, Subgroup(g1, L1.gens), Subgroup(g2, L2.gens), cap)
    if hom is None:
        return None
    return list(hom.images)


def decompose_glued(A: TransitiveAction, K1: PermGroup, K2: PermGroup, caps: Caps = DEFAULT_CAPS, effort_cap: int | None = None):
    """Split ``A`` along a normal decomposition ``K1 x K2`` of a plinth into two quotient actions."""
    G = A.ambient
    if K1.order() == 1 or K2.order() == 1:
        raise NotADirectDecomposition("both factors must be non-trivial")
    if not (is_normal(G, K1) and is_normal(G, K2)):
        raise NotADirectDecomposition("factors must be normal")
    K = join(K1, K2, parent=G)
    if K.order() != K1.order() * K2.order():
        raise NotADirectDecomposition("factors intersect non-trivially")
    if not A.is_transitive_normal(K):
        raise NotADirectDecomposition("K1 K2 is not transitive")
    if A.is_transitive_normal(K1) or A.is_transitive_normal(K2):
        # a factor of a plinth is intransitive; a transitive factor would give a one-point quotient
        raise NotADirectDecomposition("each factor must be intransitive")
    A1 = quotient_action(A, K2, caps)
    A2 = quotient_action(A, K1, caps)
    P1 = Subgroup(A1.ambient, [A1.projection.raw_image(g) for g in K1.gens])
    P2 = Subgroup(A2.ambient, [A2.projection.raw_image(g) for g in K2.gens])
    glued = glue_actions(A1, A2, list(A2.stab.gens), P1, P2, caps)
    witness = is_perm_isomorphic(A, glued, effort_cap, caps)
    return A1, A2, witness
