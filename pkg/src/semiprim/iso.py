"""Isomorphism search for groups and for transitive actions.

Two coset actions of ``G1`` on ``[G1:H1]`` and ``G2`` on ``[G2:H2]`` are
permutationally isomorphic iff some group isomorphism carries ``H1`` onto a
conjugate of ``H2``; composing with an inner automorphism we may ask for
``H1`` to land exactly on ``H2``.  The search picks images for a short
generating sequence (generators of ``H1`` first, then elements completing it
to ``G1``) and prunes by element orders, conjugacy class sizes, orders of
short words and orders of the partial subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain import ChainBuilder, build_chain
from .config import DEFAULT_CAPS, Caps
from .errors import CapacityExceeded, NotAHomomorphism
from .group import Homomorphism, PermGroup, derived_subgroup
from .lattice import _conjugator, class_size_multiset
from .perm import comm, inv, mul, order_of


@dataclass
class IsoResult:
    status: str
    witness: Homomorphism | None = None
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.status == "proven_yes"


class _ClassData:
    """Element list of a small group with class sizes and lookup."""

    def __init__(self, G: PermGroup):
        self.elements = G.chain.elements()
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.class_of = [-1] * len(self.elements)
        self.sizes: list[int] = []
        conjs = [_conjugator(g) for g in G.gens]
        for i, x in enumerate(self.elements):
            if self.class_of[i] >= 0:
                continue
            c = len(self.sizes)
            self.class_of[i] = c
            frontier = [x]
            for y in frontier:
                for f in conjs:
                    z = f(y)
                    j = self.index[z]
                    if self.class_of[j] < 0:
                        self.class_of[j] = c
                        frontier.append(z)
            self.sizes.append(len(frontier))
        self.orders = [order_of(x) for x in self.elements]

    def invariant(self, i: int) -> tuple[int, int]:
        return self.orders[i], self.sizes[self.class_of[i]]


def _class_size(G: PermGroup, x) -> int:
    conjs = [_conjugator(g) for g in G.gens]
    seen = {x}
    frontier = [x]
    for y in frontier:
        for f in conjs:
            z = f(y)
            if z not in seen:
                seen.add(z)
                frontier.append(z)
    return len(frontier)


def _short_generating_set(G: PermGroup, pool) -> list:
    b = ChainBuilder(G.degree)
    out = []
    for x in pool:
        if b.add(x):
            out.append(x)
    return out


def _conjugation_orbit_reps(cands: list, group_gens: list) -> list:
    """One candidate per orbit of conjugation by ``group_gens`` inside ``cands``."""
    if not group_gens:
        return cands
    conjs = [_conjugator(g) for g in group_gens]
    cand_set = set(cands)
    seen = set()
    reps = []
    for y in cands:
        if y in seen:
            continue
        reps.append(y)
        seen.add(y)
        frontier = [y]
        for z in frontier:
            for f in conjs:
                w = f(z)
                if w not in seen and w in cand_set:
                    seen.add(w)
                    frontier.append(w)
    return reps


def _words(a, b):
    return (mul(a, b), mul(a, inv(b)), mul(mul(a, a), b), comm(a, b))


def find_isomorphism(
    G1: PermGroup,
    G2: PermGroup,
    H1: PermGroup | None = None,
    H2: PermGroup | None = None,
    effort_cap: int = DEFAULT_CAPS.effort_cap,
) -> Homomorphism | None:
    """An isomorphism ``G1 -> G2`` mapping ``H1`` onto ``H2``, or None if none exists."""
    n = G1.order()
    if n != G2.order():
        return None
    if n > effort_cap:
        raise CapacityExceeded(n, effort_cap, "isomorphism search group order")
    if H1 is not None and H2 is not None and H1.order() != H2.order():
        return None
    if n == 1:
        return Homomorphism(G1, G2, [G2.identity] * len(G1.gens), check=False)
    d2 = _ClassData(G2)
    inv_count: dict = {}
    for i in range(len(d2.elements)):
        inv_count.setdefault(d2.invariant(i), []).append(i)
    # invariants must match as multisets
    d1 = _ClassData(G1)
    c1: dict = {}
    for i in range(len(d1.elements)):
        k = d1.invariant(i)
        c1[k] = c1.get(k, 0) + 1
    if {k: len(v) for k, v in inv_count.items()} != c1:
        return None

    h_part = []
    if H1 is not None and H1.order() > 1:
        h_part = _short_generating_set(G1, H1.gens)
        if not h_part:
            h_part = []
    # complete to a generating sequence of G1, preferring rare invariants
    b = ChainBuilder(G1.degree)
    for x in h_part:
        b.add(x)
    extras = []
    by_rarity = sorted(
        range(len(d1.elements)),
        key=lambda i: (len(inv_count[d1.invariant(i)]), -d1.orders[i], i),
    )
    for i in by_rarity:
        if b.order() == n:
            break
        x = d1.elements[i]
        if b.add(x):
            extras.append(x)
    seq = h_part + extras
    n_h = len(h_part)

    h2_set = None
    if H2 is not None and n_h:
        h2_set = set(H2.chain.elements())

    def candidates(pos: int) -> list:
        x = seq[pos]
        key = (order_of(x), _class_size(G1, x))
        cands = [d2.elements[i] for i in inv_count.get(key, [])]
        if pos < n_h:
            cands = [y for y in cands if y in h2_set]
        return cands

    cand_lists = [candidates(p) for p in range(len(seq))]
    if any(not c for c in cand_lists):
        return None
    # the answer is stable under conjugation by the normalizer of H2, which contains H2
    if n_h:
        cand_lists[0] = _conjugation_orbit_reps(cand_lists[0], H2.gens)
    else:
        cand_lists[0] = _conjugation_orbit_reps(cand_lists[0], G2.gens)
    # centralizer order first = largest class first
    for p in range(len(seq)):
        cand_lists[p].sort(key=lambda y: (-d2.sizes[d2.class_of[d2.index[y]]], y))

    word_orders = [
        [tuple(order_of(w) for w in _words(seq[j], seq[i])) for i in range(j)] for j in range(len(seq))
    ]
    prefix_orders = [build_chain(G1.degree, seq[: j + 1]).order() for j in range(len(seq))]
    chosen: list = []

    def consistent(j: int, y) -> bool:
        for i in range(j):
            if tuple(order_of(w) for w in _words(y, chosen[i])) != word_orders[j][i]:
                return False
        if j > 0 and build_chain(G2.degree, chosen + [y], known_order=None).order() != prefix_orders[j]:
            return False
        return True

    seq_group = PermGroup(G1.degree, seq, chain=G1.chain)

    def finish():
        try:
            hom = Homomorphism(seq_group, G2, list(chosen), check=True)
        except NotAHomomorphism:
            return None
        if not hom.is_surjective():
            return None
        return hom

    def search(j: int):
        if j == len(seq):
            return finish()
        for y in cand_lists[j]:
            if y in chosen:
                continue
            if not consistent(j, y):
                continue
            chosen.append(y)
            r = search(j + 1)
            if r is not None:
                return r
            chosen.pop()
        return None

    found = search(0)
    if found is None:
        return None
    images = [found.raw_image(g) for g in G1.gens]
    return Homomorphism(G1, G2, images, check=False)


def certificate(A, caps: Caps = DEFAULT_CAPS) -> tuple:
    """Invariants of a transitive action that any permutational isomorphism preserves."""
    G = A.ambient
    n = G.order()
    classes = class_size_multiset(G, caps) if n <= caps.order_cap else None
    series = []
    cur = G
    while True:
        series.append(cur.order())
        nxt = derived_subgroup(cur)
        if nxt.order() == cur.order():
            break
        cur = nxt
    return (n, A.degree, A.stab.order(), classes, tuple(series))


def is_perm_isomorphic(A, B, effort_cap: int | None = None, caps: Caps = DEFAULT_CAPS) -> IsoResult:
    cap = caps.effort_cap if effort_cap is None else effort_cap
    if A.degree != B.degree:
        return IsoResult("proven_no", reason="degrees differ")
    if A.order() != B.order():
        return IsoResult("proven_no", reason="orders differ")
    if A.order() > cap:
        try:
            ca, cb = certificate(A, caps), certificate(B, caps)
        except CapacityExceeded:
            return IsoResult("capacity", reason="certificates exceed caps")
        if ca != cb:
            return IsoResult("proven_no", reason="certificates differ")
        return IsoResult("consistent", reason="certificates agree; search above effort cap")
    hom = find_isomorphism(A.ambient, B.ambient, A.stab, B.stab, cap)
    if hom is None:
        return IsoResult("proven_no", reason="search exhausted")
    return IsoResult("proven_yes", witness=hom)
