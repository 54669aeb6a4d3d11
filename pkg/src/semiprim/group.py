"""Permutation groups, subgroups and the basic algebra on them.

Groups keep their generators as raw image tables (see :mod:`semiprim.perm`)
and build a stabilizer chain on first use.  Public methods accept either
:class:`Permutation` objects or raw tables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .chain import ChainBuilder, StabChain, build_chain
from .config import DEFAULT_CAPS, Caps
from .errors import (
    CapacityExceeded,
    MismatchedParent,
    NotAHomomorphism,
    NotTransitive,
    PointOutOfRange,
)
from .perm import (
    Permutation,
    apply,
    comm,
    concat,
    conj,
    inv,
    mul,
    raw_identity,
    table,
    to_raw,
)


def as_raw(g, degree: int):
    """Raw image table of ``g`` (a Permutation, raw table or point sequence)."""
    if isinstance(g, Permutation):
        r = g.raw
    elif type(g) is bytes or type(g) is tuple:
        r = g if (type(g) is bytes) == (degree <= 256) else to_raw(g, degree)
    else:
        r = to_raw(g, degree)
    if len(r) != degree:
        raise ValueError(f"permutation of degree {len(r)} given for degree {degree}")
    return r


class PermGroup:
    """A permutation group on ``{0, ..., degree-1}`` given by generators."""

    def __init__(
        self,
        degree: int,
        generators: Iterable = (),
        *,
        order: int | None = None,
        chain: StabChain | None = None,
        name: str | None = None,
    ):
        self.degree = degree
        self.gens = [as_raw(g, degree) for g in generators]
        self.name = name
        self._known_order = order
        self._chain = chain
        self._elements = None

    # construction helpers

    def subgroup(self, generators: Iterable, *, order: int | None = None, check: bool = False) -> "Subgroup":
        return Subgroup(self, generators, order=order, check=check)

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation._wrap(g) for g in self.gens]

    @property
    def identity(self):
        return raw_identity(self.degree)

    # chain and order

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = build_chain(self.degree, self.gens, known_order=self._known_order)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        ident = self.identity
        return all(g == ident for g in self.gens)

    def contains(self, g) -> bool:
        return self.chain.contains(as_raw(g, self.degree))

    __contains__ = contains

    def contains_raw(self, g) -> bool:
        return self.chain.contains(g)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if other.degree != self.degree:
            return False
        return all(other.chain.contains(g) for g in self.gens)

    def equals(self, other: "PermGroup") -> bool:
        """Equal as sets: same order and mutual generator membership."""
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def raw_elements(self, cap: int | None = None) -> list:
        if self._elements is None:
            limit = DEFAULT_CAPS.order_cap if cap is None else cap
            n = self.order()
            if n > limit:
                raise CapacityExceeded(n, limit, "group order")
            self._elements = self.chain.elements()
        return self._elements

    def elements(self, cap: int | None = None) -> list[Permutation]:
        return [Permutation._wrap(x) for x in self.raw_elements(cap)]

    def random_raw(self, rng: random.Random):
        return self.chain.random_element(rng)

    # orbits and stabilizers

    def orbit(self, p: int) -> list[int]:
        if not 0 <= p < self.degree:
            raise PointOutOfRange(p, self.degree)
        seen = {p}
        out = [p]
        for x in out:
            for g in self.gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return out

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        result = []
        for p in range(self.degree):
            if not seen[p]:
                orb = self.orbit(p)
                for x in orb:
                    seen[x] = True
                result.append(sorted(orb))
        return result

    def chain_with_base(self, prefix: Sequence[int]) -> StabChain:
        """A stabilizer chain whose base starts with ``prefix``."""
        return build_chain(self.degree, self.gens, prefix=prefix, known_order=self.order())

    def pointwise_stabilizer(self, points: Sequence[int]) -> "Subgroup":
        for p in points:
            if not 0 <= p < self.degree:
                raise PointOutOfRange(p, self.degree)
        ch = self.chain_with_base(points)
        k = len(points)
        sub = StabChain(self.degree, ch.levels[k:])
        gens = sub.strong_generators(0)
        return Subgroup(self, gens, chain=sub)

    def point_stabilizer(self, p: int) -> "Subgroup":
        return self.pointwise_stabilizer([p])

    def is_transitive(self) -> bool:
        if self.degree == 0:
            return True
        return len(self.orbit(0)) == self.degree

    def is_semiregular(self) -> bool:
        n = self.order()
        return all(len(orb) == n for orb in self.orbits())

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def action_predicates(self) -> dict:
        t = self.is_transitive()
        s = self.is_semiregular()
        return {"is_transitive": t, "is_semiregular": s, "is_regular": t and s}

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.gens)}>"


class Subgroup(PermGroup):
    """A subgroup remembering the group it was taken in."""

    def __init__(
        self,
        parent: PermGroup,
        generators: Iterable = (),
        *,
        order: int | None = None,
        chain: StabChain | None = None,
        check: bool = False,
        name: str | None = None,
    ):
        super().__init__(parent.degree, generators, order=order, chain=chain, name=name)
        self.parent = parent
        if check:
            for g in self.gens:
                if not parent.contains_raw(g):
                    raise MismatchedParent("generator is not a member of the parent group")


def _require_same(G: PermGroup, *subs: PermGroup) -> None:
    for H in subs:
        if H is G or getattr(H, "parent", None) is G:
            continue
        if H.degree != G.degree or not H.is_subgroup_of(G):
            raise MismatchedParent("subgroups must live in the same parent group")


def generated_by(G: PermGroup, elements: Iterable, *, order: int | None = None) -> Subgroup:
    """Subgroup of ``G`` generated by raw ``elements``, keeping only those that are needed."""
    b = ChainBuilder(G.degree)
    gens = []
    for x in elements:
        x = as_raw(x, G.degree)
        if b.add(x):
            gens.append(x)
    return Subgroup(G, gens, chain=b.chain)


def trivial_subgroup(G: PermGroup) -> Subgroup:
    return Subgroup(G, [], order=1)


def whole(G: PermGroup) -> Subgroup:
    return Subgroup(G, G.gens, chain=G.chain)


def join(A: PermGroup, B: PermGroup, *, parent: PermGroup | None = None, order: int | None = None) -> Subgroup:
    P = parent or getattr(A, "parent", None) or A
    if A.degree != B.degree:
        raise MismatchedParent("degrees differ")
    if order is not None:
        return Subgroup(P, list(A.gens) + list(B.gens), order=order)
    b = ChainBuilder(A.degree)
    gens = []
    for x in list(A.gens) + list(B.gens):
        if b.add(x):
            gens.append(x)
    return Subgroup(P, gens, chain=b.chain)


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    for x in N.gens:
        for g in G.gens:
            if not N.contains_raw(conj(x, g, inv(g))):
                return False
    return True


def normal_closure(G: PermGroup, S) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``S`` (a group or element list)."""
    if isinstance(S, PermGroup):
        _require_same(G, S)
        seeds = S.gens
    else:
        seeds = [as_raw(x, G.degree) for x in S]
    b = ChainBuilder(G.degree)
    gens = []
    for x in seeds:
        if b.add(x):
            gens.append(x)
    ginv = [(g, inv(g)) for g in G.gens]
    i = 0
    while i < len(gens):
        x = gens[i]
        for g, gi in ginv:
            y = conj(x, g, gi)
            if b.add(y):
                gens.append(y)
        i += 1
    return Subgroup(G, gens, chain=b.chain)


def commutator(G: PermGroup, A: PermGroup, B: PermGroup) -> Subgroup:
    """``[A, B]`` for subgroups normalized by ``G``: the normal closure of generator commutators."""
    _require_same(G, A, B)
    return normal_closure(G, [comm(a, b) for a in A.gens for b in B.gens])


def derived_subgroup(G: PermGroup) -> Subgroup:
    return normal_closure(G, [comm(a, b) for i, a in enumerate(G.gens) for b in G.gens[i + 1:]])


def intersection(A: PermGroup, B: PermGroup, caps: Caps = DEFAULT_CAPS, *, parent: PermGroup | None = None) -> Subgroup:
    """``A`` meet ``B`` by enumerating the smaller group and filtering."""
    P = parent or getattr(A, "parent", None) or A
    if A.degree != B.degree:
        raise MismatchedParent("degrees differ")
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    if small.is_subgroup_of(big):
        return Subgroup(P, small.gens, chain=small.chain)
    n = small.order()
    if n > caps.order_cap:
        raise CapacityExceeded(n, caps.order_cap, "intersection enumeration")
    elems = (x for x in small.chain.elements() if big.chain.contains(x))
    sub = generated_by(P, elems)
    return sub


def core(G: PermGroup, H: PermGroup, caps: Caps = DEFAULT_CAPS) -> Subgroup:
    """Largest normal subgroup of ``G`` inside ``H``."""
    _require_same(G, H)
    h = H.order()
    if h == 1:
        return trivial_subgroup(G)
    if is_normal(G, H):
        return Subgroup(G, H.gens, chain=H.chain)
    if h <= caps.order_cap and h <= 100_000:
        ginv = [(g, inv(g)) for g in G.gens]
        current = set(H.chain.elements())
        while True:
            keep = {x for x in current if all(conj(x, g, gi) in current for g, gi in ginv)}
            if len(keep) == len(current):
                break
            current = keep
        ident = G.identity
        ordered = sorted(current)
        return generated_by(G, (x for x in ordered if x != ident))
    index = G.order() // h
    if index <= caps.degree_cap:
        _, hom = coset_action(G, H, caps.degree_cap)
        return hom.kernel()
    raise CapacityExceeded(min(h, index), caps.degree_cap, "core computation")


# Cosets


class CosetSpace:
    """Right cosets of ``H`` in ``G``, indexed by canonical representatives."""

    def __init__(self, G: PermGroup, H: PermGroup, degree_cap: int):
        self.G = G
        self.H = H
        index = G.order() // H.order()
        if index > degree_cap:
            raise CapacityExceeded(index, degree_cap, "coset action degree")
        self.index_size = index
        self._levels = [
            (lv.orbit, lv.trans, lv.point) for lv in H.chain.levels if len(lv.orbit) > 1
        ]
        start = self.canonical(G.identity)
        self.reps = [start]
        self.position = {start: 0}
        self.gen_images = [[0] * index for _ in G.gens]
        tabs = [table(g) for g in G.gens]
        i = 0
        while i < len(self.reps):
            r = self.reps[i]
            for gi, t in enumerate(tabs):
                k = self.canonical(apply(r, t))
                j = self.position.get(k)
                if j is None:
                    j = len(self.reps)
                    self.reps.append(k)
                    self.position[k] = j
                self.gen_images[gi][i] = j
            i += 1
        assert len(self.reps) == index

    def canonical(self, g):
        """The distinguished element of the coset ``H g``."""
        for orbit, trans, point in self._levels:
            best = min(orbit, key=g.__getitem__)
            if best != point:
                g = apply(trans[best], table(g))
        return g

    def point_of(self, g) -> int:
        return self.position[self.canonical(g)]

    def act(self, g):
        """Raw permutation induced by ``g`` on the cosets."""
        t = table(g)
        return to_raw((self.position[self.canonical(apply(r, t))] for r in self.reps), self.index_size)


def coset_action(G: PermGroup, H: PermGroup, degree_cap: int = DEFAULT_CAPS.degree_cap):
    """Action of ``G`` on right cosets of ``H``: ``(image group, homomorphism)``."""
    _require_same(G, H)
    space = CosetSpace(G, H, degree_cap)
    m = space.index_size
    images = [to_raw(row, m) for row in space.gen_images]
    image = PermGroup(m, images)
    image.coset_space = space
    hom = Homomorphism(G, image, images, check=False, evaluator=space.act)
    return image, hom


# Blocks


@dataclass(frozen=True)
class BlockSystem:
    degree: int
    block_id: tuple[int, ...]
    block_count: int

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.block_count)]
        for p, b in enumerate(self.block_id):
            out[b].append(p)
        return out

    def is_trivial(self) -> bool:
        return self.block_count in (1, self.degree)


def minimal_blocks(G: PermGroup, alpha: int, beta: int) -> BlockSystem:
    """Finest block system of transitive ``G`` with ``alpha`` and ``beta`` in one block."""
    n = G.degree
    for p in (alpha, beta):
        if not 0 <= p < n:
            raise PointOutOfRange(p, n)
    if not G.is_transitive():
        raise NotTransitive("minimal_blocks needs a transitive group")
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = []

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
            queue.append((a, b))

    union(alpha, beta)
    i = 0
    while i < len(queue):
        a, b = queue[i]
        for g in G.gens:
            union(g[a], g[b])
        i += 1
    labels: dict[int, int] = {}
    ids = []
    for p in range(n):
        r = find(p)
        if r not in labels:
            labels[r] = len(labels)
        ids.append(labels[r])
    return BlockSystem(n, tuple(ids), len(labels))


def is_primitive(G: PermGroup) -> bool:
    n = G.degree
    if not G.is_transitive():
        raise NotTransitive("primitivity needs a transitive group")
    if n <= 2:
        return True
    stab = G.point_stabilizer(0)
    seen = {0}
    for p in range(1, n):
        if p in seen:
            continue
        for q in stab.orbit(p):
            seen.add(q)
        if minimal_blocks(G, 0, p).block_count != 1:
            return False
    return True


def some_block_system(G: PermGroup) -> BlockSystem | None:
    """A non-trivial block system of transitive ``G``, or None if primitive."""
    n = G.degree
    if n <= 2:
        return None
    stab = G.point_stabilizer(0)
    seen = {0}
    for p in range(1, n):
        if p in seen:
            continue
        seen.update(stab.orbit(p))
        bs = minimal_blocks(G, 0, p)
        if bs.block_count != 1:
            return bs
    return None


# Homomorphisms


class Homomorphism:
    """Map of groups fixed by the images of the source generators."""

    def __init__(
        self,
        source: PermGroup,
        target: PermGroup,
        images: Sequence,
        *,
        check: bool = True,
        evaluator: Callable | None = None,
    ):
        if len(images) != len(source.gens):
            raise NotAHomomorphism("need one image per source generator")
        self.source = source
        self.target = target
        self.images = [as_raw(x, target.degree) for x in images]
        self._evaluator = evaluator
        self._eval_chain = None
        self._kernel = None
        self._image = None
        if check:
            for x in self.images:
                if not target.contains_raw(x):
                    raise NotAHomomorphism("image outside the target group")
            # basing the check on the smaller side keeps transversals short
            target_first = target.degree < source.degree
            prefix = [source.degree + b for b in target.chain.base] if target_first else source.chain.base
            graph = build_chain(source.degree + target.degree, self._graph_gens(), prefix=prefix)
            if graph.order() != source.order():
                raise NotAHomomorphism(
                    f"relations not preserved: graph order {graph.order()} != {source.order()}"
                )
            if not target_first:
                self._eval_chain = graph

    def _graph_gens(self):
        return [concat(g, x) for g, x in zip(self.source.gens, self.images)]

    def _evaluation_chain(self):
        if self._eval_chain is None:
            self._eval_chain = build_chain(
                self.source.degree + self.target.degree,
                self._graph_gens(),
                prefix=self.source.chain.base,
                known_order=self.source.order(),
            )
        return self._eval_chain

    def raw_image(self, g):
        g = as_raw(g, self.source.degree)
        if self._evaluator is not None:
            return self._evaluator(g)
        n1 = self.source.degree
        ch = self._evaluation_chain()
        depth = len(self.source.chain.base)
        x = concat(g, raw_identity(self.target.degree))
        res, lvl = ch.sift(x)
        if lvl < depth or any(res[i] != i for i in range(n1)):
            raise ValueError("element is not in the source group")
        part = to_raw((p - n1 for p in res[n1:]), self.target.degree)
        return inv(part)

    def __call__(self, g) -> Permutation:
        return Permutation._wrap(self.raw_image(g))

    def image(self) -> Subgroup:
        if self._image is None:
            self._image = Subgroup(self.target, self.images)
        return self._image

    def kernel(self) -> Subgroup:
        if self._kernel is None:
            n1 = self.source.degree
            img = self.image()
            prefix = [n1 + b for b in img.chain.base]
            graph = build_chain(
                n1 + self.target.degree,
                self._graph_gens(),
                prefix=prefix,
                known_order=self.source.order(),
            )
            k = len(prefix)
            gens = [to_raw(h[:n1], n1) for h in graph.strong_generators(k)]
            order = self.source.order() // img.order()
            self._kernel = Subgroup(self.source, gens, order=order)
        return self._kernel

    def is_injective(self) -> bool:
        return self.image().order() == self.source.order()

    def is_surjective(self) -> bool:
        return self.image().order() == self.target.order()


def hom_from_images(source: PermGroup, target: PermGroup, images: Sequence) -> Homomorphism:
    return Homomorphism(source, target, images, check=True)


def centralizer_of_transitive(G: PermGroup, K: PermGroup) -> Subgroup:
    """``C_G(K)`` for ``K`` transitive on the points, built from fixed points of ``K_0``."""
    n = K.degree
    if not K.is_transitive():
        raise NotTransitive("K must be transitive")
    stab = K.point_stabilizer(0)
    fixed = [d for d in range(n) if all(s[d] == d for s in stab.gens)]
    # Schreier tree of K from 0
    parent_edge: list[tuple[int, int] | None] = [None] * n
    order = [0]
    seen = {0}
    for p in order:
        for gi, g in enumerate(K.gens):
            q = g[p]
            if q not in seen:
                seen.add(q)
                parent_edge[q] = (p, gi)
                order.append(q)
    found = []
    for d in fixed:
        img = [-1] * n
        img[0] = d
        for q in order[1:]:
            p, gi = parent_edge[q]
            img[q] = K.gens[gi][img[p]]
        if len(set(img)) != n:
            continue
        c = to_raw(img, n)
        if all(mul(c, g) == mul(g, c) for g in K.gens) and G.contains_raw(c):
            found.append(c)
    cent = generated_by(G, found)
    assert cent.is_semiregular()
    return cent


def direct_product(*groups: PermGroup, name: str | None = None) -> PermGroup:
    """Direct product acting on the disjoint union of the factors' points."""
    n = sum(g.degree for g in groups)
    gens = []
    off = 0
    for g in groups:
        for x in g.gens:
            images = list(range(n))
            for i, y in enumerate(x):
                images[off + i] = off + y
            gens.append(to_raw(images, n))
        off += g.degree
    order = 1
    for g in groups:
        order *= g.order()
    return PermGroup(n, gens, order=order, name=name)
