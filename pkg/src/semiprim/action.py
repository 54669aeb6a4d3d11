"""Transitive actions given abstractly as (group, point stabilizer).

The action of ``G`` on the right cosets of ``H`` is never realized unless an
operation needs actual points.  Transitivity and semiregularity of normal
subgroups are read off from orders: a normal ``N`` is transitive iff
``|NH| = |G|`` and semiregular iff ``N meet H = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_CAPS, Caps
from .errors import CapacityExceeded, NormalButTransitive, NotCoreFree
from .group import (
    Homomorphism,
    PermGroup,
    Subgroup,
    core,
    coset_action,
    join,
    trivial_subgroup,
)
from .perm import restrict, to_raw


@dataclass(eq=False)
class TransitiveAction:
    ambient: PermGroup
    stab: Subgroup
    name: str | None = None
    projection: Homomorphism | None = None
    manifest: dict = field(default_factory=dict)

    def __post_init__(self):
        self._nh: dict = {}
        self._realized = None

    @property
    def degree(self) -> int:
        return self.ambient.order() // self.stab.order()

    def order(self) -> int:
        return self.ambient.order()

    def product_order(self, N: PermGroup) -> int:
        """``|N H|`` for a normal subgroup ``N``."""
        key = tuple(N.gens)
        hit = self._nh.get(key)
        if hit is None:
            if N.order() == 1:
                hit = self.stab.order()
            else:
                hit = join(N, self.stab, parent=self.ambient).order()
            self._nh[key] = hit
        return hit

    def meet_order(self, N: PermGroup) -> int:
        """``|N meet H|`` for a normal subgroup ``N``."""
        return N.order() * self.stab.order() // self.product_order(N)

    def is_transitive_normal(self, N: PermGroup) -> bool:
        return self.product_order(N) == self.ambient.order()

    def is_semiregular_normal(self, N: PermGroup) -> bool:
        return self.meet_order(N) == 1

    def realize(self, caps: Caps = DEFAULT_CAPS):
        """``(image group, homomorphism)`` for the action on cosets of the stabilizer."""
        if self._realized is None:
            self._realized = coset_action(self.ambient, self.stab, caps.degree_cap)
        return self._realized

    def __repr__(self) -> str:
        return f"<TransitiveAction {self.name or ''} order={self.order()} degree={self.degree}>"


def make_action(G: PermGroup, stab: PermGroup, caps: Caps = DEFAULT_CAPS, name: str | None = None, check: bool = True) -> TransitiveAction:
    """Wrap ``(G, stab)``, insisting that the coset action is faithful."""
    if not isinstance(stab, Subgroup) or stab.parent is not G:
        stab = Subgroup(G, stab.gens, chain=stab.chain, check=True)
    if check:
        c = core(G, stab, caps)
        if c.order() != 1:
            raise NotCoreFree(c)
    return TransitiveAction(G, stab, name=name)


def action_of_transitive_group(G: PermGroup, point: int = 0, name: str | None = None) -> TransitiveAction:
    """A transitive permutation group as an abstract action via its point stabilizer."""
    return TransitiveAction(G, G.point_stabilizer(point), name=name)


def _restriction_quotient(G: PermGroup, N: PermGroup):
    """Image of ``G`` on the points fixed by ``N``, if that image has order ``|G:N|``."""
    fixed_orbits = []
    for orb in G.orbits():
        if all(g[p] == p for g in N.gens for p in orb):
            fixed_orbits.append(orb)
    pts = [p for orb in fixed_orbits for p in orb]
    if not pts:
        return None
    pos = {p: i for i, p in enumerate(pts)}
    images = [restrict(g, pts, pos) for g in G.gens]
    target = PermGroup(len(pts), images)
    if target.order() * N.order() != G.order():
        return None

    def evaluate(g):
        return restrict(g, pts, pos)

    hom = Homomorphism(G, target, images, check=False, evaluator=evaluate)
    return target, hom


def realize_quotient(G: PermGroup, N: PermGroup, H: PermGroup | None = None, caps: Caps = DEFAULT_CAPS):
    """A faithful permutation realization of ``G/N``: ``(group, projection)``.

    Tried in turn: restriction to the ambient orbits fixed by ``N``; the action
    on cosets of ``NH`` when its core is ``N``; the action on cosets of ``N``.
    """
    if N.order() == 1:
        ident = Homomorphism(G, G, G.gens, check=False, evaluator=lambda g: g)
        return G, ident
    r = _restriction_quotient(G, N)
    if r is not None:
        return r
    if H is not None:
        NH = join(N, H, parent=G)
        index = G.order() // NH.order()
        if index <= caps.degree_cap:
            img, hom = coset_action(G, NH, caps.degree_cap)
            if img.order() * N.order() == G.order():
                return img, hom
    index = G.order() // N.order()
    if index > caps.degree_cap:
        raise CapacityExceeded(index, caps.degree_cap, "quotient realization degree")
    return coset_action(G, Subgroup(G, N.gens, chain=N.chain), caps.degree_cap)


def quotient_action(A: TransitiveAction, N: PermGroup, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """Action of ``G/N`` on the cosets of ``NH`` (the ``N``-orbits)."""
    if N.order() > 1 and A.is_transitive_normal(N):
        raise NormalButTransitive("quotient needs an intransitive normal subgroup")
    G = A.ambient
    img, proj = realize_quotient(G, N, A.stab, caps)
    stab_imgs = [proj.raw_image(h) for h in A.stab.gens]
    new_stab = Subgroup(img, stab_imgs)
    name = f"{A.name}/N" if A.name else None
    Q = TransitiveAction(img, new_stab, name=name, projection=proj)
    return Q


def regular_action(G: PermGroup, name: str | None = None) -> TransitiveAction:
    return TransitiveAction(G, trivial_subgroup(G), name=name)


def compose_projection(outer: Homomorphism | None, inner: Homomorphism):
    """Evaluation function for ``inner`` after ``outer``."""
    if outer is None:
        return inner.raw_image
    return lambda g: inner.raw_image(outer.raw_image(g))


def restricted_images(G: PermGroup, points: list[int]):
    pos = {p: i for i, p in enumerate(points)}
    return [to_raw((pos[g[p]] for p in points), len(points)) for g in G.gens]
