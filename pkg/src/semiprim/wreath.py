"""Finite wreath products ``M wr T`` in product and imprimitive action."""

from __future__ import annotations

from dataclasses import dataclass

from .action import TransitiveAction, action_of_transitive_group
from .analysis import sp_predicates
from .config import DEFAULT_CAPS, Caps
from .errors import CapacityExceeded, NotTransitive
from .group import Homomorphism, PermGroup, Subgroup
from .lattice import is_perfect
from .perm import restrict, to_raw


@dataclass
class WreathSpec:
    M: TransitiveAction
    T: PermGroup
    mode: str = "product"

    def __post_init__(self):
        if self.mode not in ("product", "imprimitive"):
            raise ValueError(f"unknown wreath mode {self.mode!r}")
        if self.T.degree < 1:
            raise ValueError("index set must be non-empty")


def _copy_gen(g, copy: int, n: int, m: int):
    images = list(range(n * m))
    off = copy * n
    for x, y in enumerate(g):
        images[off + x] = off + y
    return to_raw(images, n * m)


def _top_gen(t, n: int, m: int):
    images = [0] * (n * m)
    for i in range(m):
        for x in range(n):
            images[i * n + x] = t[i] * n + x
    return to_raw(images, n * m)


def _base_order(spec: WreathSpec) -> int:
    return spec.M.order() ** spec.T.degree


def wreath_abstract(spec: WreathSpec) -> TransitiveAction:
    """The wreath action given by its stabilizer inside the imprimitive realization on ambient copies."""
    M, T = spec.M, spec.T
    n, m = M.ambient.degree, T.degree
    base = [_copy_gen(g, i, n, m) for i in range(m) for g in M.ambient.gens]
    top = [_top_gen(t, n, m) for t in T.gens]
    order = _base_order(spec) * T.order()
    G = PermGroup(n * m, base + top, order=order, name="wreath")
    if spec.mode == "product":
        sgens = [_copy_gen(h, i, n, m) for i in range(m) for h in M.stab.gens] + top
        sorder = M.stab.order() ** m * T.order()
    else:
        if not T.is_transitive():
            raise NotTransitive("imprimitive wreath action needs a transitive top group")
        t0 = T.point_stabilizer(0)
        sgens = [_copy_gen(h, 0, n, m) for h in M.stab.gens]
        sgens += [_copy_gen(g, i, n, m) for i in range(1, m) for g in M.ambient.gens]
        sgens += [_top_gen(t, n, m) for t in t0.gens]
        sorder = M.stab.order() * M.order() ** (m - 1) * t0.order()
    stab = Subgroup(G, sgens, order=sorder)
    return TransitiveAction(G, stab, name=f"wreath-{spec.mode}")


def wreath_build(spec: WreathSpec, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """The wreath product realized on ``Delta^I`` (product) or ``Delta x I`` (imprimitive)."""
    M, T = spec.M, spec.T
    d, m = M.degree, T.degree
    if spec.mode == "product":
        degree = d ** m
        if degree > caps.degree_cap:
            raise CapacityExceeded(degree, caps.degree_cap, "product action degree")
        img, _ = M.realize(caps)
        gens = []
        for i in range(m):
            step = d ** i
            for g in img.gens:
                images = []
                for v in range(degree):
                    c = (v // step) % d
                    images.append(v + (g[c] - c) * step)
                gens.append(to_raw(images, degree))
        for t in T.gens:
            images = []
            for v in range(degree):
                w = 0
                for i in range(m):
                    c = (v // d ** i) % d
                    w += c * d ** t[i]
                images.append(w)
            gens.append(to_raw(images, degree))
        order = _base_order(spec) * T.order()
        G = PermGroup(degree, gens, order=order, name="wreath-product")
        return _attach(spec, G)
    degree = d * m
    if degree > caps.degree_cap:
        raise CapacityExceeded(degree, caps.degree_cap, "imprimitive action degree")
    if not T.is_transitive():
        raise NotTransitive("imprimitive wreath action needs a transitive top group")
    img, _ = M.realize(caps)
    gens = [_copy_gen(g, i, d, m) for i in range(m) for g in img.gens]
    gens += [_top_gen(t, d, m) for t in T.gens]
    G = PermGroup(degree, gens, order=_base_order(spec) * T.order(), name="wreath-imprimitive")
    return _attach(spec, G)


def _attach(spec: WreathSpec, realized: PermGroup) -> TransitiveAction:
    """Abstract action on the small ambient, carrying the realized group as its point action.

    Generators of both groups are listed in the same order, and point 0 of the
    realization is the coset of the designated stabilizer.
    """
    A = wreath_abstract(spec)
    hom = Homomorphism(A.ambient, realized, realized.gens, check=False)
    A._realized = (realized, hom)
    A.name = realized.name
    return A


def faithful_on_each_orbit(T: PermGroup) -> bool:
    for orb in T.orbits():
        pos = {p: i for i, p in enumerate(orb)}
        images = [restrict(t, orb, pos) for t in T.gens]
        if PermGroup(len(orb), images).order() != T.order():
            return False
    return True


def wreath_sp_criterion(spec: WreathSpec, caps: Caps = DEFAULT_CAPS) -> bool:
    """Whether the product-action wreath product is semiprimitive, read off from ``M`` and ``T``."""
    M, T = spec.M, spec.T
    regular = M.stab.order() == 1
    if regular:
        return is_perfect(M.ambient) and faithful_on_each_orbit(T)
    return sp_predicates(M, caps).is_semiprimitive and T.is_transitive()


def wreath_direct_test(spec: WreathSpec, caps: Caps = DEFAULT_CAPS, realize_limit: int = 10_000) -> bool:
    """Semiprimitivity of the built product action, realized when the degree allows."""
    d, m = spec.M.degree, spec.T.degree
    if d ** m <= realize_limit:
        A = wreath_build(spec, caps)
        img, _ = A.realize(caps)
        assert img.is_transitive() and img.degree == A.degree
    else:
        A = wreath_abstract(spec)
    return sp_predicates(A, caps).is_semiprimitive
