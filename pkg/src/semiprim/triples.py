"""Semiprimitive triples ``(K, H, L)``: validation, construction, extraction and products.

``K`` is held as an explicit element table.  Automorphisms of ``K`` are
permutations of the table indices, so a group ``H`` of automorphisms is a
plain :class:`PermGroup` on ``|K|`` points.  Since an automorphism is fixed by
what it does to the generators of ``K``, ``H`` also acts faithfully on the
union of the ``H``-orbits of the generator indices; that much smaller
restricted copy is used for membership tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .action import TransitiveAction, action_of_transitive_group
from .config import DEFAULT_CAPS, Caps
from .errors import CapacityExceeded, IncompatibleIsomorphism, InvalidTriple, NotAHomomorphism, NotAnAutomorphism
from .group import (
    CosetSpace,
    Homomorphism,
    PermGroup,
    Subgroup,
    as_raw,
    core,
    coset_action,
    generated_by,
    intersection,
    join,
    trivial_subgroup,
)
from .iso import find_isomorphism
from .lattice import as_group, is_perfect, normal_subgroups
from .perm import apply, concat, inv, mul, order_of, table, to_raw


class GroupWithElements:
    """A group together with an indexed table of all its elements (identity first)."""

    def __init__(self, group: PermGroup, caps: Caps = DEFAULT_CAPS):
        n = group.order()
        if n > caps.element_cap:
            raise CapacityExceeded(n, caps.element_cap, "element table size")
        self.group = as_group(group)
        self.elements = self.group.chain.elements()
        self.index = {x: i for i, x in enumerate(self.elements)}
        assert self.elements[0] == self.group.identity

    def __len__(self) -> int:
        return len(self.elements)

    def idx(self, x) -> int:
        return self.index[as_raw(x, self.group.degree)]

    def right_mult(self, g):
        """Index permutation ``x -> x g``."""
        t = table(g)
        return to_raw((self.index[apply(x, t)] for x in self.elements), len(self))

    def conjugation(self, g):
        """Index permutation ``x -> g^-1 x g``."""
        gi = inv(g)
        return to_raw((self.index[mul(mul(gi, x), g)] for x in self.elements), len(self))

    def gen_indices(self) -> list[int]:
        return [self.index[g] for g in self.group.gens]


def automorphism_from_images(K: GroupWithElements, images) -> tuple:
    """Index permutation of the automorphism sending ``K``'s generators to ``images``.

    Every edge of the Cayley graph is checked, which makes the check exhaustive.
    """
    gens = K.group.gens
    imgs = [as_raw(x, K.group.degree) for x in images]
    if len(imgs) != len(gens):
        raise NotAnAutomorphism("need one image per generator")
    for g, y in zip(gens, imgs):
        if y not in K.index:
            raise NotAnAutomorphism("image is not an element of K")
        if order_of(g) != order_of(y):
            raise NotAnAutomorphism("generator and image have different orders")
    n = len(K)
    phi = [-1] * n
    phi[0] = 0
    queue = [0]
    tabs = [table(g) for g in gens]
    itabs = [table(y) for y in imgs]
    for i in queue:
        x = K.elements[i]
        fx = K.elements[phi[i]]
        for t, it in zip(tabs, itabs):
            j = K.index[apply(x, t)]
            fj = K.index[apply(fx, it)]
            if phi[j] < 0:
                phi[j] = fj
                queue.append(j)
            elif phi[j] != fj:
                raise NotAnAutomorphism("images do not respect the relations of K")
    if len(set(phi)) != n:
        raise NotAnAutomorphism("map is not bijective")
    return to_raw(phi, n)


@dataclass
class SemiprimitiveTriple:
    K: GroupWithElements
    H: PermGroup
    L: Subgroup

    def __post_init__(self):
        self._restricted = None

    def restricted(self):
        """``(points, position, restricted H)``: ``H`` on the orbits of generator indices."""
        if self._restricted is None:
            seen = set()
            pts = []
            for s in self.K.gen_indices():
                if s in seen:
                    continue
                for p in self.H.orbit(s):
                    if p not in seen:
                        seen.add(p)
                        pts.append(p)
            pos = {p: i for i, p in enumerate(pts)}
            gens = [to_raw((pos[h[p]] for p in pts), len(pts)) for h in self.H.gens]
            R = PermGroup(len(pts), gens, order=self.H.order())
            self._restricted = (pts, pos, R)
        return self._restricted

    def restrict_auto(self, a):
        """Restriction of an index permutation to the generator orbits, or None if it leaves them."""
        pts, pos, _ = self.restricted()
        out = []
        for p in pts:
            q = pos.get(a[p])
            if q is None:
                return None
            out.append(q)
        return to_raw(out, len(pts))

    def conj_in_H(self, k) -> bool:
        """Whether conjugation by ``k`` lies in ``H``."""
        pts, pos, R = self.restricted()
        ki = inv(k)
        out = []
        for p in pts:
            y = mul(mul(ki, self.K.elements[p]), k)
            q = pos.get(self.K.index[y])
            if q is None:
                return False
            out.append(q)
        return R.contains_raw(to_raw(out, len(pts)))

    def tau(self, k):
        """Conjugation automorphism of ``k`` as an index permutation."""
        return self.K.conjugation(k)


def make_triple(K: PermGroup, auts, L: PermGroup | None = None, caps: Caps = DEFAULT_CAPS) -> SemiprimitiveTriple:
    """Triple from ``K``, automorphisms (index permutations or generator-image lists) and ``L``."""
    KE = GroupWithElements(K, caps)
    n = len(KE)
    perms = []
    for a in auts:
        if isinstance(a, (list, tuple)) and len(a) == len(KE.group.gens) and not (len(a) == n and all(isinstance(v, int) for v in a)):
            perms.append(automorphism_from_images(KE, a))
        else:
            perms.append(as_raw(a, n))
    H = PermGroup(n, perms, name="H")
    Lg = Subgroup(KE.group, [] if L is None else L.gens)
    return SemiprimitiveTriple(KE, H, Lg)


@dataclass
class TripleValidation:
    valid: bool
    failed_condition: int | None = None
    witness: object = None
    reason: str = ""


def _h_invariant(t: SemiprimitiveTriple, Y: PermGroup) -> bool:
    E = t.K.elements
    for h in t.H.gens:
        for y in Y.gens:
            if not Y.contains_raw(E[h[t.K.index[y]]]):
                return False
    return True


def invariant_normals(t: SemiprimitiveTriple, caps: Caps = DEFAULT_CAPS) -> list[Subgroup]:
    lat = normal_subgroups(t.K.group, caps)
    return [Y for Y in lat.subgroups if _h_invariant(t, Y)]


def k_zero(t: SemiprimitiveTriple) -> Subgroup:
    """``K_0 = {k : conjugation by k lies in H}``."""
    return generated_by(t.K.group, (k for k in t.K.elements if t.conj_in_H(k)))


def _prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def validate_triple(t: SemiprimitiveTriple, caps: Caps = DEFAULT_CAPS) -> TripleValidation:
    K = t.K
    kgroup = K.group
    korder = kgroup.order()
    if t.H.order() > caps.order_cap:
        raise CapacityExceeded(t.H.order(), caps.order_cap, "automorphism group order")
    # every generator of H must be an automorphism
    gi = K.gen_indices()
    for h in t.H.gens:
        imgs = [K.elements[h[i]] for i in gi]
        if automorphism_from_images(K, imgs) != h:
            raise NotAnAutomorphism("H generator is not an automorphism of K")
    for l in t.L.gens:
        if not kgroup.contains_raw(l):
            return TripleValidation(False, 2, t.L, "L is not a subgroup of K")
    invs = invariant_normals(t, caps)
    proper = [Y for Y in invs if Y.order() < korder]
    # (1) H faithful on each non-trivial invariant quotient
    pts, pos, R = t.restricted()
    prime_h = [h for h in t.H.chain.elements() if _prime(order_of(h))]
    for Y in proper:
        for h in prime_h:
            if all(Y.contains_raw(mul(inv(k), K.elements[h[K.index[k]]])) for k in kgroup.gens):
                return TripleValidation(False, 1, (Y, h), "H centralizes a non-trivial invariant quotient")
    # (2) L normal in K_0, core-free, H-invariant, and K perfect if L != 1
    K0 = k_zero(t)
    L = t.L
    if not L.is_subgroup_of(K0):
        return TripleValidation(False, 2, L, "L is not inside K_0")
    for k in K0.gens:
        ki = inv(k)
        for l in L.gens:
            if not L.contains_raw(mul(mul(ki, l), k)):
                return TripleValidation(False, 2, k, "L is not normal in K_0")
    c = core(kgroup, Subgroup(kgroup, L.gens, chain=L.chain), caps)
    if c.order() != 1:
        return TripleValidation(False, 2, c, "L is not core-free in K")
    if not _h_invariant(t, L):
        return TripleValidation(False, 2, L, "L is not H-invariant")
    if L.order() > 1 and not is_perfect(kgroup):
        return TripleValidation(False, 2, None, "L is non-trivial but K is not perfect")
    # (3) no proper invariant normal R with L R = K
    for Rn in proper:
        if join(Rn, L, parent=kgroup).order() == korder:
            return TripleValidation(False, 3, Rn, "a proper invariant normal subgroup supplements L")
    return TripleValidation(True)


def build_from_triple(t: SemiprimitiveTriple, caps: Caps = DEFAULT_CAPS, validate: bool = True) -> TransitiveAction:
    """The action of ``X = K H`` on the right cosets of ``Y = H L``.

    Since ``X = Y K`` and ``Y meet K = L``, the cosets ``Y k`` correspond to the
    cosets ``L k``: ``K`` acts by right multiplication and ``h`` in ``H`` sends
    ``L k`` to ``L h(k)``.  The action is realized on those points directly.
    """
    if validate:
        v = validate_triple(t, caps)
        if not v.valid:
            raise InvalidTriple(v.failed_condition, v.witness, v.reason)
    K = t.K
    n = len(K)
    index = n // t.L.order()
    if index > caps.degree_cap:
        raise CapacityExceeded(index, caps.degree_cap, "triple action degree")
    l_elems = t.L.chain.elements()
    coset = [-1] * n
    reps = []
    for i, k in enumerate(K.elements):
        if coset[i] < 0:
            for l in l_elems:
                coset[K.index[mul(l, k)]] = len(reps)
            reps.append(i)
    assert len(reps) == index
    rho = []
    for g in K.group.gens:
        tg = table(g)
        rho.append(to_raw([coset[K.index[apply(K.elements[r], tg)]] for r in reps], index))
    auts = [to_raw([coset[h[r]] for r in reps], index) for h in t.H.gens]
    img = PermGroup(index, rho + auts, name="triple-action")
    # the kernel of X on the cosets has order |L|
    assert img.order() * t.L.order() == n * t.H.order(), "kernel order differs from |L|"
    A = action_of_transitive_group(img, 0, name="triple-action")
    assert A.stab.order() == t.H.order()
    A.plinth = Subgroup(img, rho)
    assert A.plinth.order() == n
    return A


def _carrier(A: TransitiveAction, omega: int, caps: Caps):
    """An ambient element taking point 0 to ``omega`` in the realized action."""
    img, hom = A.realize(caps)
    if not 0 <= omega < img.degree:
        raise ValueError(f"point {omega} out of range")
    G = A.ambient
    found = {0: G.identity}
    queue = [0]
    for p in queue:
        if p == omega:
            return found[p]
        for g, y in zip(G.gens, hom.images):
            q = y[p]
            if q not in found:
                found[q] = mul(found[p], g)
                queue.append(q)
    raise ValueError("point not reached")


def extract_triple(A: TransitiveAction, K: PermGroup, omega: int = 0, caps: Caps = DEFAULT_CAPS) -> SemiprimitiveTriple:
    """``(K, image of G_omega in Aut(K), K_omega)`` for a plinth ``K``."""
    G = A.ambient
    stab = A.stab
    if omega != 0:
        r = _carrier(A, omega, caps)
        ri = inv(r)
        stab = generated_by(G, [mul(mul(ri, h), r) for h in A.stab.gens])
    KE = GroupWithElements(K, caps)
    auts = [KE.conjugation(h) for h in stab.gens]
    H = PermGroup(len(KE), auts, name="H")
    assert H.order() == stab.order(), "stabilizer meets the centralizer of K"
    Kw = intersection(K, stab, caps, parent=G)
    L = Subgroup(KE.group, Kw.gens)
    return SemiprimitiveTriple(KE, H, L)


def _mu_hom(t1: SemiprimitiveTriple, t2: SemiprimitiveTriple, mu) -> Homomorphism:
    if isinstance(mu, Homomorphism):
        images = mu.images
    else:
        images = [as_raw(x, t2.H.degree) for x in mu]
    if t1.H.order() != t2.H.order():
        raise IncompatibleIsomorphism("automorphism groups have different orders")
    try:
        hom = Homomorphism(t1.H, t2.H, images, check=True)
    except NotAHomomorphism as e:
        raise IncompatibleIsomorphism(str(e)) from None
    if not hom.is_surjective():
        raise IncompatibleIsomorphism("mu is not bijective")
    return hom


def l_image(t: SemiprimitiveTriple) -> Subgroup:
    """``L tau``: the conjugation image of ``L`` inside ``H``."""
    return Subgroup(t.H, [t.tau(l) for l in t.L.gens])


def find_gluing_isomorphism(t1: SemiprimitiveTriple, t2: SemiprimitiveTriple, caps: Caps = DEFAULT_CAPS, effort_cap: int | None = None):
    """An isomorphism ``H1 -> H2`` carrying ``L1 tau1`` onto ``L2 tau2``, or None."""
    if t1.H.order() != t2.H.order():
        return None
    l1, l2 = l_image(t1), l_image(t2)
    if l1.order() != l2.order():
        return None
    cap = caps.effort_cap if effort_cap is None else effort_cap
    _, _, R1 = t1.restricted()
    _, _, R2 = t2.restricted()
    # search on the small restricted copies, then lift back
    r1, r2 = R1, R2
    L1r = Subgroup(r1, [t1.restrict_auto(a) for a in l1.gens])
    L2r = Subgroup(r2, [t2.restrict_auto(a) for a in l2.gens])
    hom = find_isomorphism(r1, r2, L1r, L2r, cap)
    if hom is None:
        return None
    back = Homomorphism(r2, t2.H, t2.H.gens, check=False)
    images = [back.raw_image(y) for y in hom.images]
    return Homomorphism(t1.H, t2.H, images, check=False)


def triple_product(t1: SemiprimitiveTriple, t2: SemiprimitiveTriple, mu, caps: Caps = DEFAULT_CAPS) -> SemiprimitiveTriple:
    """The product triple on ``K1 x K2`` with diagonal automorphisms and diagonal ``L``."""
    hom = _mu_hom(t1, t2, mu)
    l1, l2 = l_image(t1), l_image(t2)
    if l1.order() != l2.order() or not all(l2.contains_raw(hom.raw_image(a)) for a in l1.gens):
        raise IncompatibleIsomorphism("mu does not carry L1 tau1 onto L2 tau2")
    n1, n2 = len(t1.K), len(t2.K)
    if n1 * n2 > caps.element_cap:
        raise CapacityExceeded(n1 * n2, caps.element_cap, "product element table size")
    d1, d2 = t1.K.group.degree, t2.K.group.degree
    id1, id2 = t1.K.group.identity, t2.K.group.identity
    kgens = [concat(g, id2) for g in t1.K.group.gens] + [concat(id1, g) for g in t2.K.group.gens]
    P = PermGroup(d1 + d2, kgens, order=n1 * n2)
    KE = GroupWithElements(P, caps)
    # pair (i, j) -> index in the product table
    pair = [[0] * n2 for _ in range(n1)]
    for i, x in enumerate(t1.K.elements):
        for j, y in enumerate(t2.K.elements):
            pair[i][j] = KE.index[concat(x, y)]
    split = [None] * len(KE)
    for i in range(n1):
        for j in range(n2):
            split[pair[i][j]] = (i, j)
    auts = []
    for h, y in zip(t1.H.gens, hom.images):
        auts.append(to_raw((pair[h[i]][y[j]] for i, j in split), len(KE)))
    H = PermGroup(len(KE), auts, order=t1.H.order(), name="H")
    # L = {(l1, l2) : tau2(l2) = mu(tau1(l1))}
    l2_elems = t2.L.chain.elements()
    by_tau = {t2.tau(l): l for l in l2_elems}
    lgens = []
    for l in t1.L.gens:
        partner = by_tau.get(hom.raw_image(t1.tau(l)))
        if partner is None:
            raise IncompatibleIsomorphism("no partner for an element of L1")
        lgens.append(concat(l, partner))
    L = Subgroup(KE.group, lgens)
    t = SemiprimitiveTriple(KE, H, L)
    v = validate_triple(t, caps)
    assert v.valid, v
    return t
