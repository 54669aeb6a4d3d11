"""Semiprimitivity, plinths, innately transitive types and the structure classification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial

from .action import TransitiveAction, quotient_action
from .config import DEFAULT_CAPS, Caps
from .errors import (
    CapacityExceeded,
    NotInnatelyTransitive,
    NotSemiprimitive,
    NotTransitive,
)
from .group import (
    Homomorphism,
    PermGroup,
    Subgroup,
    centralizer_of_transitive,
    generated_by,
    intersection,
    is_primitive,
    join,
    normal_closure,
    trivial_subgroup,
)
from .lattice import (
    NormalLattice,
    as_group,
    composition_factors,
    duality_decomposition,
    is_perfect,
    is_soluble,
    normal_subgroups,
    simple_factor_order,
)
from .perm import comm, cycle_lengths, inv, mul, order_of, power, support_size

ITTYPES = ("HA", "HS", "HC", "AS_reg", "AS_nonreg", "TW", "SD", "CD", "ASQ_reg", "ASQ_nonreg", "PA", "PQ", "DQ")
NONREGULAR_TYPES = {"AS_nonreg", "ASQ_nonreg", "PA", "SD", "CD"}
REGULAR_TYPES = {"AS_reg", "ASQ_reg", "HA", "TW", "DQ", "PQ"}


def lattice_of(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> NormalLattice:
    return normal_subgroups(A.ambient, caps)


# Predicates


@dataclass
class SPPredicates:
    is_semiprimitive: bool
    witness: Subgroup | None
    is_quasiprimitive: bool
    is_innately_transitive: bool
    is_primitive: bool | None


def semiprimitive_witness(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> Subgroup | None:
    """A normal subgroup that is neither transitive nor semiregular, or None."""
    lat = lattice_of(A, caps)
    for N in lat.subgroups:
        if not A.is_transitive_normal(N) and not A.is_semiregular_normal(N):
            return N
    return None


def semiprimitive_witness_by_elements(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> Subgroup | None:
    """Same answer without the lattice.

    A normal subgroup failing both conditions meets the stabilizer in an
    element of prime order, whose normal closure then fails as well.  So it
    is enough to test normal closures of prime-order stabilizer elements.
    """
    H = A.stab
    if H.order() > caps.order_cap:
        raise CapacityExceeded(H.order(), caps.order_cap, "stabilizer order")
    G = A.ambient
    seen = set()
    for x in H.chain.elements():
        o = order_of(x)
        if x in seen or not _is_prime(o):
            continue
        # skip H-conjugates of elements already tried
        orbit = [x]
        seen.add(x)
        for y in orbit:
            for h in H.gens:
                z = mul(mul(inv(h), y), h)
                if z not in seen:
                    seen.add(z)
                    orbit.append(z)
        N = normal_closure(G, [x])
        if not A.is_transitive_normal(N):
            return N
    return None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_semiprimitive(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> bool:
    if A.order() <= caps.order_cap:
        return semiprimitive_witness(A, caps) is None
    return semiprimitive_witness_by_elements(A, caps) is None


def primitivity(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> bool | None:
    """True/False, or None when the answer is out of reach under the caps.

    The orbits of an intransitive non-trivial normal subgroup form blocks, so
    the lattice settles imprimitivity first; otherwise the realized action
    gets a block test.
    """
    if A.order() <= caps.order_cap:
        lat = lattice_of(A, caps)
        for N in lat.subgroups[1:]:
            if not A.is_transitive_normal(N):
                return False
    if A.degree <= caps.degree_cap:
        img, _ = A.realize(caps)
        return is_primitive(img)
    return None


def sp_predicates(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> SPPredicates:
    lat = lattice_of(A, caps)
    witness = semiprimitive_witness(A, caps)
    atoms = lat.atoms()
    trans_atoms = [i for i in atoms if A.is_transitive_normal(lat.subgroups[i])]
    quasi = len(trans_atoms) == len(atoms)
    innate = bool(trans_atoms)
    prim = primitivity(A, caps)
    return SPPredicates(witness is None, witness, quasi, innate, prim)


# Plinths


@dataclass
class PlinthReport:
    plinths: list[Subgroup]
    superplinth: Subgroup
    rad: Subgroup
    flags: list[dict]
    indices: list[int] = field(default_factory=list)


def transitive_normals(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> list[int]:
    lat = lattice_of(A, caps)
    return [i for i, N in enumerate(lat.subgroups) if A.is_transitive_normal(N)]


def plinth_indices(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> list[int]:
    lat = lattice_of(A, caps)
    trans = transitive_normals(A, caps)
    return [i for i in trans if not any(j != i and lat.keys[j] < lat.keys[i] for j in trans)]


def plinth_report(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> PlinthReport:
    lat = lattice_of(A, caps)
    idx = plinth_indices(A, caps)
    sp = lat.join_all(idx)
    if len(idx) == 1:
        below = lat.maximal_below(idx[0])
        rad = lat.meet_all(below) if below else idx[0]
    else:
        rad = lat.meet_all(idx)
    flags = []
    for i in idx:
        K = lat.subgroups[i]
        flags.append(
            {
                "order": lat.orders[i],
                "regular": lat.orders[i] == A.degree,
                "perfect": is_perfect(K),
                "soluble": is_soluble(K),
            }
        )
    return PlinthReport([lat.subgroups[i] for i in idx], lat.subgroups[sp], lat.subgroups[rad], flags, idx)


# Innately transitive types


@dataclass
class ITResult:
    type: str
    k: int = 1
    simple_order: int = 0
    derived_rule: bool = False
    detail: dict = field(default_factory=dict)


def _simple_factors(K: PermGroup, caps: Caps) -> list[Subgroup]:
    own = normal_subgroups(as_group(K), caps)
    return [own.subgroups[i] for i in own.atoms()]


def _projection_order(Kw: PermGroup, others: list[PermGroup], parent: PermGroup) -> int:
    """Order of the image of ``Kw`` modulo the product of ``others``."""
    if not others:
        return Kw.order()
    gens = [g for X in others for g in X.gens]
    base = generated_by(parent, gens).order()
    return generated_by(parent, list(gens) + list(Kw.gens)).order() // base


def diagonal_pattern(K: PermGroup, Kw: PermGroup, caps: Caps = DEFAULT_CAPS):
    """Classify ``Kw`` inside ``K = T_1 x ... x T_k``: 'full', 'product' or 'other', with the parts."""
    factors = _simple_factors(K, caps)
    k = len(factors)
    t = factors[0].order()
    proj = [_projection_order(Kw, [factors[j] for j in range(k) if j != i], K) for i in range(k)]
    if any(p != t for p in proj):
        return "other", []
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i in range(k):
        for j in range(i + 1, k):
            others = [factors[m] for m in range(k) if m not in (i, j)]
            if _projection_order(Kw, others, K) == t:
                parent[find(j)] = find(i)
    parts: dict[int, list[int]] = {}
    for i in range(k):
        parts.setdefault(find(i), []).append(i)
    blocks = list(parts.values())
    if Kw.order() != t ** len(blocks):
        return "other", blocks
    if len(blocks) == 1:
        return "full", blocks
    if all(len(b) >= 2 for b in blocks):
        return "product", blocks
    return "other", blocks


def classify_it_type(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> ITResult:
    lat = lattice_of(A, caps)
    atoms = lat.atoms()
    trans = [i for i in atoms if A.is_transitive_normal(lat.subgroups[i])]
    if not trans:
        raise NotInnatelyTransitive("no transitive minimal normal subgroup")
    ki = trans[0]
    K = lat.subgroups[ki]
    korder = lat.orders[ki]
    abelian = lat.is_abelian_section(ki, lat.trivial)
    if abelian:
        p = next(d for d in range(2, korder + 1) if korder % d == 0)
        k = 0
        s = korder
        while s > 1:
            s //= p
            k += 1
        return ITResult("HA", k, p)
    t = simple_factor_order(lat, ki, lat.trivial)
    k = 0
    s = korder
    while s > 1:
        s //= t
        k += 1
    regular = korder == A.degree
    if len(trans) >= 2:
        return ITResult("HS" if k == 1 else "HC", k, t)
    ci = lat.centralizer(ki)
    if lat.orders[ci] == 1:
        if k == 1:
            return ITResult("AS_reg" if regular else "AS_nonreg", k, t)
        if regular:
            return ITResult("TW", k, t)
        Kw = intersection(K, A.stab, caps, parent=A.ambient)
        pattern, blocks = diagonal_pattern(K, Kw, caps)
        if pattern == "full":
            return ITResult("SD", k, t, detail={"parts": blocks})
        if pattern == "product":
            return ITResult("CD", k, t, detail={"parts": blocks})
        return ITResult("PA", k, t)
    if k == 1:
        return ITResult("ASQ_reg" if regular else "ASQ_nonreg", k, t)
    if not regular:
        return ITResult("PA", k, t, derived_rule=True)
    C = lat.subgroups[ci]
    Q = quotient_action(A, C, caps)
    inner = classify_it_type(Q, caps)
    if inner.type == "PA":
        return ITResult("PQ", k, t, detail={"quotient": inner.type})
    if inner.type in ("SD", "CD"):
        r = intersection(K, A.stab, caps, parent=A.ambient).order()
        rr = 0
        while r > 1:
            r //= t
            rr += 1
        return ITResult("DQ", k, t, detail={"quotient": inner.type, "r": rr})
    return ITResult(inner.type, k, t, derived_rule=True, detail={"quotient": inner.type})


# Structure classification


@dataclass
class StructureReport:
    case: str
    S: Subgroup
    quotient_types: list[str]
    glue_witness: object = None
    derived_rule: bool = False
    family_orders: list[int] = field(default_factory=list)


def _glue_quotients(A: TransitiveAction, K: PermGroup, Ms: list[PermGroup], caps: Caps):
    """Glue the quotient actions by each ``M`` through the natural identification of stabilizers."""
    from .glue import glue_actions

    pieces = []
    for M in Ms:
        Q = quotient_action(A, M, caps)
        KQ = Subgroup(Q.ambient, [Q.projection.raw_image(g) for g in K.gens])
        pieces.append((Q, KQ))
    cur, cur_k = pieces[0]
    for Q, KQ in pieces[1:]:
        mu = list(Q.stab.gens)
        cur, cur_k = glue_actions(cur, Q, mu, cur_k, KQ, caps, with_plinth=True)
    return cur


def classify_structure(A: TransitiveAction, caps: Caps = DEFAULT_CAPS, effort_cap: int | None = None) -> StructureReport:
    from .iso import is_perm_isomorphic

    lat = lattice_of(A, caps)
    w = semiprimitive_witness(A, caps)
    if w is not None:
        raise NotSemiprimitive(w)
    idx = plinth_indices(A, caps)
    derived = False
    if len(idx) >= 2:
        si = lat.meet_all(idx)
        types = []
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                m = lat.meet(idx[a], idx[b])
                Q = quotient_action(A, lat.subgroups[m], caps)
                r = classify_it_type(Q, caps)
                assert r.type in ("HS", "HC"), r.type
                types.append(r.type)
        k0 = idx[0]
        Ms = [lat.subgroups[lat.meet(k0, j)] for j in idx[1:]]
        glued = _glue_quotients(A, lat.subgroups[k0], Ms, caps)
        case = "b"
    else:
        ki = idx[0]
        K = lat.subgroups[ki]
        fam = lat.maximal_below(ki)
        si = lat.meet_all(fam) if fam else ki
        types = []
        for m in fam:
            r = classify_it_type(quotient_action(A, lat.subgroups[m], caps), caps)
            types.append(r.type)
            derived = derived or r.derived_rule
        regular = lat.orders[ki] == A.degree
        case = "a_ii" if regular else "a_i"
        allowed = REGULAR_TYPES if regular else NONREGULAR_TYPES
        assert set(types) <= allowed, types
        if fam:
            dec = duality_decomposition(A.ambient, K, lat.subgroups[lat.trivial], caps=caps)
            Ms = [lat.subgroups[m] for m in dec.matches]
            glued = _glue_quotients(A, K, Ms, caps)
        else:
            glued = None
    S = lat.subgroups[si]
    if glued is None:
        witness = None
    else:
        target = quotient_action(A, S, caps)
        witness = is_perm_isomorphic(target, glued, effort_cap, caps)
    return StructureReport(case, S, types, witness, derived, [lat.orders[i] for i in idx])


# Faithful quotient criterion


def faithful_quotient_criterion(A: TransitiveAction, K: PermGroup, caps: Caps = DEFAULT_CAPS):
    """``(True, None)`` or ``(False, (Y, h))`` with ``h != 1`` centralizing ``K/Y``."""
    lat = lattice_of(A, caps)
    ki = lat.index_of(K)
    H = A.stab
    if H.order() > caps.order_cap:
        raise CapacityExceeded(H.order(), caps.order_cap, "stabilizer order")
    prime_elems = [x for x in H.chain.elements() if _is_prime(order_of(x))]
    for yi in lat.below(ki):
        Y = lat.subgroups[yi]
        for h in prime_elems:
            if all(Y.contains_raw(comm(k, h)) for k in K.gens):
                return False, (Y, h)
    return True, None


# Centralizer homomorphism


@dataclass
class CentHom:
    hom: Homomorphism
    sigma: list[int]
    K_sigma: Subgroup
    K_omega: Subgroup
    centralizer: Subgroup


def cent_hom(A: TransitiveAction, K: PermGroup, omega: int = 0, caps: Caps = DEFAULT_CAPS) -> CentHom:
    """The map ``K_sigma -> C_G(K)``, ``k -> r_k`` with ``k r_k`` fixing ``omega``."""
    img, proj = A.realize(caps)
    n = img.degree
    Kr = Subgroup(img, [proj.raw_image(g) for g in K.gens])
    if not Kr.is_transitive():
        raise NotTransitive("K must be transitive")
    C = centralizer_of_transitive(img, Kr)
    sigma = sorted(C.orbit(omega))
    sig = set(sigma)
    # c_p: the unique centralizing element sending omega to p
    c_of = {}
    for c in C.chain.elements():
        c_of[c[omega]] = c
    K_omega = Kr.point_stabilizer(omega)
    # transversal of K reaching each point of sigma
    reach = {omega: img.identity}
    queue = [omega]
    for p in queue:
        for g in Kr.gens:
            q = g[p]
            if q not in reach:
                reach[q] = mul(reach[p], g)
                queue.append(q)
    gens = list(K_omega.gens) + [reach[p] for p in sigma if p != omega]
    K_sigma = generated_by(img, gens)
    images = [inv(c_of[k[omega]]) for k in K_sigma.gens]
    hom = Homomorphism(K_sigma, C, images, check=True)
    assert hom.is_surjective()
    ker = hom.kernel()
    assert ker.order() == K_omega.order() and K_omega.is_subgroup_of(ker)
    # K_sigma = K meet G_omega C
    Gw = img.point_stabilizer(omega)
    GwC = join(Gw, C, parent=img)
    assert intersection(Kr, GwC, caps, parent=img).order() == K_sigma.order()
    for k in K_sigma.gens:
        assert k[omega] in sig
    return CentHom(hom, sigma, K_sigma, K_omega, C)


# Properties of the realized action


@dataclass
class PropertyReport:
    minimal_degree: int
    minimal_degree_exact: bool
    has_p_cycle: bool
    bochert_holds: bool
    p_cycle_consistent: bool
    contains_alt: bool


def _realized_class_reps(A: TransitiveAction, caps: Caps):
    from .lattice import conjugacy_classes

    img, proj = A.realize(caps)
    if A.order() <= caps.order_cap:
        cc = conjugacy_classes(A.ambient, caps)
        return [proj.raw_image(r) for r in cc.representatives], True
    rng = random.Random(0)
    return [proj.raw_image(A.ambient.random_raw(rng)) for _ in range(2000)], False


def property_checks(A: TransitiveAction, caps: Caps = DEFAULT_CAPS, semiprimitive: bool | None = None) -> PropertyReport:
    n = A.degree
    reps, exact = _realized_class_reps(A, caps)
    supports = [support_size(r) for r in reps if support_size(r) > 0]
    mindeg = min(supports) if supports else 0
    has_pcycle = False
    for r in reps:
        lengths = [c for c in cycle_lengths(r) if c > 1]
        if len(lengths) == 1 and _is_prime(lengths[0]):
            has_pcycle = True
            break
    contains_alt = 2 * A.order() >= factorial(n)
    bochert = contains_alt or factorial(n) // A.order() >= factorial((n + 1) // 2)
    if semiprimitive is None:
        semiprimitive = is_semiprimitive(A, caps)
    prim = primitivity(A, caps)
    consistent = not (semiprimitive and has_pcycle and prim is False)
    return PropertyReport(mindeg, exact, has_pcycle, bochert, consistent, contains_alt)
