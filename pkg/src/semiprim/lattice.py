"""Conjugacy classes and the lattice of normal subgroups.

A normal subgroup is a union of conjugacy classes, so each one is stored
under the frozenset of indices of the classes it contains.  That key is exact
and canonical: two normal subgroups are equal iff their keys are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .chain import build_chain
from .config import DEFAULT_CAPS, Caps
from .errors import CapacityExceeded, NotNormal, NotPrime
from .group import (
    PermGroup,
    Subgroup,
    generated_by,
    is_normal,
    normal_closure,
    trivial_subgroup,
)
from .perm import PAD, Permutation, comm, inv, mul, order_of, power, table


@dataclass
class ConjugacyClasses:
    representatives: list
    sizes: list[int]
    orders: list[int] = field(default_factory=list)
    rational: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.sizes)

    def reps(self) -> list[Permutation]:
        return [Permutation._wrap(r) for r in self.representatives]


def _conjugator(g):
    """Function ``x -> g^-1 x g`` on raw tables."""
    gi = inv(g)
    if type(g) is bytes:
        gt = table(g)
        n = len(g)
        pad = PAD[n:]
        return lambda x: gi.translate(x.translate(gt) + pad)
    gget = g.__getitem__
    return lambda x: tuple(map(gget, map(x.__getitem__, gi)))


def conjugacy_classes(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> ConjugacyClasses:
    """Exact classes from orbits of conjugation on the full element list."""
    cached = getattr(G, "_classes", None)
    if cached is not None:
        return cached
    n = G.order()
    if n > caps.order_cap:
        raise CapacityExceeded(n, caps.order_cap, "group order for conjugacy classes")
    elems = G.chain.elements()
    index = {x: i for i, x in enumerate(elems)}
    class_of = [-1] * len(elems)
    conjs = [_conjugator(g) for g in G.gens]
    reps, sizes = [], []
    for i, x in enumerate(elems):
        if class_of[i] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        class_of[i] = c
        frontier = [x]
        count = 1
        for y in frontier:
            for f in conjs:
                z = f(y)
                j = index[z]
                if class_of[j] < 0:
                    class_of[j] = c
                    frontier.append(z)
                    count += 1
        sizes.append(count)
    orders = [order_of(r) for r in reps]
    rational = []
    for c, r in enumerate(reps):
        o = orders[c]
        best = c
        for k in range(2, o):
            if gcd(k, o) == 1:
                best = min(best, class_of[index[power(r, k)]])
        rational.append(best)
    del index, class_of, elems
    cc = ConjugacyClasses(reps, sizes, orders, rational)
    G._classes = cc
    return cc


class NormalLattice:
    """All normal subgroups of ``G``, sorted by order then by class key."""

    def __init__(self, G: PermGroup, classes: ConjugacyClasses, subgroups: list, keys: list):
        self.group = G
        self.classes = classes
        pairs = sorted(zip(keys, subgroups), key=lambda p: (self._order_of_key(classes, p[0]), sorted(p[0])))
        self.keys: list[frozenset] = [p[0] for p in pairs]
        self.subgroups: list[Subgroup] = [p[1] for p in pairs]
        self.orders = [self._order_of_key(classes, k) for k in self.keys]
        self._where = {k: i for i, k in enumerate(self.keys)}

    @staticmethod
    def _order_of_key(classes: ConjugacyClasses, key) -> int:
        return sum(classes.sizes[c] for c in key)

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        return iter(self.subgroups)

    def key_of(self, N: PermGroup) -> frozenset:
        return frozenset(c for c, r in enumerate(self.classes.representatives) if N.contains_raw(r))

    def index_of(self, N: PermGroup) -> int:
        key = self.key_of(N)
        i = self._where.get(key)
        if i is None or self.orders[i] != N.order():
            raise NotNormal("subgroup is not normal in the group")
        return i

    def index_of_key(self, key) -> int | None:
        return self._where.get(frozenset(key))

    def leq(self, i: int, j: int) -> bool:
        return self.keys[i] <= self.keys[j]

    def containment_matrix(self) -> list[list[bool]]:
        return [[self.leq(i, j) for j in range(len(self))] for i in range(len(self))]

    @property
    def trivial(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self) - 1

    def meet(self, i: int, j: int) -> int:
        return self._where[self.keys[i] & self.keys[j]]

    def join(self, i: int, j: int) -> int:
        k = self.keys[i] | self.keys[j]
        cands = [m for m in range(len(self)) if k <= self.keys[m]]
        return min(cands, key=lambda m: self.orders[m])

    def meet_all(self, idxs) -> int:
        key = self.keys[self.top]
        for i in idxs:
            key = key & self.keys[i]
        return self._where[key]

    def join_all(self, idxs) -> int:
        r = self.trivial
        for i in idxs:
            r = self.join(r, i)
        return r

    def below(self, i: int) -> list[int]:
        """Indices strictly below ``i``."""
        return [j for j in range(len(self)) if j != i and self.keys[j] < self.keys[i]]

    def above(self, i: int) -> list[int]:
        return [j for j in range(len(self)) if j != i and self.keys[i] < self.keys[j]]

    def minimal_above(self, i: int, within: int | None = None) -> list[int]:
        cands = self.above(i)
        if within is not None:
            cands = [j for j in cands if self.leq(j, within)]
        return [j for j in cands if not any(self.keys[k] < self.keys[j] for k in cands if k != j)]

    def maximal_below(self, i: int, above: int | None = None) -> list[int]:
        cands = self.below(i)
        if above is not None:
            cands = [j for j in cands if self.leq(above, j)]
        return [j for j in cands if not any(self.keys[j] < self.keys[k] for k in cands if k != j)]

    def atoms(self) -> list[int]:
        return self.minimal_above(self.trivial)

    def centralizer(self, i: int) -> int:
        """Index of ``C_G(N)`` for the normal subgroup ``N`` at ``i``."""
        gens = self.subgroups[i].gens
        key = frozenset(
            c for c, r in enumerate(self.classes.representatives) if all(mul(r, g) == mul(g, r) for g in gens)
        )
        return self._where[key]

    def commutator(self, i: int, j: int) -> int:
        """Index of ``[A, B]`` for normal ``A``, ``B``."""
        A, B = self.subgroups[i], self.subgroups[j]
        C = normal_closure(self.group, [comm(a, b) for a in A.gens for b in B.gens])
        return self.index_of(C)

    def is_abelian_section(self, upper: int, lower: int) -> bool:
        """Whether ``upper/lower`` is abelian."""
        A, B = self.subgroups[upper], self.subgroups[lower]
        return all(B.contains_raw(comm(a, b)) for a in A.gens for b in A.gens)

    def closure_of_class(self, c: int, inside: int | None = None) -> int:
        """Normal closure in ``G`` of class ``c`` joined with ``inside``."""
        seeds = [self.classes.representatives[c]]
        if inside is not None:
            seeds += self.subgroups[inside].gens
        return self.index_of(normal_closure(self.group, seeds))


def _key_from_chain(classes: ConjugacyClasses, chain, candidates=None) -> frozenset:
    reps = classes.representatives
    rng = range(len(reps)) if candidates is None else candidates
    return frozenset(c for c in rng if chain.contains(reps[c]))


def normal_subgroups(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> NormalLattice:
    """Every normal subgroup of ``G``, found by joining normal closures of classes."""
    cached = getattr(G, "_lattice", None)
    if cached is not None:
        return cached
    cc = conjugacy_classes(G, caps)
    sizes = cc.sizes
    principal: dict[int, tuple[frozenset, Subgroup]] = {}
    by_key: dict[frozenset, Subgroup] = {}
    for c in range(len(cc)):
        r = cc.rational[c]
        if r in principal:
            continue
        N = normal_closure(G, [cc.representatives[r]])
        key = _key_from_chain(cc, N.chain)
        if key not in by_key:
            by_key[key] = N
        principal[r] = (key, by_key[key])
    triv = trivial_subgroup(G)
    triv_key = frozenset([0])
    found = {triv_key: triv}
    prim = sorted(set(k for k, _ in principal.values()), key=lambda k: (sum(sizes[c] for c in k), sorted(k)))
    queue = [triv_key]
    qi = 0
    while qi < len(queue):
        k = queue[qi]
        qi += 1
        N = found[k]
        n_order = sum(sizes[c] for c in k)
        for pk in prim:
            if pk <= k:
                continue
            P = by_key[pk]
            meet = sum(sizes[c] for c in (k & pk))
            order = n_order * sum(sizes[c] for c in pk) // meet
            union = k | pk
            # the join is the smallest known key containing both, if its order fits
            jk = None
            for fk in found:
                if union <= fk and sum(sizes[c] for c in fk) == order:
                    jk = fk
                    break
            if jk is None:
                gens = list(N.gens) + list(P.gens)
                ch = build_chain(G.degree, gens, known_order=order)
                rest = [c for c in range(len(cc)) if c not in union]
                jk = union | _key_from_chain(cc, ch, rest)
                assert sum(sizes[c] for c in jk) == order
                found[jk] = Subgroup(G, gens, chain=ch)
                queue.append(jk)
    lat = NormalLattice(G, cc, list(found.values()), list(found.keys()))
    G._lattice = lat
    return lat


def minimal_normal_subgroups(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> list[Subgroup]:
    lat = normal_subgroups(G, caps)
    return [lat.subgroups[i] for i in lat.atoms()]


def socle(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> Subgroup:
    lat = normal_subgroups(G, caps)
    return lat.subgroups[lat.join_all(lat.atoms())]


def maximal_normal_below(G: PermGroup, K: PermGroup, caps: Caps = DEFAULT_CAPS) -> list[Subgroup]:
    lat = normal_subgroups(G, caps)
    i = lat.index_of(K)
    return [lat.subgroups[j] for j in lat.maximal_below(i)]


# Structure of a single group


@dataclass(frozen=True)
class CompositionFactorMultiset:
    factors: tuple[tuple[int, bool], ...]

    def product(self) -> int:
        p = 1
        for o, _ in self.factors:
            p *= o
        return p


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and _prime_factors(p) == [p]


def as_group(N: PermGroup) -> PermGroup:
    """``N`` as a group in its own right (its lattice is cached on the copy)."""
    own = getattr(N, "_as_group", None)
    if own is None:
        own = PermGroup(N.degree, N.gens, chain=N.chain)
        N._as_group = own
    return own


def derived_series(N: PermGroup) -> list[Subgroup]:
    from .group import derived_subgroup

    series = [as_group(N)]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            break
        series.append(D)
    return series


def is_perfect(N: PermGroup) -> bool:
    from .group import derived_subgroup

    return derived_subgroup(as_group(N)).order() == N.order()


def is_soluble(N: PermGroup) -> bool:
    return derived_series(N)[-1].order() == 1


def chief_factors(G: PermGroup, caps: Caps = DEFAULT_CAPS, top: int | None = None, bottom: int | None = None):
    """``(order, abelian, simple_order)`` for each factor of a chief series of ``G`` between two normal subgroups."""
    lat = normal_subgroups(G, caps)
    cur = lat.top if top is None else top
    stop = lat.trivial if bottom is None else bottom
    out = []
    while cur != stop:
        below = [j for j in lat.maximal_below(cur) if lat.leq(stop, j)]
        nxt = min(below, key=lambda j: (-lat.orders[j], sorted(lat.keys[j])))
        size = lat.orders[cur] // lat.orders[nxt]
        ab = lat.is_abelian_section(cur, nxt)
        if ab:
            simple = _prime_factors(size)[0]
        else:
            simple = simple_factor_order(lat, cur, nxt)
        out.append((size, ab, simple))
        cur = nxt
    return out


def simple_factor_order(lat: NormalLattice, upper: int, lower: int) -> int:
    """Order of the simple factor ``T`` of a non-abelian chief factor ``upper/lower = T^k``."""
    A = lat.subgroups[upper]
    B = lat.subgroups[lower]
    b = lat.orders[lower]
    best = lat.orders[upper] // b
    for c in sorted(lat.keys[upper] - lat.keys[lower]):
        seeds = [lat.classes.representatives[c]] + list(B.gens)
        C = normal_closure(A, seeds)
        best = min(best, C.order() // b)
    return best


def composition_factors(N: PermGroup, caps: Caps = DEFAULT_CAPS) -> CompositionFactorMultiset:
    out = []
    for size, ab, simple in chief_factors(as_group(N), caps):
        k = 0
        s = size
        while s > 1:
            s //= simple
            k += 1
        out.extend([(simple, ab)] * k)
    return CompositionFactorMultiset(tuple(sorted(out)))


def structure_predicates(N: PermGroup, caps: Caps = DEFAULT_CAPS) -> dict:
    series = derived_series(N)
    return {
        "is_perfect": len(series) == 1,
        "is_soluble": series[-1].order() == 1,
        "derived_series": [S.order() for S in series],
        "composition_factors": composition_factors(N, caps),
    }


def class_size_multiset(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> tuple[int, ...]:
    return tuple(sorted(conjugacy_classes(G, caps).sizes))


def is_characteristically_simple(N: PermGroup, caps: Caps = DEFAULT_CAPS):
    """``(answer, minimal normal subgroups of N)``."""
    G = as_group(N)
    n = G.order()
    if n == 1:
        return False, []
    lat = normal_subgroups(G, caps)
    mins = [lat.subgroups[i] for i in lat.atoms()]
    primes = set(_prime_factors(n))
    abelian = all(mul(a, b) == mul(b, a) for a in G.gens for b in G.gens)
    if abelian:
        ok = len(primes) == 1 and all(order_of(g) in (1, next(iter(primes))) for g in G.gens)
        return ok, mins
    prod = 1
    for M in mins:
        prod *= M.order()
    if prod != n:
        return False, mins
    sigs = set()
    for M in mins:
        own = normal_subgroups(as_group(M), caps)
        if len(own) != 2:
            return False, mins
        sigs.add((M.order(), class_size_multiset(as_group(M), caps)))
    return len(sigs) == 1, mins


def p_core(H: PermGroup, p: int, caps: Caps = DEFAULT_CAPS) -> Subgroup:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    G = as_group(H)
    lat = normal_subgroups(G, caps)
    best = 0
    for i, o in enumerate(lat.orders):
        if set(_prime_factors(o)) <= {p} and o > lat.orders[best]:
            best = i
    return lat.subgroups[best]


# Duality decomposition


@dataclass
class DualityDecomposition:
    family: list[int]
    S: int
    factors: list[int]
    matches: list[int]
    lattice: NormalLattice

    def subgroup(self, i: int) -> Subgroup:
        return self.lattice.subgroups[i]

    def factor_orders(self) -> list[int]:
        s = self.lattice.orders[self.S]
        return [self.lattice.orders[i] // s for i in self.factors]


def duality_decomposition(
    G: PermGroup,
    K: PermGroup,
    N: PermGroup,
    family: list[PermGroup] | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> DualityDecomposition:
    """Split ``K/S`` into minimal normal subgroups of ``G/S``, ``S`` the meet of the family."""
    lat = normal_subgroups(G, caps)
    ki = lat.index_of(K)
    ni = lat.index_of(N)
    if not lat.leq(ni, ki):
        raise NotNormal("N must lie in K")
    if family is None:
        fam = lat.maximal_below(ki, above=ni)
    else:
        fam = [lat.index_of(M) for M in family]
    si = lat.meet_all(fam) if fam else ki
    atoms = lat.minimal_above(si, within=ki)
    chosen: list[int] = []
    cur = si
    for a in atoms:
        if cur == ki:
            break
        if not lat.leq(a, cur):
            cur = lat.join(cur, a)
            chosen.append(a)
    matches = []
    for i, a in enumerate(chosen):
        others = lat.join_all([si] + [b for j, b in enumerate(chosen) if j != i])
        assert others in fam or family is not None, "complement is not maximal below K"
        matches.append(others)
    if chosen and is_perfect_section(lat, ki, si) and family is None:
        assert len(chosen) == len(fam), "perfect K/S must split into |family| factors"
    return DualityDecomposition(fam, si, chosen, matches, lat)


def is_perfect_section(lat: NormalLattice, upper: int, lower: int) -> bool:
    """Whether ``upper/lower`` is perfect: ``[A,A] lower = A``."""
    A = lat.subgroups[upper]
    B = lat.subgroups[lower]
    D = normal_closure(A, [comm(a, b) for a in A.gens for b in A.gens] + list(B.gens))
    return D.order() == A.order()
