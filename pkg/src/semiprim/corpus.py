"""Parameterized example families, each returned with a manifest of expected properties.

A manifest is a plain dict.  Recognised keys:

``order``, ``degree``
    exact values.
``semiprimitive``
    expected answer of the semiprimitivity test.
``plinth_orders``
    sorted orders of all plinths (so its length is the plinth count).
``regular``
    whether every plinth is regular.
``case``, ``types``
    structure case label and the sorted list of quotient types.
``it_type``
    innately transitive type of the action itself.
``normal_count``
    number of normal subgroups of the ambient group.
``within_caps``
    False for instances whose lattice is out of reach; only the order,
    degree and ``extra`` checks apply, and the lattice must raise
    :class:`CapacityExceeded`.
``extra``
    list of ``(name, check)`` with ``check(A, caps) -> bool``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable

from .action import TransitiveAction, action_of_transitive_group, make_action, quotient_action
from .analysis import (
    classify_it_type,
    classify_structure,
    plinth_report,
    sp_predicates,
)
from .config import DEFAULT_CAPS, Caps
from .errors import BadModule, CapacityExceeded, NotApplicable
from .glue import find_glue_mu, glue_actions
from .group import PermGroup, Subgroup, as_raw, generated_by, intersection, is_normal, join
from .lattice import as_group, conjugacy_classes, is_perfect, normal_subgroups
from .library import alternating, cyclic, dihedral as dihedral_group, frobenius, psl2, symmetric
from .perm import concat, inv, mul, order_of, raw_identity, table, to_raw
from .triples import build_from_triple, make_triple


# Building blocks


def _blocks(gens_per_copy: list[list], degrees: list[int]) -> list:
    """Generators placed on disjoint consecutive blocks of points."""
    out = []
    total = sum(degrees)
    off = 0
    for gens, d in zip(gens_per_copy, degrees):
        for g in gens:
            images = list(range(total))
            for x in range(d):
                images[off + x] = off + g[x]
            out.append(to_raw(images, total))
        off += d
    return out


def _tuple_elem(parts: list, degrees: list[int]):
    """The element acting as ``parts[i]`` on block ``i``."""
    images = []
    off = 0
    for g, d in zip(parts, degrees):
        images.extend(off + g[x] for x in range(d))
        off += d
    return to_raw(images, off)


def _copies_permuted(t, d: int, m: int):
    """Permutation of ``m`` blocks of size ``d`` moving block ``i`` to block ``t[i]``."""
    return to_raw([t[i] * d + x for i in range(m) for x in range(d)], d * m)


def _as_group(T) -> PermGroup:
    return T.group if hasattr(T, "group") and hasattr(T, "elements") else T


def _gens_of(M, degree: int) -> list:
    if isinstance(M, PermGroup):
        return list(M.gens)
    return [as_raw(x, degree) for x in M]


# many_plinths, hs_diag


def many_plinths(T=None, n: int = 3) -> TransitiveAction:
    """``T^n`` on the cosets of a diagonal copy of ``T``; every ``T^(n-1)`` is a regular plinth."""
    T = _as_group(T) if T is not None else alternating(5)
    d, t = T.degree, T.order()
    G = PermGroup(d * n, _blocks([T.gens] * n, [d] * n), order=t ** n, name=f"T^{n}")
    stab = Subgroup(G, [_tuple_elem([g] * n, [d] * n) for g in T.gens], order=t)
    A = TransitiveAction(G, stab, name=f"many_plinths(n={n})")
    A.manifest = {
        "order": t ** n,
        "degree": t ** (n - 1),
        "semiprimitive": True,
        "plinth_orders": [t ** (n - 1)] * n,
        "regular": True,
        "case": "b",
        "types": ["HS"] * (n * (n - 1) // 2),
        "within_caps": t ** n <= DEFAULT_CAPS.order_cap,
    }
    return A


def hs_diag(T=None) -> TransitiveAction:
    """``T`` extended by its inner automorphisms, with ``Inn(T)`` as the point stabilizer."""
    T = _as_group(T) if T is not None else alternating(5)
    tri = make_triple(T, [[mul(mul(inv(g), x), g) for x in T.gens] for g in T.gens])
    A = build_from_triple(tri)
    t = T.order()
    A.name = "hs_diag"
    A.manifest = {
        "order": t * t,
        "degree": t,
        "semiprimitive": True,
        "plinth_orders": [t, t],
        "regular": True,
        "case": "b",
        "types": ["HS"],
        "it_type": "HS",
    }
    return A


# nonisoplinth


def deleted_module(T: PermGroup, p: int = 2):
    """Matrices of the deleted permutation module of ``T`` over ``F_p`` (``p`` not dividing the degree).

    Basis ``e_i - e_last`` for ``i < last``; a sum-zero vector is recorded by its
    first ``n-1`` coordinates.
    """
    n = T.degree
    if n % p == 0:
        raise BadModule("this construction needs p coprime to the degree")
    mats = []
    for g in T.gens:
        rows = []
        for i in range(n - 1):
            v = [0] * n
            v[g[i]] = (v[g[i]] + 1) % p
            v[g[n - 1]] = (v[g[n - 1]] - 1) % p
            rows.append(tuple(v[: n - 1]))
        mats.append(rows)
    return p, n - 1, mats


def _vec_mat(v, M, p):
    d = len(v)
    out = [0] * len(M[0])
    for i in range(d):
        if v[i]:
            row = M[i]
            for j in range(len(out)):
                out[j] = (out[j] + v[i] * row[j]) % p
    return tuple(out)


def _mat_mul(A, B, p):
    return [_vec_mat(row, B, p) for row in A]


def _check_module(T: PermGroup, p: int, dim: int, mats) -> None:
    ident = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    if all(M == ident for M in mats):
        raise BadModule("module is not faithful")
    vectors = list(iproduct(range(p), repeat=dim)) if dim <= 6 else None
    if vectors is None:
        import random

        rng = random.Random(0)
        vectors = [tuple(rng.randrange(p) for _ in range(dim)) for _ in range(200)]
    for v in vectors:
        if not any(v):
            continue
        # span of the orbit closure of v
        basis: dict[int, tuple] = {}

        def reduce(w):
            w = list(w)
            for piv, b in basis.items():
                if w[piv]:
                    c = w[piv]
                    w = [(x - c * y) % p for x, y in zip(w, b)]
            return w

        def add(w):
            w = reduce(w)
            piv = next((i for i, x in enumerate(w) if x), None)
            if piv is None:
                return False
            c = pow(w[piv], p - 2, p)
            w = [(x * c) % p for x in w]
            for k, b in list(basis.items()):
                if b[piv]:
                    basis[k] = tuple((x - b[piv] * y) % p for x, y in zip(b, w))
            basis[piv] = tuple(w)
            return True

        queue = [v]
        add(v)
        for w in queue:
            for M in mats:
                u = _vec_mat(w, M, p)
                if add(u):
                    queue.append(u)
        if len(basis) < dim:
            raise BadModule("module has a proper non-zero invariant subspace")


class NonisoplinthGroup:
    """Triples ``(v, a, b)`` with ``v`` in the module and ``a, b`` in ``T``, multiplied as

    ``(v, a, b)(w, c, d) = (v + w^(b^-1), a c^(b^-1), b d)``.
    """

    def __init__(self, T: PermGroup, p: int, dim: int, mats):
        self.T, self.p, self.dim = T, p, dim
        # matrix of every element of T, by breadth-first search over T
        ident = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        self.matrix = {T.identity: ident}
        queue = [T.identity]
        for x in queue:
            for g, M in zip(T.gens, mats):
                y = mul(x, g)
                if y not in self.matrix:
                    self.matrix[y] = _mat_mul(self.matrix[x], M, p)
                    queue.append(y)
        self.zero = tuple([0] * dim)
        self.one = T.identity

    def act(self, v, b):
        return _vec_mat(v, self.matrix[b], self.p)

    def mul(self, x, y):
        v, a, b = x
        w, c, d = y
        bi = inv(b)
        vw = tuple((s + t) % self.p for s, t in zip(v, self.act(w, bi)))
        return (vw, mul(a, mul(mul(b, c), bi)), mul(b, d))

    def identity(self):
        return (self.zero, self.one, self.one)


def nonisoplinth(T: PermGroup | None = None, module=None, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """``X = (V x T) : T`` on the cosets of ``H = {(0, 1, a)}``, with two non-isomorphic plinths."""
    T = T if T is not None else alternating(5)
    p, dim, mats = module if module is not None else deleted_module(T, 2)
    _check_module(T, p, dim, mats)
    X = NonisoplinthGroup(T, p, dim, mats)
    nv = p ** dim
    m = T.degree

    def vec_index(v):
        k = 0
        for c in reversed(v):
            k = k * p + c
        return k

    vectors = list(iproduct(range(p), repeat=dim))
    vectors.sort(key=vec_index)
    one = X.one

    def perm_of(x):
        # on V: the point of (w, c, d) is w^d; on T's points: through x -> a b
        images = []
        for u in vectors:
            w, _, d = X.mul((u, one, one), x)
            images.append(vec_index(X.act(w, d)))
        ab = table(mul(x[1], x[2]))
        images.extend(nv + ab[i] for i in range(m))
        return to_raw(images, nv + m)

    basis = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    v_el = [(e, one, one) for e in basis]
    r_el = [(X.zero, g, one) for g in T.gens]
    h_el = [(X.zero, one, g) for g in T.gens]
    l_el = v_el + [(X.zero, g, inv(g)) for g in T.gens]
    t = T.order()
    G = PermGroup(nv + m, [perm_of(x) for x in v_el + r_el + h_el], name="nonisoplinth")
    assert G.order() == nv * t * t, "realization is not faithful"
    V = Subgroup(G, [perm_of(x) for x in v_el], order=nv)
    R = Subgroup(G, [perm_of(x) for x in r_el], order=t)
    K = Subgroup(G, V.gens + R.gens, order=nv * t)
    L = Subgroup(G, [perm_of(x) for x in l_el], order=nv * t)
    H = Subgroup(G, [perm_of(x) for x in h_el], order=t)
    A = TransitiveAction(G, H, name="nonisoplinth")
    A.parts = {"V": V, "R": R, "K": K, "L": L}
    A.group_law = X
    A.element_perm = perm_of

    def normals_are_vrkl(A, caps):
        lat = normal_subgroups(A.ambient, caps)
        proper = [N for N in lat.subgroups if 1 < N.order() < A.order()]
        want = [V, R, K, L]
        return len(proper) == 4 and all(any(N.equals(W) for N in proper) for W in want)

    def plinths_k_and_l(A, caps):
        rep = plinth_report(A, caps)
        found = {}
        for P, f in zip(rep.plinths, rep.flags):
            for name, W in (("K", K), ("L", L)):
                if P.equals(W):
                    found[name] = f
        return (
            set(found) == {"K", "L"}
            and found["K"]["regular"] and not found["K"]["perfect"]
            and found["L"]["regular"] and found["L"]["perfect"]
        )

    def quotient_types(A, caps):
        qv = classify_it_type(quotient_action(A, V, caps), caps).type
        qr = classify_it_type(quotient_action(A, R, caps), caps).type
        return qv == "HS" and qr == "HA"

    A.manifest = {
        "order": nv * t * t,
        "degree": nv * t,
        "semiprimitive": True,
        "plinth_orders": [nv * t, nv * t],
        "regular": True,
        "normal_count": 6,
        "extra": [
            ("normals are V, R, K, L", normals_are_vrkl),
            ("K non-perfect and L perfect regular plinths", plinths_k_and_l),
            ("X/V is HS and X/R is HA", quotient_types),
        ],
    }
    return A


# Wildness and innately transitive examples


def wildness_wreath(A: TransitiveAction | None = None, T: PermGroup | None = None, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """``T wr G`` (``G`` acting on the points of ``A``) on the cosets of ``A``'s stabilizer."""
    if A is None:
        A = action_of_transitive_group(symmetric(3), name="Sym(3)")
    T = T if T is not None else alternating(5)
    img, proj = A.realize(caps)
    n, d, t = img.degree, T.degree, T.order()
    base = _blocks([T.gens] * n, [d] * n)
    top = [_copies_permuted(g, d, n) for g in img.gens]
    order = t ** n * img.order()
    W = PermGroup(n * d, base + top, order=order, name="wildness")
    stab = Subgroup(W, [_copies_permuted(proj.raw_image(h), d, n) for h in A.stab.gens], order=A.stab.order())
    K = plinth_report(A, caps).plinths[0]
    kimg = [_copies_permuted(proj.raw_image(k), d, n) for k in K.gens]
    plinth = Subgroup(W, base + kimg, order=t ** n * K.order())
    B = TransitiveAction(W, stab, name="wildness_wreath")
    B.parts = {"plinth": plinth}

    def plinth_is_tn_k(B, caps):
        rep = plinth_report(B, caps)
        return len(rep.plinths) == 1 and rep.plinths[0].equals(plinth)

    B.manifest = {
        "order": order,
        "degree": order // A.stab.order(),
        "semiprimitive": True,
        "plinth_orders": [plinth.order()],
        "extra": [("plinth is T^n K", plinth_is_tn_k)],
    }
    return B


def asq_with_semiregular(n: int = 5, M=None) -> TransitiveAction:
    """``Alt(n) x M`` on the cosets of ``{(m v, m)}``; ``M`` is a normal semiregular subgroup outside the plinth."""
    An = alternating(n)
    mg = _gens_of(M, n) if M is not None else [to_raw([1, 0, 3, 2] + list(range(4, n)), n)]
    Mg = generated_by(An, mg)
    # V: a prime-order element of Alt(n) commuting with M and outside M
    best = None
    for x in An.chain.elements():
        o = order_of(x)
        if o == 1 or any(o % q == 0 for q in range(2, o)):
            continue
        if Mg.contains_raw(x) or any(mul(x, m) != mul(m, x) for m in Mg.gens):
            continue
        if best is None or (o, x) < best:
            best = (o, x)
    if best is None:
        raise NotApplicable("no non-trivial V commuting with M")
    v = best[1]
    G = PermGroup(2 * n, _blocks([An.gens, Mg.gens], [n, n]), order=An.order() * Mg.order(), name="asq")
    idn = raw_identity(n)
    hg = [_tuple_elem([m, m], [n, n]) for m in Mg.gens] + [_tuple_elem([v, idn], [n, n])]
    H = Subgroup(G, hg, order=Mg.order() * order_of(v))
    A = TransitiveAction(G, H, name="asq_with_semiregular")
    Mn = Subgroup(G, [_tuple_elem([idn, m], [n, n]) for m in Mg.gens], order=Mg.order())
    Kp = Subgroup(G, [_tuple_elem([a, idn], [n, n]) for a in An.gens], order=An.order())
    A.parts = {"M": Mn, "plinth": Kp}

    def m_semiregular_outside(A, caps):
        return is_normal(A.ambient, Mn) and A.is_semiregular_normal(Mn) and not Mn.is_subgroup_of(Kp)

    A.manifest = {
        "order": An.order() * Mg.order(),
        "degree": An.order() // order_of(v),
        "semiprimitive": True,
        "plinth_orders": [An.order()],
        "regular": False,
        "case": "a_i",
        "types": ["ASQ_nonreg"],
        "it_type": "ASQ_nonreg",
        "extra": [("M normal, semiregular, not in the plinth", m_semiregular_outside)],
    }
    return A


def centerfree_perfect(K: PermGroup | None = None, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """``K`` on the cosets of ``<h>``, ``h`` a 2-element mapping to an involution in every simple quotient."""
    K = K if K is not None else alternating(5)
    K = as_group(K)
    if not is_perfect(K):
        raise NotApplicable("K is not perfect")
    lat = normal_subgroups(K, caps)
    if any(N.order() > 1 and all(mul(x, g) == mul(g, x) for x in N.gens for g in K.gens) for N in lat.subgroups):
        raise NotApplicable("K has a non-trivial centre")
    top = lat.top
    maximal = [i for i in range(len(lat.keys)) if i != top and not any(j != top and j != i and lat.leq(i, j) for j in range(len(lat.keys)))]
    cc = conjugacy_classes(K, caps)
    choice = None
    for r, o in sorted(zip(cc.representatives, cc.orders), key=lambda p: (p[1], p[0])):
        if o < 2 or o & (o - 1):
            continue
        r2 = mul(r, r)
        if all(not lat.subgroups[m].contains_raw(r) and lat.subgroups[m].contains_raw(r2) for m in maximal):
            choice = r
            break
    if choice is None:
        raise NotApplicable("no 2-element projecting to an involution in every simple quotient")
    H = generated_by(K, [choice])
    A = make_action(K, H, caps, name="centerfree_perfect")
    A.manifest = {
        "order": K.order(),
        "degree": K.order() // H.order(),
        "semiprimitive": True,
        "plinth_orders": [K.order()],
        "regular": False,
    }
    return A


def dihedral(n: int) -> TransitiveAction:
    """The dihedral group of order ``2n`` on the vertices of an ``n``-gon."""
    A = action_of_transitive_group(dihedral_group(n), name=f"D{2 * n}")
    odd = n % 2 == 1
    A.manifest = {"order": 2 * n, "degree": n, "semiprimitive": odd or n == 2}
    if odd:
        divisors = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
        A.manifest.update(
            {
                "plinth_orders": [n],
                "regular": True,
                "case": "a_ii",
                "types": ["HA"] * len(divisors),
            }
        )
    return A


# Small named actions used across the corpus


def sym7_on_42() -> TransitiveAction:
    """``Sym(7)`` on the cosets of ``Alt(5) x <(5 6)>``."""
    G = symmetric(7)
    a5 = alternating(5)
    H = Subgroup(G, [to_raw(list(x) + [5, 6], 7) for x in a5.gens] + [to_raw([0, 1, 2, 3, 4, 6, 5], 7)], order=120)
    A = TransitiveAction(G, H, name="Sym(7) on 42")
    A.manifest = {"order": 5040, "degree": 42, "semiprimitive": True, "plinth_orders": [2520], "regular": False,
                  "case": "a_i", "types": ["AS_nonreg"], "it_type": "AS_nonreg"}
    return A


def _wreath2(T: PermGroup):
    d = T.degree
    swap = _copies_permuted([1, 0], d, 2)
    G = PermGroup(2 * d, _blocks([T.gens, T.gens], [d, d]) + [swap], order=2 * T.order() ** 2)
    return G, swap


def sd_alt5_wr2() -> TransitiveAction:
    """``Alt(5) wr C2`` on the cosets of the normalizer of a diagonal ``Alt(5)``."""
    T = alternating(5)
    G, swap = _wreath2(T)
    H = Subgroup(G, [_tuple_elem([g, g], [5, 5]) for g in T.gens] + [swap], order=120)
    A = TransitiveAction(G, H, name="Alt(5) wr C2 on 60")
    A.manifest = {"order": 7200, "degree": 60, "semiprimitive": True, "plinth_orders": [3600], "regular": False,
                  "case": "a_i", "types": ["SD"], "it_type": "SD"}
    return A


def tw_alt5_wr2() -> TransitiveAction:
    T = alternating(5)
    G, swap = _wreath2(T)
    H = Subgroup(G, [swap], order=2)
    A = TransitiveAction(G, H, name="Alt(5) wr C2 on 3600")
    A.manifest = {"order": 7200, "degree": 3600, "semiprimitive": True, "plinth_orders": [3600], "regular": True,
                  "case": "a_ii", "types": ["TW"], "it_type": "TW"}
    return A


def alt5_on_5() -> TransitiveAction:
    A = action_of_transitive_group(alternating(5), name="Alt(5) on 5")
    A.manifest = {"order": 60, "degree": 5, "semiprimitive": True, "plinth_orders": [60], "regular": False,
                  "case": "a_i", "types": ["AS_nonreg"], "it_type": "AS_nonreg"}
    return A


def _a4_in(G: PermGroup) -> Subgroup:
    """The first subgroup of order 12 generated by an element of order 3 and one of order 2."""
    els = G.chain.elements()
    threes = [x for x in els if order_of(x) == 3]
    twos = [x for x in els if order_of(x) == 2]
    for a in threes:
        for b in twos:
            S = generated_by(G, [a, b])
            if S.order() == 12:
                return S
    raise NotApplicable("no subgroup of order 12")


def psl27_on_14() -> TransitiveAction:
    G = psl2(7)
    A = make_action(G, _a4_in(G), name="PSL(2,7) on 14")
    A.manifest = {"order": 168, "degree": 14, "semiprimitive": True, "plinth_orders": [168], "regular": False,
                  "case": "a_i", "types": ["AS_nonreg"], "it_type": "AS_nonreg"}
    return A


def sym5_on_60() -> TransitiveAction:
    G = symmetric(5)
    A = TransitiveAction(G, Subgroup(G, [to_raw([1, 0, 2, 3, 4], 5)], order=2), name="Sym(5) on 60")
    A.manifest = {"order": 120, "degree": 60, "semiprimitive": True, "plinth_orders": [60], "regular": True,
                  "case": "a_ii", "types": ["AS_reg"], "it_type": "AS_reg"}
    return A


def alt6_x_c4() -> TransitiveAction:
    """``Alt(6) x C4`` on the cosets of ``<(t, c)>`` with ``t`` of order 4: type ASQ_reg."""
    a6 = alternating(6)
    c4 = cyclic(4)
    G = PermGroup(10, _blocks([a6.gens, c4.gens], [6, 4]), order=1440, name="Alt(6) x C4")
    t = to_raw([1, 2, 3, 0, 5, 4], 6)
    H = Subgroup(G, [_tuple_elem([t, c4.gens[0]], [6, 4])], order=4)
    A = TransitiveAction(G, H, name="Alt(6) x C4 on 360")
    A.manifest = {"order": 1440, "degree": 360, "semiprimitive": True, "plinth_orders": [360], "regular": True,
                  "case": "a_ii", "types": ["ASQ_reg"], "it_type": "ASQ_reg"}
    return A


def frob20() -> TransitiveAction:
    A = action_of_transitive_group(frobenius(5), name="F20 on 5")
    A.manifest = {"order": 20, "degree": 5, "semiprimitive": True, "plinth_orders": [5], "regular": True,
                  "case": "a_ii", "types": ["HA"], "it_type": "HA"}
    return A


def sym4_natural() -> TransitiveAction:
    A = action_of_transitive_group(symmetric(4), name="Sym(4) on 4")
    A.manifest = {"order": 24, "degree": 4, "semiprimitive": True, "plinth_orders": [4], "regular": True,
                  "case": "a_ii", "types": ["HA"], "it_type": "HA"}
    return A


def pq_alt5_c4() -> TransitiveAction:
    """``Alt(5)^2 : C4`` with the generator acting as ``c_(1,t) sigma``: type PQ."""
    T = alternating(5)
    t = to_raw([1, 0, 3, 2, 4], 5)
    idn = raw_identity(5)
    swap = _copies_permuted([1, 0], 5, 2)
    pi = mul(_tuple_elem([idn, t], [5, 5]), swap)
    c4 = cyclic(4).gens[0]
    gens = [concat(g, raw_identity(4)) for g in _blocks([T.gens, T.gens], [5, 5])]
    h = concat(pi, c4)
    G = PermGroup(14, gens + [h], order=14400, name="Alt(5)^2 : C4")
    A = TransitiveAction(G, Subgroup(G, [h], order=4), name="PQ on 3600")
    A.manifest = {"order": 14400, "degree": 3600, "semiprimitive": True, "plinth_orders": [3600], "regular": True,
                  "case": "a_ii", "types": ["PQ"], "it_type": "PQ"}
    return A


def dq_alt5() -> TransitiveAction:
    """``(Alt(5) wr C2) x Alt(5)`` with stabilizer ``{(x, x, x)} x <sigma>``: type DQ."""
    T = alternating(5)
    d = [5, 5, 5]
    swap = concat(_copies_permuted([1, 0], 5, 2), raw_identity(5))
    G = PermGroup(15, _blocks([T.gens] * 3, d) + [swap], order=2 * 60 ** 3, name="(Alt(5) wr C2) x Alt(5)")
    H = Subgroup(G, [_tuple_elem([g] * 3, d) for g in T.gens] + [swap], order=120)
    A = TransitiveAction(G, H, name="DQ on 3600")
    A.manifest = {"order": 432000, "degree": 3600, "semiprimitive": True, "plinth_orders": [3600], "regular": True,
                  "case": "a_ii", "types": ["DQ"], "it_type": "DQ"}
    return A


def _glued(A1: TransitiveAction, A2: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    mu = find_glue_mu(A1, A2, caps=caps)
    if mu is None:
        raise NotApplicable("no compatible isomorphism between the stabilizers")
    return glue_actions(A1, A2, mu, caps=caps)


def glue_alt5_psl27() -> TransitiveAction:
    A = _glued(alt5_on_5(), psl27_on_14())
    A.name = "Alt(5) on 5 * PSL(2,7) on 14"
    A.manifest = {"order": 60 * 168, "degree": 840, "semiprimitive": True, "plinth_orders": [60 * 168], "regular": False,
                  "case": "a_i", "types": ["AS_nonreg", "AS_nonreg"]}
    return A


def glue_d6_d10() -> TransitiveAction:
    A = _glued(dihedral(3), dihedral(5))
    A.name = "D6 * D10"
    A.manifest = {"order": 30, "degree": 15, "semiprimitive": True, "plinth_orders": [15], "regular": True,
                  "case": "a_ii", "types": ["HA", "HA"]}
    return A


# Non-semiprimitive actions


def negative(tag: str) -> TransitiveAction:
    if tag == "d8":
        A = action_of_transitive_group(dihedral_group(4), name="D8 on 4")
    elif tag == "sym4_on_6":
        G = symmetric(4)
        A = make_action(G, generated_by(G, [to_raw([1, 0, 2, 3], 4), to_raw([0, 1, 3, 2], 4)]), name="Sym(4) on 6")
    elif tag == "alt4_on_6":
        G = alternating(4)
        A = make_action(G, generated_by(G, [to_raw([1, 0, 3, 2], 4)]), name="Alt(4) on 6")
    elif tag == "c2_wr_c2":
        G = PermGroup(4, [to_raw([1, 0, 2, 3], 4), to_raw([2, 3, 0, 1], 4)], order=8)
        A = action_of_transitive_group(G, name="C2 wr C2")
    else:
        raise ValueError(f"unknown negative example {tag!r}")
    A.manifest = {"order": A.order(), "degree": A.degree, "semiprimitive": False}
    return A


# Examples of glued products with prescribed quotient types


def s_power(T: PermGroup | None = None, ell: int = 1, n: int = 3) -> TransitiveAction:
    """``S^n : Sym(ell)`` with ``S = T^ell``; ``H = T^ell : Sym(ell)`` identifying matching copies."""
    T = T if T is not None else alternating(5)
    d, t = T.degree, T.order()
    m = n * ell
    base = _blocks([T.gens] * m, [d] * m)
    tops = []
    if ell > 1:
        for s in symmetric(ell).gens:
            tops.append(_copies_permuted([j * ell + s[i] for j in range(n) for i in range(ell)], d, m))
    order = t ** m * (1 if ell == 1 else _fact(ell))
    G = PermGroup(d * m, base + tops, order=order, name=f"S^{n}:Sym({ell})")
    hg = []
    for i in range(ell):
        for g in T.gens:
            parts = [g if c % ell == i else raw_identity(d) for c in range(m)]
            hg.append(_tuple_elem(parts, [d] * m))
    H = Subgroup(G, hg + tops, order=t ** ell * (1 if ell == 1 else _fact(ell)))
    A = TransitiveAction(G, H, name=f"s_power(ell={ell}, n={n})")
    hs = "HS" if ell == 1 else "HC"
    A.manifest = {
        "order": order,
        "degree": order // H.order(),
        "semiprimitive": True,
        "plinth_orders": [t ** (ell * (n - 1))] * n,
        "regular": True,
        "case": "b",
        "types": [hs] * (n * (n - 1) // 2),
        "within_caps": order <= DEFAULT_CAPS.order_cap,
    }
    return A


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def cd_alt5_v4() -> TransitiveAction:
    """``Alt(5)^4 : V4`` on the cosets of ``(Alt(5) x Alt(5)) : <sigma, tau>`` (two diagonals)."""
    T = alternating(5)
    d = [5] * 4
    sigma = _copies_permuted([2, 3, 0, 1], 5, 4)
    tau = _copies_permuted([1, 0, 3, 2], 5, 4)
    idn = raw_identity(5)
    G = PermGroup(20, _blocks([T.gens] * 4, d) + [sigma, tau], order=60 ** 4 * 4, name="Alt(5)^4 : V4")
    hg = [_tuple_elem([g, g, idn, idn], d) for g in T.gens] + [_tuple_elem([idn, idn, g, g], d) for g in T.gens]
    H = Subgroup(G, hg + [sigma, tau], order=3600 * 4)
    A = TransitiveAction(G, H, name="CD on 3600")
    A.manifest = {"order": 60 ** 4 * 4, "degree": 3600, "within_caps": False}
    return A


def _factor_types(expected: list[str], factors: list[TransitiveAction]):
    def check(A, caps):
        return sorted(classify_it_type(F, caps).type for F in factors) == sorted(expected)

    return check


def point_action(A: TransitiveAction, K: PermGroup, caps: Caps = DEFAULT_CAPS):
    """The realized permutation group of ``A`` as an action, with the image of ``K``."""
    img, proj = A.realize(caps)
    B = action_of_transitive_group(img, 0, name=A.name)
    B.manifest = dict(A.manifest)
    return B, Subgroup(img, [proj.raw_image(k) for k in K.gens], order=K.order())


def big_glue(caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """``Sym(7)`` on 42 glued with ``Alt(5) wr C2`` on 60, realized on 102 points."""
    B1, B2 = sym7_on_42(), sd_alt5_wr2()
    A1, K1 = point_action(B1, Subgroup(B1.ambient, alternating(7).gens, order=2520), caps)
    A2, K2 = point_action(B2, Subgroup(B2.ambient, _blocks([alternating(5).gens] * 2, [5, 5]), order=3600), caps)
    mu = find_glue_mu(A1, A2, K1, K2, caps)
    if mu is None:
        raise NotApplicable("no compatible isomorphism")
    A, plinth = glue_actions(A1, A2, mu, K1, K2, caps, with_plinth=True)
    A.name = "Sym(7) on 42 * Alt(5) wr C2 on 60"
    A.parts = {"plinth": plinth, "factors": (A1, A2), "K1": K1, "K2": K2}
    id1, id2 = raw_identity(42), raw_identity(60)
    f1 = Subgroup(A.ambient, [concat(k, id2) for k in K1.gens], order=2520)
    f2 = Subgroup(A.ambient, [concat(id1, k) for k in K2.gens], order=3600)

    def plinth_transitive(A, caps):
        return A.is_transitive_normal(plinth) and A.meet_order(plinth) == 60

    def named_normals(A, caps):
        G = A.ambient
        return (
            plinth.order() == 2520 * 3600
            and all(is_normal(G, N) for N in (plinth, f1, f2))
            and G.order() // plinth.order() == 2
        )

    A.manifest = {
        "order": 18_144_000,
        "degree": 151_200,
        "within_caps": False,
        "extra": [
            ("realization degree 102", lambda A, caps: A.ambient.degree == 102),
            ("stabilizer order 120", lambda A, caps: A.stab.order() == 120),
            ("plinth transitive with K meet H of order 60", plinth_transitive),
            ("Alt(7) x Alt(5)^2 and its factors are normal of index 2", named_normals),
            ("factor types AS_nonreg and SD", _factor_types(["AS_nonreg", "SD"], [A1, A2])),
        ],
    }
    return A


def sec6_family(tag: str, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
    """Desk-scale instances of the glued-product examples (tags ``eg6.1`` to ``eg6.6``)."""
    if tag == "eg6.1":
        return big_glue(caps)
    if tag == "eg6.2":
        A = cd_alt5_v4()
        K = Subgroup(A.ambient, _blocks([alternating(5).gens] * 4, [5] * 4), order=60 ** 4)
        A.manifest["extra"] = [
            ("plinth Alt(5)^4 transitive with K meet H of order 3600",
             lambda A, caps: A.is_transitive_normal(K) and A.meet_order(K) == 3600),
        ]
        return A
    if tag == "eg6.3":
        A = _glued(frob20(), pq_alt5_c4(), caps)
        A.name = "F20 * PQ"
        A.manifest = {"order": 72000, "degree": 18000, "semiprimitive": True, "plinth_orders": [18000],
                      "regular": True, "case": "a_ii", "types": ["HA", "PQ"]}
        return A
    if tag == "eg6.4":
        return dq_alt5()
    if tag == "eg6.5":
        return s_power(alternating(5), 1, 3)
    if tag == "eg6.5-hc":
        return s_power(alternating(5), 2, 2)
    if tag == "eg6.6":
        return hs_with_asq()
    raise ValueError(f"unknown example tag {tag!r}")


def hs_with_asq() -> TransitiveAction:
    """``Alt(6) x Alt(5) x Alt(5)`` on the cosets of ``{(y, y, y)}`` with ``Alt(5) < Alt(6)``."""
    a6, a5 = alternating(6), alternating(5)
    d = [6, 5, 5]
    G = PermGroup(16, _blocks([a6.gens, a5.gens, a5.gens], d), order=360 * 3600, name="Alt(6) x Alt(5)^2")
    H = Subgroup(G, [_tuple_elem([to_raw(list(g) + [5], 6), g, g], d) for g in a5.gens], order=60)
    A = TransitiveAction(G, H, name="HS with ASQ quotient")
    idn5, idn6 = raw_identity(5), raw_identity(6)
    S1 = Subgroup(G, [_tuple_elem([idn6, g, idn5], d) for g in a5.gens], order=60)
    T6 = Subgroup(G, [_tuple_elem([g, idn5, idn5], d) for g in a6.gens], order=360)

    def quotient_by_s1(A, caps):
        return classify_it_type(quotient_action(A, S1, caps), caps).type == "ASQ_reg"

    def t_is_meet(A, caps):
        rep = plinth_report(A, caps)
        return len(rep.plinths) == 2 and intersection(rep.plinths[0], rep.plinths[1], caps, parent=G).order() == 360 \
            and all(T6.is_subgroup_of(P) for P in rep.plinths)

    A.manifest = {
        "order": 360 * 3600,
        "degree": 21600,
        "semiprimitive": True,
        "plinth_orders": [21600, 21600],
        "regular": True,
        "case": "b",
        "types": ["HS"],
        "extra": [("G/S1 is ASQ_reg", quotient_by_s1), ("the plinths meet in Alt(6)", t_is_meet)],
    }
    return A


# The corpus


@dataclass
class CorpusEntry:
    name: str
    tags: tuple
    build: Callable[[], TransitiveAction]


CORPUS: list[CorpusEntry] = [
    CorpusEntry("sym3", ("dihedral", "small"), lambda: dihedral(3)),
    CorpusEntry("d10", ("dihedral", "small"), lambda: dihedral(5)),
    CorpusEntry("d18", ("dihedral", "small"), lambda: dihedral(9)),
    CorpusEntry("d30", ("dihedral", "small", "glue"), lambda: dihedral(15)),
    CorpusEntry("glue_d6_d10", ("glue", "small"), glue_d6_d10),
    CorpusEntry("frob20", ("small",), frob20),
    CorpusEntry("sym4", ("small",), sym4_natural),
    CorpusEntry("alt5_on_5", ("small",), alt5_on_5),
    CorpusEntry("psl27_on_14", ("small",), psl27_on_14),
    CorpusEntry("sym5_on_60", ("small",), sym5_on_60),
    CorpusEntry("alt6_x_c4", ("small",), alt6_x_c4),
    CorpusEntry("centerfree_perfect", ("small", "wildness"), centerfree_perfect),
    CorpusEntry("asq_with_semiregular", ("small", "wildness"), asq_with_semiregular),
    CorpusEntry("hs_diag", ("medium", "plinths"), hs_diag),
    CorpusEntry("many_plinths_2", ("medium", "plinths"), lambda: many_plinths(alternating(5), 2)),
    CorpusEntry("sd_alt5_wr2", ("medium",), sd_alt5_wr2),
    CorpusEntry("tw_alt5_wr2", ("medium",), tw_alt5_wr2),
    CorpusEntry("glue_alt5_psl27", ("medium", "glue"), glue_alt5_psl27),
    CorpusEntry("pq_alt5_c4", ("medium",), pq_alt5_c4),
    CorpusEntry("nonisoplinth", ("medium", "plinths"), nonisoplinth),
    CorpusEntry("eg6.3", ("large", "sec6", "glue"), lambda: sec6_family("eg6.3")),
    CorpusEntry("many_plinths_3", ("large", "plinths"), lambda: many_plinths(alternating(5), 3)),
    CorpusEntry("eg6.4", ("large", "sec6"), lambda: sec6_family("eg6.4")),
    CorpusEntry("eg6.6", ("large", "sec6"), lambda: sec6_family("eg6.6")),
    CorpusEntry("wildness_wreath", ("large", "wildness"), wildness_wreath),
    CorpusEntry("eg6.1", ("capacity", "sec6", "glue"), lambda: sec6_family("eg6.1")),
    CorpusEntry("eg6.2", ("capacity", "sec6"), lambda: sec6_family("eg6.2")),
    CorpusEntry("eg6.5-hc", ("capacity", "sec6"), lambda: sec6_family("eg6.5-hc")),
    CorpusEntry("neg_d8", ("negative", "small"), lambda: negative("d8")),
    CorpusEntry("neg_sym4_on_6", ("negative", "small"), lambda: negative("sym4_on_6")),
    CorpusEntry("neg_alt4_on_6", ("negative", "small"), lambda: negative("alt4_on_6")),
    CorpusEntry("neg_c2_wr_c2", ("negative", "small"), lambda: negative("c2_wr_c2")),
]


def corpus_entries(tag: str | None = None) -> list[CorpusEntry]:
    if tag is None:
        return list(CORPUS)
    return [e for e in CORPUS if tag in e.tags or e.name == tag]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def run_manifest(A: TransitiveAction, caps: Caps = DEFAULT_CAPS) -> list[CheckResult]:
    """Evaluate every manifest assertion of ``A``."""
    m = A.manifest
    out: list[CheckResult] = []

    def record(name, expected, got):
        out.append(CheckResult(name, expected == got, f"expected {expected}, got {got}"))

    if "order" in m:
        record("order", m["order"], A.order())
    if "degree" in m:
        record("degree", m["degree"], A.degree)
    if m.get("within_caps", True):
        sp = sp_predicates(A, caps).is_semiprimitive
        if "semiprimitive" in m:
            record("semiprimitive", m["semiprimitive"], sp)
        if "normal_count" in m:
            record("normal_count", m["normal_count"], len(normal_subgroups(A.ambient, caps).keys))
        if sp and ("plinth_orders" in m or "regular" in m):
            rep = plinth_report(A, caps)
            if "plinth_orders" in m:
                record("plinth_orders", m["plinth_orders"], sorted(f["order"] for f in rep.flags))
            if "regular" in m:
                record("regular", m["regular"], all(f["regular"] for f in rep.flags))
        if "it_type" in m:
            record("it_type", m["it_type"], classify_it_type(A, caps).type)
        if sp and ("case" in m or "types" in m):
            rep = classify_structure(A, caps)
            if "case" in m:
                record("case", m["case"], rep.case)
            if "types" in m:
                record("types", sorted(m["types"]), sorted(rep.quotient_types))
    else:
        try:
            normal_subgroups(A.ambient, caps)
            out.append(CheckResult("capacity", False, "lattice unexpectedly within caps"))
        except CapacityExceeded as e:
            out.append(CheckResult("capacity", True, str(e)))
    for name, check in m.get("extra", []):
        try:
            ok = bool(check(A, caps))
            out.append(CheckResult(name, ok, ""))
        except CapacityExceeded as e:
            out.append(CheckResult(name, False, f"capacity: {e}"))
    return out
