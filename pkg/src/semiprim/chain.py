"""Stabilizer chains built by the Schreier-Sims algorithm.

Base points are chosen by a fixed rule: the first point (in natural order, or
in a caller-supplied priority order) moved by the element that forces a new
level.  Given the same generators the chain is always the same.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .perm import (
    apply,
    first_moved,
    inv_table,
    raw_identity,
    table,
)


class Level:
    __slots__ = ("point", "gens", "gtabs", "orbit", "trans", "itab", "done")

    def __init__(self, point: int):
        self.point = point
        self.gens: list = []
        self.gtabs: list = []
        self.orbit: list[int] = []
        self.trans: dict = {}
        self.itab: dict = {}
        self.done: set = set()


class StabChain:
    """Base, strong generators and explicit transversals for a group."""

    def __init__(self, degree: int, levels: list[Level]):
        self.degree = degree
        self.levels = levels
        self._identity = raw_identity(degree)

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(lv.orbit) for lv in self.levels]

    def order(self) -> int:
        o = 1
        for lv in self.levels:
            o *= len(lv.orbit)
        return o

    def strong_generators(self, level: int = 0) -> list:
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)

    def sift(self, g, start: int = 0):
        """Return ``(residue, level)``; ``level == len(levels)`` means it sifted through."""
        levels = self.levels
        for idx in range(start, len(levels)):
            lv = levels[idx]
            d = g[lv.point]
            if d == lv.point:
                continue
            t = lv.itab.get(d)
            if t is None:
                return g, idx
            g = apply(g, t)
        return g, len(levels)

    def contains(self, g) -> bool:
        h, j = self.sift(g)
        return j == len(self.levels) and h == self._identity

    def elements(self) -> list:
        """All group elements, in a fixed order starting with the identity."""
        elems = [self._identity]
        for lv in reversed(self.levels):
            tabs = [table(lv.trans[d]) for d in lv.orbit]
            elems = [apply(e, t) for e in elems for t in tabs]
        return elems

    def random_element(self, rng: random.Random):
        g = self._identity
        for lv in reversed(self.levels):
            g = apply(g, table(lv.trans[rng.choice(lv.orbit)]))
        return g

    def check(self) -> bool:
        """Self-check: every transversal element maps the base point to its label."""
        for lv in self.levels:
            for d, u in lv.trans.items():
                if u[lv.point] != d:
                    return False
        return True


def _extend_orbit(lv: Level, new_count: int) -> None:
    """Grow the orbit after ``new_count`` generators were appended to ``lv.gens``."""
    orbit = lv.orbit
    trans = lv.trans
    itab = lv.itab
    if not orbit:
        ident = raw_identity(len(lv.gens[0])) if lv.gens else None
        if ident is None:
            return
        orbit.append(lv.point)
        trans[lv.point] = ident
        itab[lv.point] = table(ident)
        old = 0
    else:
        old = len(orbit)
        new_tabs = lv.gtabs[len(lv.gtabs) - new_count:]
        new_gens = lv.gens[len(lv.gens) - new_count:]
        for idx in range(old):
            d = orbit[idx]
            u = trans[d]
            for s, st in zip(new_gens, new_tabs):
                e = s[d]
                if e not in trans:
                    w = apply(u, st)
                    trans[e] = w
                    itab[e] = inv_table(w)
                    orbit.append(e)
    idx = old if old else 0
    gens = lv.gens
    tabs = lv.gtabs
    while idx < len(orbit):
        d = orbit[idx]
        u = trans[d]
        for s, st in zip(gens, tabs):
            e = s[d]
            if e not in trans:
                w = apply(u, st)
                trans[e] = w
                itab[e] = inv_table(w)
                orbit.append(e)
        idx += 1


class _Builder:
    def __init__(self, degree: int, prefix: Sequence[int], priority: Sequence[int] | None):
        self.degree = degree
        self.priority = priority
        self.identity = raw_identity(degree)
        self.levels: list[Level] = []
        for p in prefix:
            lv = Level(p)
            lv.orbit.append(p)
            lv.trans[p] = self.identity
            lv.itab[p] = table(self.identity)
            self.levels.append(lv)
        self.chain = StabChain(degree, self.levels)

    def insert(self, h, j: int) -> None:
        """Add ``h`` (fixing the first ``j`` base points) as a strong generator."""
        if j == len(self.levels):
            p = first_moved(h, self.priority)
            if p < 0 and self.priority is not None:
                p = first_moved(h)
            lv = Level(p)
            lv.orbit.append(p)
            lv.trans[p] = self.identity
            lv.itab[p] = table(self.identity)
            self.levels.append(lv)
        ht = table(h)
        for l in range(j + 1):
            lv = self.levels[l]
            lv.gens.append(h)
            lv.gtabs.append(ht)
            _extend_orbit(lv, 1)

    def add_generator(self, g) -> bool:
        h, j = self.chain.sift(g)
        if j == len(self.levels) and h == self.identity:
            return False
        self.insert(h, j)
        return True

    def complete(self) -> None:
        levels = self.levels
        ident = self.identity
        i = len(levels) - 1
        while i >= 0:
            lv = levels[i]
            found = False
            oi = 0
            while oi < len(lv.orbit) and not found:
                d = lv.orbit[oi]
                ud = lv.trans[d]
                for si in range(len(lv.gens)):
                    key = (d, si)
                    if key in lv.done:
                        continue
                    lv.done.add(key)
                    s = lv.gens[si]
                    e = s[d]
                    sg = apply(apply(ud, lv.gtabs[si]), lv.itab[e])
                    if sg == ident:
                        continue
                    h, j = self.chain.sift(sg, i + 1)
                    if j < len(levels) or h != ident:
                        self.insert(h, j)
                        i = j
                        found = True
                        break
                oi += 1
            if not found:
                i -= 1


def _random_elements(gens: list, rng: random.Random):
    """Product-replacement random elements (deterministic for a seeded rng)."""
    state = list(gens)
    while len(state) < 10:
        state.extend(gens)
    ident = raw_identity(len(gens[0]))
    acc = ident
    m = len(state)

    def step():
        nonlocal acc
        i = rng.randrange(m)
        j = rng.randrange(m - 1)
        if j >= i:
            j += 1
        if rng.random() < 0.5:
            state[i] = apply(state[i], table(state[j]))
        else:
            state[i] = apply(state[j], table(state[i]))
        acc = apply(acc, table(state[i]))
        return acc

    for _ in range(30):
        step()
    while True:
        yield step()


def build_chain(
    degree: int,
    gens: Iterable,
    prefix: Sequence[int] = (),
    priority: Sequence[int] | None = None,
    known_order: int | None = None,
    seed: int = 0,
) -> StabChain:
    """Stabilizer chain for the group generated by raw permutations ``gens``.

    With ``known_order`` the chain is filled from seeded random elements until
    the orbit product reaches that order, which certifies completeness; any
    shortfall falls back to the deterministic algorithm.
    """
    ident = raw_identity(degree)
    gens = [g for g in gens if g != ident]
    b = _Builder(degree, prefix, priority)
    if not gens:
        return b.chain
    if not prefix:
        if priority is None:
            first = min(first_moved(g) for g in gens)
        else:
            moved = set()
            for g in gens:
                moved.update(i for i, x in enumerate(g) if i != x)
            first = next((p for p in priority if p in moved), min(moved))
        lv = Level(first)
        lv.orbit.append(first)
        lv.trans[first] = ident
        lv.itab[first] = table(ident)
        b.levels.append(lv)
    for g in gens:
        b.add_generator(g)
    if known_order is not None:
        if b.chain.order() < known_order:
            rng = random.Random(seed)
            misses = 0
            for r in _random_elements(gens, rng):
                if b.add_generator(r):
                    misses = 0
                    if b.chain.order() >= known_order:
                        break
                else:
                    misses += 1
                    if misses > 200:
                        break
        if b.chain.order() == known_order:
            return b.chain
    b.complete()
    return b.chain


class ChainBuilder:
    """Incrementally grown stabilizer chain, complete after every :meth:`add`."""

    def __init__(self, degree: int, priority: Sequence[int] | None = None):
        self._b = _Builder(degree, (), priority)

    @property
    def chain(self) -> StabChain:
        return self._b.chain

    def add(self, g) -> bool:
        """Add ``g``; return False if it was already a member."""
        if not self._b.add_generator(g):
            return False
        self._b.complete()
        return True

    def order(self) -> int:
        return self._b.chain.order()
