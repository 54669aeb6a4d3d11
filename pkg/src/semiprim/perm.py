"""Permutations of {0, ..., n-1}.

Internally a permutation is a *raw* image table: ``bytes`` when the degree is
at most 256 (so composition can use ``bytes.translate``) and ``tuple`` above
that.  Products follow the right-action convention used throughout the
package: ``mul(a, b)`` applies ``a`` first, then ``b``.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Sequence

from .errors import MalformedCycle, PointOutOfRange, RepeatedPoint

PAD = bytes(range(256))


def raw_identity(n: int):
    return PAD[:n] if n <= 256 else tuple(range(n))


def to_raw(images: Iterable[int], n: int):
    return bytes(images) if n <= 256 else tuple(images)


def table(b):
    """Prepare ``b`` to be the right-hand factor of :func:`apply`."""
    if type(b) is bytes:
        return b + PAD[len(b):]
    return b


def apply(a, t):
    """``a`` followed by the permutation whose table is ``t``."""
    if type(a) is bytes:
        return a.translate(t)
    return tuple(map(t.__getitem__, a))


def mul(a, b):
    if type(a) is bytes:
        return a.translate(b + PAD[len(b):])
    return tuple(map(b.__getitem__, a))


def inv(a):
    n = len(a)
    if type(a) is bytes:
        return bytes.maketrans(a, PAD[:n])[:n]
    r = [0] * n
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def inv_table(a):
    """Table of ``a^-1`` ready for :func:`apply`."""
    if type(a) is bytes:
        return bytes.maketrans(a, PAD[: len(a)])
    return inv(a)


def conj(x, g, ginv):
    """``g^-1 x g``."""
    return mul(mul(ginv, x), g)


def comm(a, b):
    """``[a, b] = a^-1 b^-1 a b``."""
    return mul(mul(inv(a), inv(b)), mul(a, b))


def is_identity(a) -> bool:
    return a == PAD[: len(a)] if type(a) is bytes else a == tuple(range(len(a)))


def power(a, k: int):
    n = len(a)
    if k < 0:
        a, k = inv(a), -k
    result = raw_identity(n)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def cycle_lengths(a) -> list[int]:
    n = len(a)
    seen = bytearray(n)
    out = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = a[j]
                length += 1
            out.append(length)
    return out


def order_of(a) -> int:
    o = 1
    for c in cycle_lengths(a):
        o = o * c // gcd(o, c)
    return o


def support_size(a) -> int:
    return sum(1 for i, x in enumerate(a) if i != x)


def first_moved(a, priority: Sequence[int] | None = None) -> int:
    if priority is None:
        for i, x in enumerate(a):
            if i != x:
                return i
    else:
        for i in priority:
            if a[i] != i:
                return i
    return -1


def cycles_of(a) -> list[tuple[int, ...]]:
    n = len(a)
    seen = bytearray(n)
    out = []
    for i in range(n):
        if not seen[i] and a[i] != i:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = 1
                cyc.append(j)
                j = a[j]
            out.append(tuple(cyc))
        seen[i] = 1
    return out


def cycle_string(a) -> str:
    cs = cycles_of(a)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)


def shifted(a, offset: int, n: int):
    """Embed ``a`` into degree ``n`` acting on ``offset .. offset+len(a)-1``."""
    images = list(range(n))
    for i, x in enumerate(a):
        images[offset + i] = offset + x
    return to_raw(images, n)


def concat(*parts):
    """Direct sum of raw permutations on consecutive point ranges."""
    n = sum(len(p) for p in parts)
    images = []
    off = 0
    for p in parts:
        images.extend(x + off for x in p)
        off += len(p)
    return to_raw(images, n)


def restrict(a, points: Sequence[int], position: dict[int, int]):
    """Action of ``a`` on an invariant point list, relabelled ``0..len-1``."""
    return to_raw((position[a[p]] for p in points), len(points))


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` stored as an image table."""

    __slots__ = ("_a",)

    def __init__(self, images: Iterable[int]):
        imgs = list(images)
        n = len(imgs)
        seen = bytearray(n)
        for x in imgs:
            if not 0 <= x < n:
                raise PointOutOfRange(x, n)
            if seen[x]:
                raise RepeatedPoint(x)
            seen[x] = 1
        self._a = to_raw(imgs, n)

    @classmethod
    def _wrap(cls, raw) -> "Permutation":
        p = cls.__new__(cls)
        p._a = raw
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(raw_identity(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)

    @property
    def raw(self):
        return self._a

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self._a)

    def __call__(self, point: int) -> int:
        return self._a[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        return Permutation._wrap(mul(self._a, other._a))

    def __pow__(self, k: int) -> "Permutation":
        return Permutation._wrap(power(self._a, k))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        return Permutation._wrap(inv(self._a))

    def conjugate(self, g: "Permutation") -> "Permutation":
        """``g^-1 self g``."""
        return Permutation._wrap(conj(self._a, g._a, inv(g._a)))

    def is_identity(self) -> bool:
        return is_identity(self._a)

    def order(self) -> int:
        return order_of(self._a)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self._a) if i != x]

    def cycles(self) -> list[tuple[int, ...]]:
        return cycles_of(self._a)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((c for c in cycle_lengths(self._a) if c > 1), reverse=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._a == other._a

    def __hash__(self) -> int:
        return hash(self._a)

    def __lt__(self, other: "Permutation") -> bool:
        return tuple(self._a) < tuple(other._a)

    def __str__(self) -> str:
        return cycle_string(self._a)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({str(self)!r}, {self.degree})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint cycles such as ``"(0 1 2)(3 4)"`` on ``degree`` points.

    Points are 0-based and may be separated by spaces or commas.  Points
    not mentioned are fixed.
    """
    if degree < 0:
        raise MalformedCycle("degree must be non-negative")
    s = text.strip()
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise MalformedCycle(f"unexpected text at offset {pos}: {s[pos:pos + 12]!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        pts = []
        for tok in body:
            if not re.fullmatch(r"\d+", tok):
                raise MalformedCycle(f"bad point {tok!r}")
            p = int(tok)
            if p >= degree:
                raise PointOutOfRange(p, degree)
            if p in seen:
                raise RepeatedPoint(p)
            seen.add(p)
            pts.append(p)
        for i, p in enumerate(pts):
            images[p] = pts[(i + 1) % len(pts)]
    return Permutation._wrap(to_raw(images, degree))
