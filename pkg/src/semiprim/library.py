"""Standard permutation groups."""

from __future__ import annotations

from math import factorial

from .group import PermGroup
from .perm import to_raw


def _cycle(n: int, pts: list[int]):
    images = list(range(n))
    for i, p in enumerate(pts):
        images[p] = pts[(i + 1) % len(pts)]
    return to_raw(images, n)


def symmetric(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(max(n, 1), [], order=1, name=f"Sym({n})")
    gens = [_cycle(n, list(range(n))), _cycle(n, [0, 1])] if n > 2 else [_cycle(n, [0, 1])]
    return PermGroup(n, gens, order=factorial(n), name=f"Sym({n})")


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1), [], order=1, name=f"Alt({n})")
    if n == 3:
        return PermGroup(3, [_cycle(3, [0, 1, 2])], order=3, name="Alt(3)")
    # (0 1 2) and an (n-1)- or n-cycle, whichever is even
    long = list(range(n)) if n % 2 == 1 else list(range(1, n))
    return PermGroup(n, [_cycle(n, [0, 1, 2]), _cycle(n, long)], order=factorial(n) // 2, name=f"Alt({n})")


def cyclic(n: int) -> PermGroup:
    """Regular cyclic group of order ``n``."""
    return PermGroup(n, [_cycle(n, list(range(n)))], order=n, name=f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order ``2n`` on the ``n`` vertices of a polygon."""
    if n == 1:
        return PermGroup(2, [_cycle(2, [0, 1])], order=2, name="D2")
    if n == 2:
        return PermGroup(4, [to_raw([1, 0, 3, 2], 4), to_raw([2, 3, 0, 1], 4)], order=4, name="D4")
    rot = _cycle(n, list(range(n)))
    refl = to_raw([(-i) % n for i in range(n)], n)
    return PermGroup(n, [rot, refl], order=2 * n, name=f"D{2 * n}")


def elementary_abelian(p: int, k: int) -> PermGroup:
    """Regular ``C_p^k`` on ``p^k`` points (vectors in base ``p``)."""
    n = p ** k
    gens = []
    for i in range(k):
        step = p ** i
        images = []
        for v in range(n):
            digit = (v // step) % p
            images.append(v + ((digit + 1) % p - digit) * step)
        gens.append(to_raw(images, n))
    return PermGroup(n, gens, order=n, name=f"C{p}^{k}")


def frobenius(p: int, k: int | None = None) -> PermGroup:
    """Affine group ``x -> a x + b`` on ``Z/p`` with ``a`` ranging over a subgroup of order ``k``."""
    k = p - 1 if k is None else k
    g = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1 for q in _primes_dividing(p - 1))) if p > 2 else 1
    a = pow(g, (p - 1) // k, p)
    gens = [_cycle(p, list(range(p))), to_raw([(a * x) % p for x in range(p)], p)]
    return PermGroup(p, gens, order=p * k, name=f"F{p * k}")


def _primes_dividing(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def psl2(p: int) -> PermGroup:
    """``PSL(2, p)`` for an odd prime ``p`` on the projective line (``p`` stands for infinity)."""
    inf = p
    r = next(a for a in range(2, p) if all(pow(a, (p - 1) // q, p) != 1 for q in _primes_dividing(p - 1)))
    sq = r * r % p

    def mobius(f):
        return to_raw([f(x) for x in range(p + 1)], p + 1)

    shift = mobius(lambda x: inf if x == inf else (x + 1) % p)
    scale = mobius(lambda x: inf if x == inf else sq * x % p)
    flip = mobius(lambda x: 0 if x == inf else (inf if x == 0 else (-pow(x, p - 2, p)) % p))
    return PermGroup(p + 1, [shift, scale, flip], order=p * (p * p - 1) // 2, name=f"PSL(2,{p})")
