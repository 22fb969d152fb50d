"""Exhaustive and constructor-based corpora of small Heyting algebras.

`all_algebras(n)` enumerates every Heyting algebra with at most n elements
up to isomorphism, via Birkhoff duality: algebras correspond to posets of
their join-irreducible elements, and posets are grown one maximal point at
a time with pruning on the upset count.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import (Poset, canonical_key, concat, product, upset_algebra,
                      _bits, _refine_profile)
from .rn import boolean, chain, rn_algebra


def _poset_key(poset):
    """Relabelling-invariant key for a poset (refinement + minimal code)."""
    n = poset.size
    up = poset.up
    down = [0] * n
    for i in range(n):
        for j in _bits(up[i]):
            down[j] |= 1 << i
    colour = _refine_profile(up, down, n)
    groups = {}
    for x in sorted(range(n), key=lambda x: (colour[x], x)):
        groups.setdefault(colour[x], []).append(x)
    slots = []
    for c in sorted(groups):
        slots.extend([groups[c]] * len(groups[c]))
    perm = [-1] * n
    inv = [-1] * n
    best = None

    def encode():
        rows = []
        for i in range(n):
            mask = 0
            for j in range(n):
                if poset.leq(inv[i], inv[j]):
                    mask |= 1 << j
            rows.append(mask)
        return tuple(rows)

    def backtrack(k):
        nonlocal best
        if k == n:
            code = encode()
            if best is None or code < best:
                best = code
            return
        for x in slots[k]:
            if perm[x] == -1:
                perm[x] = k
                inv[k] = x
                backtrack(k + 1)
                perm[x] = -1

    if n == 0:
        return (0,)
    backtrack(0)
    return (n,) + best


def _extend_posets(posets, max_upsets):
    """All one-point maximal extensions with at most max_upsets upsets."""
    out = {}
    for p in posets:
        n = p.size
        down = [0] * n
        for i in range(n):
            for j in _bits(p.up[i]):
                down[j] |= 1 << i
        # downsets of p = upsets of the dual
        downsets = Poset(down).upset_masks()
        for d in downsets:
            up = list(p.up)
            for i in _bits(d):
                up[i] |= 1 << n
            up.append(1 << n)
            q = Poset(up, _checked=True)
            if len(q.upset_masks()) > max_upsets:
                continue
            key = _poset_key(q)
            if key not in out:
                out[key] = q
    return list(out.values())


@lru_cache(maxsize=None)
def _posets_with_few_upsets(max_upsets):
    """All posets (up to iso) whose upset lattice has <= max_upsets elements."""
    level = [Poset([], _checked=True)]
    found = list(level)
    while level:
        level = _extend_posets(level, max_upsets)
        found.extend(level)
    return found


@lru_cache(maxsize=None)
def all_algebras(max_size):
    """Every Heyting algebra with at most max_size elements, up to iso.

    Deterministic order: by (size, canonical key).
    """
    algebras = []
    for p in _posets_with_few_upsets(max_size):
        a = upset_algebra(p)
        if a.size <= max_size:
            algebras.append(a)
    algebras.sort(key=lambda a: (a.size, canonical_key(a)))
    return tuple(algebras)


@lru_cache(maxsize=None)
def standard_corpus(max_size=10):
    """Constructor corpus: chains, ladders, Booleans, their pairwise
    products and concatenations, up to max_size, deduplicated up to iso."""
    bases = []
    for n in range(1, max_size + 1):
        bases.append(chain(n))
        bases.append(rn_algebra(n))
    k = 0
    while 2 ** k <= max_size:
        bases.append(boolean(k))
        k += 1
    pool = list(bases)
    for a in bases:
        for b in bases:
            if a.size * b.size <= max_size:
                pool.append(product(a, b))
            if a.size + b.size - 1 <= max_size and a.size > 1 and b.size > 1:
                pool.append(concat(a, b))
    seen = {}
    for a in pool:
        key = canonical_key(a)
        if key not in seen:
            seen[key] = a
    out = sorted(seen.values(), key=lambda a: (a.size, canonical_key(a)))
    return tuple(out)


def si_algebras(max_size):
    """All subdirectly irreducible algebras up to max_size, up to iso."""
    from .algebra import is_si
    return tuple(a for a in all_algebras(max_size) if is_si(a))
