"""Exact Set Cover and Hitting Set for small universes."""

from __future__ import annotations

from itertools import combinations
from typing import Hashable, Iterable, Sequence

MAX_UNIVERSE = 30


class SizeLimitError(ValueError):
    pass


def _check(universe) -> list:
    elems = sorted(universe, key=repr)
    if len(elems) > MAX_UNIVERSE:
        raise SizeLimitError(f"universe of size {len(elems)} exceeds {MAX_UNIVERSE}")
    return elems


def set_cover_exact(
    universe: Iterable[Hashable], families: Sequence[Iterable[Hashable]]
) -> tuple[int, list[int]] | None:
    """Minimum number of families covering ``universe``.

    Returns ``(size, indices)`` or ``None`` when some element is
    uncoverable.  Breadth-first search over covered-element bitmasks, so only
    reachable masks are ever stored.
    """
    elems = _check(universe)
    bit = {e: 1 << i for i, e in enumerate(elems)}
    full = (1 << len(elems)) - 1
    masks = []
    for fam in families:
        m = 0
        for e in fam:
            m |= bit.get(e, 0)
        masks.append(m)
    union = 0
    for m in masks:
        union |= m
    if union != full:
        return None
    if full == 0:
        return 0, []
    # Each mask only needs the first family that reaches it.
    parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
    frontier = [0]
    useful = [i for i, m in enumerate(masks) if m]
    while frontier:
        nxt = []
        for cov in frontier:
            for i in useful:
                new = cov | masks[i]
                if new not in parent:
                    parent[new] = (cov, i)
                    if new == full:
                        chosen = []
                        cur = new
                        while cur:
                            prev, idx = parent[cur]
                            chosen.append(idx)
                            cur = prev
                        return len(chosen), sorted(chosen)
                    nxt.append(new)
        frontier = nxt
    return None


def hitting_set_exact(
    universe: Iterable[Hashable], sets: Sequence[Iterable[Hashable]]
) -> tuple[int, list] | None:
    """Minimum subset of ``universe`` meeting every listed set.

    Returns ``(size, elements)`` or ``None`` if some set has no element of
    the universe.  Plain enumeration by increasing size.
    """
    elems = _check(universe)
    uni = set(elems)
    targets = [frozenset(s) & uni for s in sets]
    if any(not t for t in targets):
        return None
    for size in range(len(elems) + 1):
        for pick in combinations(elems, size):
            chosen = set(pick)
            if all(t & chosen for t in targets):
                return size, list(pick)
    return None
