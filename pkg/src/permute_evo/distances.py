"""Permutation distances, one per permutation feature.

=====================  =================  ============================
kind                   CLI name           feature
=====================  =================  ============================
``exact-match``        positions          element positions
``cyclic-edge``        undirected-edges   undirected cyclic adjacency
``cyclic-rtype``       directed-edges     directed cyclic adjacency
``kendall-tau``        precedences        pairwise precedences
``lee``                cyclic-precedences cyclic (wraparound) values
=====================  =================  ============================

All distances are non-negative integers. :func:`metric_to` precomputes what
it can about a fixed target so repeated evaluation (the haystack landscape)
stays cheap.
"""

from __future__ import annotations

import bisect
from enum import Enum
from operator import ne, sub
from typing import Callable, Sequence

from .core import _inverse, check_same_length


class DistanceKind(str, Enum):
    EXACT_MATCH = "exact-match"
    CYCLIC_EDGE = "cyclic-edge"
    CYCLIC_RTYPE = "cyclic-rtype"
    KENDALL_TAU = "kendall-tau"
    LEE = "lee"


CLI_NAMES = {
    "positions": DistanceKind.EXACT_MATCH,
    "undirected-edges": DistanceKind.CYCLIC_EDGE,
    "directed-edges": DistanceKind.CYCLIC_RTYPE,
    "precedences": DistanceKind.KENDALL_TAU,
    "cyclic-precedences": DistanceKind.LEE,
}


def distance_kind(name: str | DistanceKind) -> DistanceKind:
    """Accept a :class:`DistanceKind`, its value, or its CLI name."""
    if isinstance(name, DistanceKind):
        return name
    if name in CLI_NAMES:
        return CLI_NAMES[name]
    try:
        return DistanceKind(name)
    except ValueError:
        raise ValueError(f"unknown distance/landscape {name!r}") from None


# Above this length, bisect insertion's quadratic memmove loses to a Fenwick tree.
_BISECT_LIMIT = 2048


def count_inversions(a: Sequence[int]) -> int:
    """Number of pairs i < j with a[i] > a[j], for a permutation of 0..n-1."""
    n = len(a)
    if n <= _BISECT_LIMIT:
        seen: list[int] = []
        total = 0
        for x in reversed(a):
            k = bisect.bisect_left(seen, x)
            total += k
            seen.insert(k, x)
        return total
    tree = [0] * (n + 1)
    total = 0
    for placed, x in enumerate(a):
        i = x + 1
        below = 0
        while i:
            below += tree[i]
            i &= i - 1
        total += placed - below
        i = x + 1
        while i <= n:
            tree[i] += 1
            i += i & -i
    return total


def _successors(p: Sequence[int]) -> list[int]:
    succ = [0] * len(p)
    prev = p[-1]
    for x in p:
        succ[prev] = x
        prev = x
    return succ


def _lee_table(n: int) -> list[int]:
    # negative differences index from the end, which is exactly n - |d|
    return [min(d, n - d) for d in range(n)]


def metric_to(target: Sequence[int], kind: str | DistanceKind) -> Callable[[Sequence[int]], int]:
    """Return ``f`` with ``f(p) == distance(p, target)`` under ``kind``."""
    kind = distance_kind(kind)
    t = list(target)
    n = len(t)

    if kind is DistanceKind.EXACT_MATCH:
        def f(p):
            _check_len(p, n)
            return sum(map(ne, p, t))
    elif kind is DistanceKind.CYCLIC_EDGE:
        succ = _successors(t)

        def f(p):
            _check_len(p, n)
            missing = 0
            prev = p[-1]
            for x in p:
                if succ[prev] != x and succ[x] != prev:
                    missing += 1
                prev = x
            return missing
    elif kind is DistanceKind.CYCLIC_RTYPE:
        succ = _successors(t)

        def f(p):
            _check_len(p, n)
            nxt = p[1:]
            nxt.append(p[0])
            return sum(map(ne, map(succ.__getitem__, p), nxt))
    elif kind is DistanceKind.KENDALL_TAU:
        rank = _inverse(t)

        def f(p):
            _check_len(p, n)
            return count_inversions(list(map(rank.__getitem__, p)))
    else:
        table = _lee_table(n)

        def f(p):
            _check_len(p, n)
            return sum(map(table.__getitem__, map(sub, p, t)))
    return f


def _check_len(p, n):
    if len(p) != n:
        check_same_length(p, range(n))


def distance(p1: Sequence[int], p2: Sequence[int], kind: str | DistanceKind) -> int:
    check_same_length(p1, p2)
    return metric_to(p2, kind)(list(p1))


def exact_match(p1: Sequence[int], p2: Sequence[int]) -> int:
    """Number of positions holding different elements."""
    check_same_length(p1, p2)
    return sum(map(ne, p1, p2))


def cyclic_edge(p1: Sequence[int], p2: Sequence[int]) -> int:
    """Undirected cyclic edges of ``p1`` (last-to-first included) absent
    from ``p2``."""
    return distance(p1, p2, DistanceKind.CYCLIC_EDGE)


def cyclic_rtype(p1: Sequence[int], p2: Sequence[int]) -> int:
    """Directed counterpart of :func:`cyclic_edge`."""
    return distance(p1, p2, DistanceKind.CYCLIC_RTYPE)


def kendall_tau(p1: Sequence[int], p2: Sequence[int]) -> int:
    """Discordant pairs, i.e. the minimum number of adjacent swaps turning
    one permutation into the other. O(n log n) comparisons via inversion
    counting after relabelling by ``p2``'s inverse."""
    return distance(p1, p2, DistanceKind.KENDALL_TAU)


def lee(p1: Sequence[int], p2: Sequence[int]) -> int:
    """Sum over positions of ``min(|p1[i] - p2[i]|, n - |p1[i] - p2[i]|)``."""
    return distance(p1, p2, DistanceKind.LEE)


DISTANCES: dict[DistanceKind, Callable[[Sequence[int], Sequence[int]], int]] = {
    DistanceKind.EXACT_MATCH: exact_match,
    DistanceKind.CYCLIC_EDGE: cyclic_edge,
    DistanceKind.CYCLIC_RTYPE: cyclic_rtype,
    DistanceKind.KENDALL_TAU: kendall_tau,
    DistanceKind.LEE: lee,
}
