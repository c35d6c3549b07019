"""Problem-independent crossover operators for permutations.

Each operator overwrites its two parent lists with the two children and
returns them as a tuple, so ``c1, c2 = ox(p1, p2, rng)`` gives the same lists
back. All run in O(n). Draw orders are given per operator so that fixed draws
reproduce a chosen outcome.
"""

from __future__ import annotations

from functools import partial
from typing import Callable

from .core import UnknownOperatorError, _inverse, check_same_length, cycle_indexes, shuffle

Crossover = Callable[[list, list, object], tuple]

DEFAULT_U = {"uobx": 0.5, "ox2": 0.5, "uppx": 0.5, "upmx": 0.33}


def cross_region(n: int, rng) -> tuple[int, int]:
    """Two independent ``randint(n)`` draws, ordered (inclusive bounds)."""
    i = rng.randint(n)
    j = rng.randint(n)
    return (i, j) if i <= j else (j, i)


def _mask(n: int, u: float, rng) -> list[bool]:
    # one random() per index, in index order
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must be in [0, 1], got {u}")
    r = rng.random
    return [r() < u for _ in range(n)]


# -- cycle crossover ---------------------------------------------------------

def cx(p1: list, p2: list, rng) -> tuple[list, list]:
    """Cycle crossover: exchange the elements of one random permutation cycle.

    Draws ``randint(n)`` for the index whose cycle is exchanged.
    """
    n = check_same_length(p1, p2)
    start = rng.randint(n)
    for i in cycle_indexes(p1, p2, start, _inverse(p1)):
        p1[i], p2[i] = p2[i], p1[i]
    return p1, p2


# -- edge recombination --------------------------------------------------------

def edge_map(p1: list, p2: list) -> tuple[list[list], list[list]]:
    """Neighbour lists over both parents' cyclic adjacencies, and the subset
    of each that both parents share. Each list holds 2 to 4 distinct
    elements (fewer only for n < 3) and the relation is symmetric."""
    n = len(p1)
    nbrs: list[set] = [set() for _ in range(n)]
    for p in (p1, p2):
        prev = p[-1]
        for x in p:
            nbrs[x].add(prev)
            nbrs[prev].add(x)
            prev = x
    for x in range(n):
        nbrs[x].discard(x)
    shared: list[set] = [set() for _ in range(n)]
    if n > 2:
        succ = [0] * n
        prev = p1[-1]
        for x in p1:
            succ[prev] = x
            prev = x
        prev = p2[-1]
        for x in p2:
            if succ[prev] == x or succ[x] == prev:
                shared[x].add(prev)
                shared[prev].add(x)
            prev = x
    return [sorted(s) for s in nbrs], [sorted(s) for s in shared]


def _edge_child(first: int, nbrs: list[list], shared: list[list] | None, rng) -> list[int]:
    n = len(nbrs)
    used = bytearray(n)
    degree = [len(s) for s in nbrs]   # unused neighbours of each element
    unused = list(range(n))          # swap-remove pool for the dead-end draw
    where = list(range(n))
    child = [first]
    cur = first
    randint = rng.randint
    for _ in range(n - 1):
        used[cur] = 1
        k = where[cur]
        last = unused.pop()
        if last != cur:
            unused[k] = last
            where[last] = k
        ties = None
        for y in nbrs[cur]:
            degree[y] -= 1
        if shared is not None:
            for y in shared[cur]:
                if not used[y]:
                    if ties is None or degree[y] < best:
                        best = degree[y]
                        ties = [y]
                    elif degree[y] == best:
                        ties.append(y)
        if ties is None:
            for y in nbrs[cur]:
                if not used[y]:
                    if ties is None or degree[y] < best:
                        best = degree[y]
                        ties = [y]
                    elif degree[y] == best:
                        ties.append(y)
        if ties is None:
            cur = unused[randint(len(unused))]
        elif len(ties) == 1:
            cur = ties[0]
        else:
            cur = ties[randint(len(ties))]
        child.append(cur)
    return child


def er(p1: list, p2: list, rng) -> tuple[list, list]:
    """Edge recombination.

    c1 starts from ``p1[0]`` and c2 from ``p2[0]``; c1 is built completely
    before c2. Each step moves to the unused neighbour (in the edge map) with
    the fewest unused neighbours of its own. A tie among m > 1 candidates
    draws ``randint(m)`` over the tied elements in ascending order. If the
    current element has no unused neighbour, ``randint(#unused)`` picks any
    unused element.
    """
    check_same_length(p1, p2)
    nbrs, _ = edge_map(p1, p2)
    c1 = _edge_child(p1[0], nbrs, None, rng)
    c2 = _edge_child(p2[0], nbrs, None, rng)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


def eer(p1: list, p2: list, rng) -> tuple[list, list]:
    """Enhanced edge recombination.

    As :func:`er`, but when the current element has unused neighbours joined
    to it by an edge common to both parents, only those are considered.
    """
    check_same_length(p1, p2)
    nbrs, shared = edge_map(p1, p2)
    c1 = _edge_child(p1[0], nbrs, shared, rng)
    c2 = _edge_child(p2[0], nbrs, shared, rng)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


# -- order-based family ----------------------------------------------------------

def _ox_child(keep: list, order: list, i: int, j: int, wrap: bool) -> list[int]:
    n = len(keep)
    seg = keep[i:j + 1]
    inseg = set(seg)
    rest = [x for x in order if x not in inseg]
    if wrap:
        # fill from j + 1 cyclically
        k = n - 1 - j
        return rest[k:] + seg + rest[:k]
    return rest[:i] + seg + rest[i:]


def ox(p1: list, p2: list, rng) -> tuple[list, list]:
    """Order crossover. Draws: :func:`cross_region`.

    c1 keeps ``p1[i..j]``; the other elements, in ``p2`` order, fill c1
    starting just after the region and wrapping to the front.
    """
    n = check_same_length(p1, p2)
    i, j = cross_region(n, rng)
    c1 = _ox_child(p1, p2, i, j, True)
    c2 = _ox_child(p2, p1, i, j, True)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


def nwox(p1: list, p2: list, rng) -> tuple[list, list]:
    """Non-wrapping order crossover: like :func:`ox`, but the relatively
    ordered elements fill from the left end, skipping over the region."""
    n = check_same_length(p1, p2)
    i, j = cross_region(n, rng)
    c1 = _ox_child(p1, p2, i, j, False)
    c2 = _ox_child(p2, p1, i, j, False)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


def _uobx_child(keep: list, order: list, fixed: list[bool]) -> list[int]:
    kept = {x for x, f in zip(keep, fixed) if f}
    rest = iter([x for x in order if x not in kept])
    return [x if f else next(rest) for x, f in zip(keep, fixed)]


def uobx(p1: list, p2: list, rng, u: float = DEFAULT_U["uobx"]) -> tuple[list, list]:
    """Uniform order based crossover.

    Each index is a fixed point with probability ``u`` (one ``random()`` per
    index). A child keeps its own parent's elements at the fixed points and
    takes the rest in the other parent's relative order, left to right.
    """
    n = check_same_length(p1, p2)
    fixed = _mask(n, u, rng)
    c1 = _uobx_child(p1, p2, fixed)
    c2 = _uobx_child(p2, p1, fixed)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


def _ox2_child(base: list, other: list, chosen: list[bool]) -> list[int]:
    picked = [x for x, c in zip(other, chosen) if c]
    inv = _inverse(base)
    slots = sorted(inv[x] for x in picked)
    child = list(base)
    for k, x in zip(slots, picked):
        child[k] = x
    return child


def ox2(p1: list, p2: list, rng, u: float = DEFAULT_U["ox2"]) -> tuple[list, list]:
    """Order crossover 2 (Syswerda).

    Each index is chosen with probability ``u`` (one ``random()`` per
    index). c1 is p1 with the elements found at the chosen indexes of p2
    rearranged into their p2 order; c2 likewise with the roles swapped.
    """
    n = check_same_length(p1, p2)
    chosen = _mask(n, u, rng)
    c1 = _ox2_child(p1, p2, chosen)
    c2 = _ox2_child(p2, p1, chosen)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


# -- precedence preservative ---------------------------------------------------

def _ppx_merge(first: list, second: list, from_first: list[bool]) -> list[int]:
    # from_first[t]: slot t takes the next unused element of `first`
    n = len(first)
    used = bytearray(n)
    out = []
    a = b = 0
    for f in from_first:
        if f:
            while used[first[a]]:
                a += 1
            x = first[a]
        else:
            while used[second[b]]:
                b += 1
            x = second[b]
        used[x] = 1
        out.append(x)
    return out


def ppx(p1: list, p2: list, rng) -> tuple[list, list]:
    """Two-point precedence preservative crossover, two-child form.

    Draws: :func:`cross_region` gives ``i <= j``. c1 takes its first ``i``
    slots from p1, the next ``j - i + 1`` from p2, and the rest from p1,
    each time the leftmost element not already in c1. c2 mirrors this with
    the parents exchanged.
    """
    n = check_same_length(p1, p2)
    i, j = cross_region(n, rng)
    pattern = [not (i <= t <= j) for t in range(n)]
    c1 = _ppx_merge(p1, p2, pattern)
    c2 = _ppx_merge(p2, p1, pattern)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


def uppx(p1: list, p2: list, rng, u: float = DEFAULT_U["uppx"]) -> tuple[list, list]:
    """Uniform precedence preservative crossover, two-child form.

    One ``random()`` per slot; ``< u`` means c1 takes its next element from
    p1 (and c2 from p2), otherwise from the other parent.
    """
    n = check_same_length(p1, p2)
    pattern = _mask(n, u, rng)
    c1 = _ppx_merge(p1, p2, pattern)
    c2 = _ppx_merge(p2, p1, pattern)
    p1[:] = c1
    p2[:] = c2
    return p1, p2


# -- partially matched -----------------------------------------------------------

def _pmx_swaps(p1: list, p2: list, indexes) -> tuple[list, list]:
    # At index k, c1 swaps its current element there with p2[k] and c2 its
    # current element with p1[k], so each child ends up holding the other
    # parent's elements at every processed index.
    c1, c2 = list(p1), list(p2)
    inv1, inv2 = _inverse(c1), _inverse(c2)
    for k in indexes:
        for c, inv, y in ((c1, inv1, p2[k]), (c2, inv2, p1[k])):
            x = c[k]
            if x != y:
                b = inv[y]
                c[k], c[b] = y, x
                inv[x], inv[y] = b, k
    return c1, c2


def pmx(p1: list, p2: list, rng) -> tuple[list, list]:
    """Partially matched crossover. Draws: :func:`cross_region`.

    For each index k of the region, in increasing order, c1 swaps the
    element it holds at k with ``p2[k]`` and c2 likewise with ``p1[k]``.
    Where no earlier swap has touched index k this is the exchange of
    ``p1[k]`` and ``p2[k]`` in both children. Inverse lookup tables make each
    swap constant time.
    """
    n = check_same_length(p1, p2)
    i, j = cross_region(n, rng)
    c1, c2 = _pmx_swaps(p1, p2, range(i, j + 1))
    p1[:] = c1
    p2[:] = c2
    return p1, p2


def upmx(p1: list, p2: list, rng, u: float = DEFAULT_U["upmx"]) -> tuple[list, list]:
    """Uniform partially matched crossover: PMX swaps at each index chosen
    with probability ``u`` (one ``random()`` per index, processed in
    increasing index order)."""
    n = check_same_length(p1, p2)
    chosen = _mask(n, u, rng)
    c1, c2 = _pmx_swaps(p1, p2, [k for k in range(n) if chosen[k]])
    p1[:] = c1
    p2[:] = c2
    return p1, p2


# -- position based --------------------------------------------------------------

def pbx(p1: list, p2: list, rng) -> tuple[list, list]:
    """Position based crossover.

    1. Map every element e to (index in p1, index in p2).
    2. Shuffle that list (:func:`permute_evo.core.shuffle` draws), then walk
       it drawing one ``random()`` per entry; ``< 0.5`` swaps the pair.
    3. Place each e at its first index in c1 and second index in c2 where free.
    4. For entries still unplaced, try the other index.
    5. Fill leftover elements, in list order, into free slots left to right.
    """
    n = check_same_length(p1, p2)
    inv1, inv2 = _inverse(p1), _inverse(p2)
    entries = [[e, inv1[e], inv2[e]] for e in range(n)]
    shuffle(entries, rng)
    r = rng.random
    for ent in entries:
        if r() < 0.5:
            ent[1], ent[2] = ent[2], ent[1]

    children = []
    for primary, secondary in ((1, 2), (2, 1)):
        child = [-1] * n
        left = []
        for ent in entries:
            k = ent[primary]
            if child[k] < 0:
                child[k] = ent[0]
            else:
                left.append(ent)
        rest = []
        for ent in left:
            k = ent[secondary]
            if child[k] < 0:
                child[k] = ent[0]
            else:
                rest.append(ent[0])
        it = iter(rest)
        for k in range(n):
            if child[k] < 0:
                child[k] = next(it)
        children.append(child)
    p1[:] = children[0]
    p2[:] = children[1]
    return p1, p2


_OPERATORS: dict[str, Callable] = {
    "cx": cx,
    "er": er,
    "eer": eer,
    "ox": ox,
    "nwox": nwox,
    "uobx": uobx,
    "ox2": ox2,
    "ppx": ppx,
    "uppx": uppx,
    "pmx": pmx,
    "upmx": upmx,
    "pbx": pbx,
}

CROSSOVER_NAMES = tuple(_OPERATORS)


def get_crossover(name: str, u: float | None = None) -> Crossover | None:
    """Resolve ``"ox"``, ``"uobx:0.7"`` and the like; ``"none"`` gives None.

    ``u`` overrides the default parameter of the uniform operators unless
    the name carries its own ``:u`` suffix.
    """
    base, _, arg = name.partition(":")
    if base == "none" and not arg:
        return None
    if base not in _OPERATORS:
        raise UnknownOperatorError(f"unknown crossover operator {name!r}")
    fn = _OPERATORS[base]
    if base not in DEFAULT_U:
        if arg:
            raise ValueError(f"crossover {base!r} takes no parameter")
        return fn
    if arg:
        u = float(arg)
    if u is None:
        return fn
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must be in [0, 1], got {u}")
    return partial(fn, u=u)
