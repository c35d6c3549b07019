"""Mutation operators for permutations.

Every operator mutates its list argument in place and returns None. Draws
come from the ``rng`` argument in the order stated on each operator; the
shared index-pair draw is described in :func:`index_pair`.
"""

from __future__ import annotations

import math
from functools import partial
from typing import Callable

from .core import UnknownOperatorError, sample_distinct, shuffle

Mutation = Callable[[list, object], None]


def _require(n: int, minimum: int, name: str) -> None:
    if n < minimum:
        raise ValueError(f"{name} needs a permutation of length >= {minimum}, got {n}")


def _check_window(w: int | None) -> None:
    if w is not None and w < 1:
        raise ValueError(f"window limit must be >= 1, got {w}")


def index_pair(n: int, w: int | None, rng) -> tuple[int, int]:
    """Two distinct indexes at most ``w`` apart (``None`` means no limit).

    Draws ``i = randint(n)`` first, then one ``randint`` over the legal
    window around ``i`` with ``i`` itself removed. Returned unsorted.
    """
    i = rng.randint(n)
    if w is None or w >= n - 1:
        j = rng.randint(n - 1)
    else:
        lo = i - w if i > w else 0
        hi = i + w if i + w < n else n - 1
        j = lo + rng.randint(hi - lo)
    if j >= i:
        j += 1
    return i, j


def _sorted_pair(n: int, w: int | None, rng) -> tuple[int, int]:
    i, j = index_pair(n, w, rng)
    return (i, j) if i < j else (j, i)


def adjacent_swap_mutation(p: list, rng) -> None:
    """Swap ``p[i]`` and ``p[i+1]`` for ``i = randint(n - 1)``."""
    n = len(p)
    _require(n, 2, "adjacent swap")
    i = rng.randint(n - 1)
    p[i], p[i + 1] = p[i + 1], p[i]


def swap_mutation(p: list, rng, w: int | None = None) -> None:
    """Exchange two elements at most ``w`` positions apart. O(1).

    With ``w == 1`` this is :func:`adjacent_swap_mutation` (a single draw).
    """
    n = len(p)
    _require(n, 2, "swap")
    _check_window(w)
    if w == 1:
        adjacent_swap_mutation(p, rng)
        return
    i, j = index_pair(n, w, rng)
    p[i], p[j] = p[j], p[i]


def insertion_mutation(p: list, rng, w: int | None = None) -> None:
    """Remove the element at ``i`` and reinsert it at ``j``; (i, j) from
    :func:`index_pair`. Only the elements between the two indexes shift."""
    n = len(p)
    _require(n, 2, "insertion")
    _check_window(w)
    i, j = index_pair(n, w, rng)
    if i < j:
        p[i:j + 1] = p[i + 1:j + 1] + [p[i]]
    else:
        p[j:i + 1] = [p[i]] + p[j:i]


def reversal_mutation(p: list, rng, w: int | None = None) -> None:
    n = len(p)
    _require(n, 2, "reversal")
    _check_window(w)
    i, j = _sorted_pair(n, w, rng)
    p[i:j + 1] = p[i:j + 1][::-1]


def two_change_mutation(p: list, rng) -> None:
    """Reverse a segment whose length L satisfies 2 <= L <= n - 2.

    Both limits are needed for exactly two cyclic edges to change: shorter
    segments and segments leaving fewer than two outside elements leave the
    tour's edge set intact. Draws as :func:`index_pair` with window n - 3.
    """
    n = len(p)
    _require(n, 4, "2-change")
    i, j = _sorted_pair(n, n - 3, rng)
    p[i:j + 1] = p[i:j + 1][::-1]


def _three_change_patterns(x_len: int, b: list, c: list) -> list[list]:
    # The tour is X B C with X fixed; these are the reconnections that drop
    # all three boundary edges. Up to reading the tour backwards, each one
    # reverses two of the three segments (or none), so it is the original
    # tour when both reversed segments are singletons.
    moves = [c + b]
    if x_len > 1 or len(c) > 1:
        moves.append(c + b[::-1])
    if x_len > 1 or len(b) > 1:
        moves.append(c[::-1] + b)
    if len(b) > 1 or len(c) > 1:
        moves.append(b[::-1] + c[::-1])
    return moves


def three_opt_mutation(p: list, rng) -> None:
    """Random move from the 3opt neighbourhood (2-changes and 3-changes).

    Draw order: ``randint(2)`` picks the move type. 0 runs
    :func:`two_change_mutation` on the same rng. 1 draws three distinct cut
    indexes ``i < j < k`` via :func:`sample_distinct`, splitting the middle
    of the tour into B = p[i+1..j] and C = p[j+1..k], then one ``randint``
    picks among the reconnections of B and C that differ from the original.
    """
    n = len(p)
    _require(n, 5, "3opt")
    if rng.randint(2) == 0:
        two_change_mutation(p, rng)
        return
    i, j, k = sample_distinct(n, 3, rng)
    moves = _three_change_patterns(n - k + i, p[i + 1:j + 1], p[j + 1:k + 1])
    p[i + 1:k + 1] = moves[rng.randint(len(moves))]


def block_move_mutation(p: list, rng, w: int | None = None) -> None:
    """Swap the adjacent blocks ``p[i..j]`` and ``p[j+1..k]``.

    ``i < k`` come from :func:`index_pair` (so ``k - i <= w``), then
    ``j = i + randint(k - i)``. A first block of length one is an insertion.
    """
    n = len(p)
    _require(n, 2, "block-move")
    _check_window(w)
    i, k = _sorted_pair(n, w, rng)
    j = i + rng.randint(k - i)
    p[i:k + 1] = p[j + 1:k + 1] + p[i:j + 1]


def block_swap_mutation(p: list, rng) -> None:
    """Exchange two non-overlapping blocks ``p[a..b]`` and ``p[c..d]``.

    Four distinct values ``y0 < y1 < y2 < y3`` are drawn from ``range(n + 2)``
    with :func:`sample_distinct` and mapped to ``a, b, c, d = y0, y1 - 1,
    y2 - 1, y3 - 2``; the map is a bijection onto ``a <= b < c <= d``.
    """
    n = len(p)
    _require(n, 2, "block-swap")
    y0, y1, y2, y3 = sample_distinct(n + 2, 4, rng)
    a, b, c, d = y0, y1 - 1, y2 - 1, y3 - 2
    p[a:d + 1] = p[c:d + 1] + p[b + 1:c] + p[a:b + 1]


def _cycle_indexes(n: int, k: int, rng) -> list[int]:
    if 2 * k <= n:
        # rejection sampling; order of acceptance is the cycle order
        picked: list[int] = []
        seen = set()
        while len(picked) < k:
            i = rng.randint(n)
            if i not in seen:
                seen.add(i)
                picked.append(i)
        return picked
    # dense case: partial Fisher-Yates keeps the worst case linear
    idx = list(range(n))
    for t in range(k):
        r = t + rng.randint(n - t)
        idx[t], idx[r] = idx[r], idx[t]
    return idx[:k]


def _rotate_cycle(p: list, idx: list[int]) -> None:
    # element at idx[t] moves to idx[t + 1], the last wraps to idx[0]
    last = p[idx[-1]]
    for t in range(len(idx) - 1, 0, -1):
        p[idx[t]] = p[idx[t - 1]]
    p[idx[0]] = last


def apply_k_cycle(p: list, k: int, rng) -> None:
    """Induce a uniformly random k-cycle on the positions of ``p``.

    For ``2k <= n`` indexes are drawn by rejection (``randint(n)`` until k
    distinct ones are accepted); otherwise by a partial Fisher-Yates pass
    (``randint(n - t)`` for t = 0..k-1). The element at the t-th chosen index
    moves to the (t+1)-th.
    """
    _rotate_cycle(p, _cycle_indexes(len(p), k, rng))


def cycle_mutation_kmax(p: list, rng, kmax: int) -> None:
    """k-cycle with ``k = 2 + randint(kmax - 1)``, then :func:`apply_k_cycle`."""
    n = len(p)
    _require(n, 2, "cycle mutation")
    if kmax < 2 or kmax > n:
        raise ValueError(f"kmax must be in [2, {n}], got {kmax}")
    apply_k_cycle(p, 2 + rng.randint(kmax - 1), rng)


def draw_cycle_length(n: int, alpha: float, rng) -> int:
    """k in ``2..n`` with P(k) proportional to ``alpha ** (k - 2)``.

    One ``random()`` draw, inverted through the truncated geometric CDF.
    """
    u = rng.random() * (1.0 - alpha ** (n - 1))
    j = int(math.log1p(-u) / math.log(alpha))
    return 2 + min(j, n - 2)


def cycle_mutation_alpha(p: list, rng, alpha: float) -> None:
    n = len(p)
    _require(n, 2, "cycle mutation")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    apply_k_cycle(p, draw_cycle_length(n, alpha, rng), rng)


def scramble_mutation(p: list, rng, w: int | None = None) -> None:
    """Shuffle ``p[i..j]``; (i, j) from :func:`index_pair`, then the
    Fisher-Yates draws of :func:`permute_evo.core.shuffle`. The shuffle may
    reproduce the original order."""
    n = len(p)
    _require(n, 2, "scramble")
    _check_window(w)
    i, j = _sorted_pair(n, w, rng)
    shuffle(p, rng, i, j + 1)


def _bernoulli_positions(n: int, u: float, rng) -> list[int]:
    # geometric skipping: expected u*n draws instead of n
    if u <= 0.0:
        return []
    if u >= 1.0:
        return list(range(n))
    log_q = math.log1p(-u)
    out = []
    i = -1
    while True:
        i += 1 + int(math.log1p(-rng.random()) / log_q)
        if i >= n:
            return out
        out.append(i)


def uniform_scramble_mutation(p: list, rng, u: float) -> None:
    """Pick each position with probability ``u`` and shuffle the picked
    elements among the picked positions.

    Positions are found by geometric skipping: each ``random()`` draw gives
    the gap to the next picked position, stopping once past the end. The
    picked elements are then shuffled as in :func:`permute_evo.core.shuffle`.
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must be in [0, 1], got {u}")
    pos = _bernoulli_positions(len(p), u, rng)
    if len(pos) < 2:
        return
    vals = [p[i] for i in pos]
    shuffle(vals, rng)
    for i, v in zip(pos, vals):
        p[i] = v


def rotation_mutation(p: list, rng) -> None:
    """Left circular rotation by ``r = 1 + randint(n - 1)``: ``p[r]`` moves
    to the front."""
    n = len(p)
    _require(n, 2, "rotation")
    r = 1 + rng.randint(n - 1)
    p[:] = p[r:] + p[:r]


_PLAIN: dict[str, Mutation] = {
    "swap": swap_mutation,
    "adjacent-swap": adjacent_swap_mutation,
    "insertion": insertion_mutation,
    "reversal": reversal_mutation,
    "2-change": two_change_mutation,
    "3opt": three_opt_mutation,
    "block-move": block_move_mutation,
    "block-swap": block_swap_mutation,
    "scramble": scramble_mutation,
    "rotation": rotation_mutation,
}
_WINDOWED = {"swap", "insertion", "reversal", "block-move", "scramble"}
_PARAMETRIC: dict[str, tuple[Callable, str, type]] = {
    "cycle-kmax": (cycle_mutation_kmax, "kmax", int),
    "cycle-alpha": (cycle_mutation_alpha, "alpha", float),
    "uniform-scramble": (uniform_scramble_mutation, "u", float),
}

MUTATION_NAMES = tuple(_PLAIN) + tuple(_PARAMETRIC)


def get_mutation(name: str) -> Mutation:
    """Resolve a registry name such as ``"swap"``, ``"reversal:5"`` or
    ``"cycle-alpha:0.5"`` into a ``(p, rng)`` callable.

    The suffix after ``:`` is the window limit for windowed operators and
    the required parameter for the cycle and uniform-scramble forms.
    """
    base, _, arg = name.partition(":")
    if base in _PARAMETRIC:
        fn, kw, conv = _PARAMETRIC[base]
        if not arg:
            raise ValueError(f"mutation {base!r} needs a parameter, e.g. {base}:<{kw}>")
        return partial(fn, **{kw: conv(arg)})
    if base not in _PLAIN:
        raise UnknownOperatorError(f"unknown mutation operator {name!r}")
    if not arg:
        return _PLAIN[base]
    if base not in _WINDOWED:
        raise ValueError(f"mutation {base!r} takes no parameter")
    w = int(arg)
    _check_window(w)
    return partial(_PLAIN[base], w=w)
