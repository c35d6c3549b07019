"""Permutation representation helpers and the shared randomness contract.

A permutation of length n is a plain ``list[int]`` holding each of
``0..n-1`` exactly once. Operators mutate lists in place.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Sequence

Permutation = list

_MASK64 = (1 << 64) - 1


class PermutationError(ValueError):
    """Raised for malformed permutations or mismatched parent lengths."""


class UnknownOperatorError(LookupError):
    """Raised when a registry name does not resolve to an operator."""


def validate(p: Sequence[int]) -> bool:
    """Return True iff ``p`` holds each of ``0..len(p)-1`` exactly once."""
    n = len(p)
    if n == 0:
        return False
    seen = bytearray(n)
    for x in p:
        if not isinstance(x, int) or x < 0 or x >= n or seen[x]:
            return False
        seen[x] = 1
    return True


def check_permutation(p: Sequence[int]) -> None:
    if not validate(p):
        raise PermutationError(f"not a permutation of 0..{len(p) - 1}: {list(p)!r}")


def check_same_length(p1: Sequence[int], p2: Sequence[int]) -> int:
    n = len(p1)
    if n != len(p2):
        raise PermutationError(f"length mismatch: {n} != {len(p2)}")
    return n


def _inverse(p: Sequence[int]) -> list[int]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return inv


def inverse(p: Sequence[int]) -> list[int]:
    """Return ``q`` with ``q[p[i]] == i``; one linear pass after validation."""
    check_permutation(p)
    return _inverse(p)


@dataclass(frozen=True)
class PermutationCycle:
    """One cycle of the graph with an edge x -> y whenever
    ``index of x in p1 == index of y in p2``.

    ``indexes`` are the positions of ``elements`` in the first parent.
    """

    elements: frozenset
    indexes: frozenset

    def __len__(self) -> int:
        return len(self.elements)


def cycle_indexes(p1: Sequence[int], p2: Sequence[int], start: int,
                  inv1: Sequence[int] | None = None) -> list[int]:
    """Indexes (in traversal order) of the permutation cycle through ``start``.

    Runs in time proportional to the cycle length once ``inv1`` (the inverse
    of ``p1``) is known.
    """
    if inv1 is None:
        inv1 = _inverse(p1)
    out = [start]
    i = inv1[p2[start]]
    while i != start:
        out.append(i)
        i = inv1[p2[i]]
    return out


def permutation_cycle(p1: Sequence[int], p2: Sequence[int], start_index: int) -> PermutationCycle:
    n = check_same_length(p1, p2)
    check_permutation(p1)
    check_permutation(p2)
    if not 0 <= start_index < n:
        raise IndexError(f"start_index {start_index} out of range for n={n}")
    idx = cycle_indexes(p1, p2, start_index)
    return PermutationCycle(frozenset(p1[i] for i in idx), frozenset(idx))


class RandomSource:
    """Seeded source of the draws used throughout the package.

    ``randint(b)``
        uniform integer in ``[0, b)``; ``b`` must be positive.
    ``random()``
        uniform real in ``[0, 1)``.
    ``gauss(sd)``
        normal variate with mean 0 and standard deviation ``sd``.

    Every stochastic operation takes one of these explicitly; the same
    ``(seed, stream)`` always yields the same sequence, and ``stream``
    selects an independent sequence for the same seed.
    """

    def __init__(self, seed: int = 0, stream: int = 0):
        self.seed = int(seed) & _MASK64
        self.stream = int(stream)
        self._rng = random.Random(self.seed | (self.stream << 64))
        # Bound straight to the underlying generator: these sit in every
        # operator's inner loop. _randbelow is randrange's unbiased sampler.
        self.randint = getattr(self._rng, "_randbelow", self._rng.randrange)
        self.random = self._rng.random
        self.gauss = partial(self._rng.gauss, 0.0)

    def shuffle(self, seq: list, lo: int = 0, hi: int | None = None) -> None:
        shuffle(seq, self, lo, hi)

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, stream={self.stream})"


class ScriptedRandom:
    """A RandomSource stand-in that replays prescribed draws.

    Each call consumes the next scripted value: ``randint(b)`` expects an int
    in ``[0, b)``, ``random()`` a float in ``[0, 1)``, and ``gauss(sd)`` a
    standard-normal value that is scaled by ``sd``. When the script runs out,
    draws come from ``fallback`` if one was given.
    """

    def __init__(self, draws: Iterable[float], fallback: RandomSource | None = None):
        self._draws = list(draws)
        self._pos = 0
        self.fallback = fallback

    @property
    def remaining(self) -> int:
        return len(self._draws) - self._pos

    def _next(self):
        if self._pos >= len(self._draws):
            return None
        v = self._draws[self._pos]
        self._pos += 1
        return v

    def randint(self, bound: int) -> int:
        v = self._next()
        if v is None:
            if self.fallback is None:
                raise IndexError("scripted draws exhausted (randint)")
            return self.fallback.randint(bound)
        if not (isinstance(v, int) and 0 <= v < bound):
            raise ValueError(f"scripted draw {v!r} is not an int in [0, {bound})")
        return v

    def random(self) -> float:
        v = self._next()
        if v is None:
            if self.fallback is None:
                raise IndexError("scripted draws exhausted (random)")
            return self.fallback.random()
        if not 0.0 <= v < 1.0:
            raise ValueError(f"scripted draw {v!r} is not in [0, 1)")
        return float(v)

    def gauss(self, sd: float) -> float:
        v = self._next()
        if v is None:
            if self.fallback is None:
                raise IndexError("scripted draws exhausted (gauss)")
            return self.fallback.gauss(sd)
        return float(v) * sd

    def shuffle(self, seq: list, lo: int = 0, hi: int | None = None) -> None:
        shuffle(seq, self, lo, hi)


def shuffle(seq: list, rng, lo: int = 0, hi: int | None = None) -> None:
    """Fisher-Yates shuffle of ``seq[lo:hi]`` in place.

    Draw order: for ``i`` from the last slot down to ``lo + 1``, one
    ``randint(i - lo + 1)`` picks the offset of the element moved into slot i.
    """
    if hi is None:
        hi = len(seq)
    below = rng.randint
    for i in range(hi - 1, lo, -1):
        j = lo + below(i - lo + 1)
        seq[i], seq[j] = seq[j], seq[i]


def random_permutation(n: int, rng) -> list[int]:
    """Uniformly random permutation of ``0..n-1``."""
    if n < 1:
        raise ValueError(f"permutation length must be >= 1, got {n}")
    p = list(range(n))
    shuffle(p, rng)
    return p


def sample_distinct(m: int, k: int, rng) -> list[int]:
    """``k`` distinct values from ``range(m)`` in ascending order.

    Draw order: ``randint(m)``, ``randint(m - 1)``, ... ; the t-th draw is
    the rank of the chosen value among those not yet chosen.
    """
    if k > m:
        raise ValueError(f"cannot draw {k} distinct values from {m}")
    chosen: list[int] = []
    for t in range(k):
        v = rng.randint(m - t)
        for c in chosen:
            if v >= c:
                v += 1
            else:
                break
        chosen.append(v)
        chosen.sort()
    return chosen


def parse_permutation(text: str) -> list[int]:
    """Parse ``"[2,0,1]"`` (brackets optional) into a validated permutation."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    try:
        p = [int(tok) for tok in s.split(",") if tok.strip()]
    except ValueError as exc:
        raise PermutationError(f"malformed permutation text: {text!r}") from exc
    check_permutation(p)
    return p


def format_permutation(p: Sequence[int]) -> str:
    return "[" + ", ".join(str(x) for x in p) + "]"
