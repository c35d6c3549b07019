"""Permutation-in-a-Haystack landscapes and a self-adaptive generational EA.

Each individual carries its own crossover rate ``c``, mutation rate ``m``
and step size ``sigma``; those are perturbed by Gaussian noise every time an
offspring is made. Selection is binary tournament on cost (lower is
better) and the single best individual survives unaltered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import RandomSource, check_permutation, random_permutation
from .crossover import get_crossover
from .distances import DistanceKind, distance_kind, metric_to
from .mutation import get_mutation

RATE_RANGE = (0.1, 1.0)
SIGMA_RANGE = (0.01, 0.2)
SIGMA_INIT = (0.05, 0.15)
SIGMA_STEP = 0.01


class HaystackLandscape:
    """Cost of a permutation is its distance to a hidden target."""

    def __init__(self, target: Sequence[int], kind: str | DistanceKind):
        check_permutation(target)
        self.target = tuple(target)
        self.kind = distance_kind(kind)
        self._metric = metric_to(self.target, self.kind)

    @classmethod
    def random(cls, n: int, kind: str | DistanceKind, rng) -> "HaystackLandscape":
        return cls(random_permutation(n, rng), kind)

    @property
    def n(self) -> int:
        return len(self.target)

    def cost(self, p: Sequence[int]) -> int:
        return self._metric(p)

    def __repr__(self) -> str:
        return f"HaystackLandscape(n={self.n}, kind={self.kind.value!r})"


def haystack_cost(land: HaystackLandscape, p: Sequence[int]) -> int:
    return land.cost(p)


@dataclass(slots=True)
class Individual:
    p: list
    c: float
    m: float
    sigma: float
    cost: int = 0

    def copy(self) -> "Individual":
        return Individual(self.p[:], self.c, self.m, self.sigma, self.cost)


@dataclass
class EAConfig:
    n: int = 100
    pop_size: int = 100
    generations: int = 10_000
    crossover: str = "none"
    mutation: str = "swap"
    u: float | None = None
    seed: int = 0
    elitism: int = 1

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError(f"population size must be >= 2, got {self.pop_size}")
        if self.generations < 1:
            raise ValueError(f"generations must be >= 1, got {self.generations}")
        if self.n < 2:
            raise ValueError(f"permutation length must be >= 2, got {self.n}")
        if self.elitism != 1:
            raise ValueError("only single-member elitism is supported")

    def operators(self) -> tuple[Callable | None, Callable]:
        return get_crossover(self.crossover, self.u), get_mutation(self.mutation)


@dataclass
class RunRecord:
    """Best and mean population cost at the logged generations."""

    generations: list = field(default_factory=list)
    best: list = field(default_factory=list)
    mean: list = field(default_factory=list)

    def log(self, generation: int, pop: Sequence[Individual]) -> None:
        costs = [ind.cost for ind in pop]
        self.generations.append(generation)
        self.best.append(min(costs))
        self.mean.append(sum(costs) / len(costs))

    @property
    def final_best(self) -> int:
        return self.best[-1]

    def rows(self):
        return list(zip(self.generations, self.best, self.mean))


def checkpoints(generations: int) -> list[int]:
    """Powers of two up to ``generations``, plus ``generations`` itself."""
    out = []
    g = 1
    while g < generations:
        out.append(g)
        g *= 2
    out.append(generations)
    return out


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def init_population(cfg: EAConfig, rng, land: HaystackLandscape | None = None) -> list[Individual]:
    """Random individuals; per member the draws are the permutation shuffle,
    then ``random()`` for c, m and sigma in that order."""
    lo, hi = RATE_RANGE
    slo, shi = SIGMA_INIT
    pop = []
    for _ in range(cfg.pop_size):
        p = random_permutation(cfg.n, rng)
        c = lo + (hi - lo) * rng.random()
        m = lo + (hi - lo) * rng.random()
        s = slo + (shi - slo) * rng.random()
        pop.append(Individual(p, c, m, s, land.cost(p) if land is not None else 0))
    return pop


def binary_tournament(pop: Sequence[Individual], rng) -> Individual:
    """Two uniform draws (with replacement); the cheaper wins. Distinct
    members of equal cost are split by one ``randint(2)``."""
    n = len(pop)
    a = pop[rng.randint(n)]
    b = pop[rng.randint(n)]
    if a is b or a.cost < b.cost:
        return a
    if b.cost < a.cost:
        return b
    return a if rng.randint(2) == 0 else b


def adapt_params(ind: Individual, rng) -> Individual:
    """Gaussian step on c and m (sd = current sigma), then on sigma
    (sd = 0.01), each clamped to its range. Draws: gauss for c, m, sigma."""
    lo, hi = RATE_RANGE
    ind.c = _clamp(ind.c + rng.gauss(ind.sigma), lo, hi)
    ind.m = _clamp(ind.m + rng.gauss(ind.sigma), lo, hi)
    ind.sigma = _clamp(ind.sigma + rng.gauss(SIGMA_STEP), *SIGMA_RANGE)
    return ind


def best_of(pop: Sequence[Individual]) -> Individual:
    # first member of minimum cost
    best = pop[0]
    for ind in pop:
        if ind.cost < best.cost:
            best = ind
    return best


def step_generation(pop: Sequence[Individual], land: HaystackLandscape,
                    crossover: Callable | None, mutation: Callable, rng) -> list[Individual]:
    """One generation: elite carried over, then offspring until the
    population is refilled.

    Offspring come in pairs from two tournaments (first winner ``a``, then
    ``b``). Per pair: one ``random()``; below ``a.c`` the crossover is applied
    (skipped when ``crossover`` is None, the draw is still taken). Then for
    each child in turn: one ``random()``, below the child's ``m`` it mutates;
    then :func:`adapt_params`. A last odd slot takes a single tournament
    winner through the mutation path only. Children inherit ``(c, m, sigma)``
    from the parent in their slot; costs are recomputed only if the
    permutation was touched.
    """
    size = len(pop)
    elite = best_of(pop)
    out = [elite]
    cost = land.cost
    rand = rng.random
    while len(out) < size:
        a = binary_tournament(pop, rng)
        if size - len(out) >= 2:
            b = binary_tournament(pop, rng)
            kids = [a.copy(), b.copy()]
            crossed = rand() < a.c and crossover is not None
            if crossed:
                crossover(kids[0].p, kids[1].p, rng)
        else:
            kids = [a.copy()]
            crossed = False
        for kid in kids:
            changed = crossed
            if rand() < kid.m:
                mutation(kid.p, rng)
                changed = True
            adapt_params(kid, rng)
            if changed:
                kid.cost = cost(kid.p)
            out.append(kid)
    return out


def run_ea(cfg: EAConfig, land: HaystackLandscape, rng=None) -> RunRecord:
    """Run ``cfg.generations`` generations; log best and mean cost at the
    :func:`checkpoints` (generation g = after g steps)."""
    if land.n != cfg.n:
        raise ValueError(f"landscape length {land.n} != configured n {cfg.n}")
    if rng is None:
        rng = RandomSource(cfg.seed)
    crossover, mutation = cfg.operators()
    pop = init_population(cfg, rng, land)
    record = RunRecord()
    marks = set(checkpoints(cfg.generations))
    for g in range(1, cfg.generations + 1):
        pop = step_generation(pop, land, crossover, mutation, rng)
        if g in marks:
            record.log(g, pop)
    return record
