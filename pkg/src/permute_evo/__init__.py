"""Evolutionary operators for permutations and the Permutation-in-a-Haystack
harness used to map crossover operators to the features they optimise."""

from .core import (
    PermutationCycle,
    PermutationError,
    RandomSource,
    ScriptedRandom,
    UnknownOperatorError,
    inverse,
    permutation_cycle,
    random_permutation,
    validate,
)
from .crossover import CROSSOVER_NAMES, get_crossover
from .distances import DistanceKind, distance, metric_to
from .ea import EAConfig, HaystackLandscape, Individual, RunRecord, run_ea
from .experiment import ExperimentSpec, SummaryTable, run_experiment
from .mutation import MUTATION_NAMES, get_mutation

__all__ = [
    "CROSSOVER_NAMES",
    "DistanceKind",
    "EAConfig",
    "ExperimentSpec",
    "HaystackLandscape",
    "Individual",
    "MUTATION_NAMES",
    "PermutationCycle",
    "PermutationError",
    "RandomSource",
    "RunRecord",
    "ScriptedRandom",
    "SummaryTable",
    "UnknownOperatorError",
    "distance",
    "get_crossover",
    "get_mutation",
    "inverse",
    "metric_to",
    "permutation_cycle",
    "random_permutation",
    "run_ea",
    "run_experiment",
    "validate",
]

__version__ = "0.1.0"
