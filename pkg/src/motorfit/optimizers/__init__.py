from ._common import OptimizationResult, RunTrace, evaluate
from .abc import (
    AbcConfig,
    Candidate,
    Colony,
    abc_minimize,
    fitness_of,
    init_colony,
    neighbor,
    roulette,
    selection_probabilities,
)
from .ga import GaConfig, ga_minimize
from .pso import PsoConfig, pso_minimize

__all__ = [
    "AbcConfig", "Candidate", "Colony", "GaConfig", "OptimizationResult", "PsoConfig",
    "RunTrace", "abc_minimize", "evaluate", "fitness_of", "ga_minimize", "init_colony",
    "neighbor", "pso_minimize", "roulette", "selection_probabilities",
]
