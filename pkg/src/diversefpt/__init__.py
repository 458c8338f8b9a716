"""Diverse bases, diverse common independent sets and diverse perfect matchings."""

from __future__ import annotations

from .bases import WdbInstance, compress, kernelize_linear, solve_wdb
from .cis import WdcisInstance, build_family, solve_wdcis
from .errors import BudgetError, ContractError, DiverseError, DomainError, InputError, ParseError
from .matchings import Graph, close_diverse_matchings, far_matching, solve_dpm
from .matroids import (DualMatroid, GraphicMatroid, LinearMatroid, Matroid, MinorMatroid,
                       UniformMatroid, check_axioms)
from .optim import greedy_max_weight_basis, max_common_independent, max_weight_common_independent
from .witness import Answer, DiverseWitness

__version__ = "0.1.0"

__all__ = [
    "Answer", "BudgetError", "ContractError", "DiverseError", "DiverseWitness", "DomainError",
    "DualMatroid", "Graph", "GraphicMatroid", "InputError", "LinearMatroid", "Matroid",
    "MinorMatroid", "ParseError", "UniformMatroid", "WdbInstance", "WdcisInstance",
    "build_family", "check_axioms", "close_diverse_matchings", "compress", "far_matching",
    "greedy_max_weight_basis", "kernelize_linear", "max_common_independent",
    "max_weight_common_independent", "solve_dpm", "solve_wdb", "solve_wdcis",
]
