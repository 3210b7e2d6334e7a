"""Tree-depth, tree-width, elimination forests and expansion of (random) graphs."""

from .graph import Graph, GraphError
from .elimination import EliminationForest
from .solvers import SolveResult, treedepth_exact, treewidth_exact

__all__ = [
    "Graph",
    "GraphError",
    "EliminationForest",
    "SolveResult",
    "treedepth_exact",
    "treewidth_exact",
]
__version__ = "0.1.0"
