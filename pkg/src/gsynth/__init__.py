"""Certified synthesis of bipartite graphs, branching packings and forests."""

from .errors import CapacityError, DefectError, Infeasible, InputError, PreconditionError, SynthError
from .graph import Bigraph, Digraph, Subpartition, enumerate_subpartitions, in_degree, max_matching, neighbors
from .setfunc import BranchingIndeg, Explicit, Forest, TermRank, Zero, classify, eval_p, subpartition_max

__version__ = "0.1.0"

__all__ = [
    "BranchingIndeg",
    "Bigraph",
    "CapacityError",
    "DefectError",
    "Digraph",
    "Explicit",
    "Forest",
    "Infeasible",
    "InputError",
    "PreconditionError",
    "Subpartition",
    "SynthError",
    "TermRank",
    "Zero",
    "classify",
    "enumerate_subpartitions",
    "eval_p",
    "in_degree",
    "max_matching",
    "neighbors",
    "subpartition_max",
]
