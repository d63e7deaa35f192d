"""Toolkit for the maximum number of copies of red-blue patterns in red-blue complete graphs."""

from .coloured_graph import (BLUE, RED, ColouredCompleteGraph, PatternGraph, QuantumPattern,
                             assess_balance, assess_bipartition, assess_quasirandomness,
                             construct_partitioned, construct_quasirandom, construct_turan_red)
from .patterns import get_pattern

__all__ = ["BLUE", "RED", "ColouredCompleteGraph", "PatternGraph", "QuantumPattern", "assess_balance",
           "assess_bipartition", "assess_quasirandomness", "construct_partitioned", "construct_quasirandom",
           "construct_turan_red", "get_pattern"]

__version__ = "0.1.0"
