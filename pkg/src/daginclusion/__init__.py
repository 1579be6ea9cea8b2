"""Equivalence and inclusion of independence models induced by DAGs."""

from .dag import Dag, Immorality, Skeleton, build_dag, complete_dag, empty_dag
from .equivalence import equivalent, reversal_sequence
from .inclusion import (
    ConditionReport,
    basic_conditions,
    graphical_conditions,
    includes,
    inclusion_conditions,
    same_size_inclusion,
    verma_conditions,
)
from .kernels import BACKEND
from .ops import OpKind, TransformOp, TransformSequence
from .oracle import IndependenceModel, enumerate_dags, model, model_included, random_dag
from .separation import (
    CompositeStatement,
    DependenceComplex,
    DisjointTriplet,
    composite_holds,
    d_connected,
    d_separated,
    find_dependence_complex,
    moral_separated,
    validate_complex,
)
from .transform import Exhausted, meek_search, one_edge_sequence, simple_shape_search

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CompositeStatement",
    "ConditionReport",
    "Dag",
    "DependenceComplex",
    "DisjointTriplet",
    "Exhausted",
    "Immorality",
    "IndependenceModel",
    "OpKind",
    "Skeleton",
    "TransformOp",
    "TransformSequence",
    "basic_conditions",
    "build_dag",
    "complete_dag",
    "composite_holds",
    "d_connected",
    "d_separated",
    "empty_dag",
    "enumerate_dags",
    "equivalent",
    "find_dependence_complex",
    "graphical_conditions",
    "includes",
    "inclusion_conditions",
    "meek_search",
    "model",
    "model_included",
    "moral_separated",
    "one_edge_sequence",
    "random_dag",
    "reversal_sequence",
    "same_size_inclusion",
    "simple_shape_search",
    "validate_complex",
    "verma_conditions",
]
