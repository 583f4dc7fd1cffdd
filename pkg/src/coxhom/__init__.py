"""Finite Coxeter groups, Artin-to-Coxeter homomorphism classification,
and the parity obstruction calculus built on top of both."""

from coxhom.conjugacy import ConjClass, conjugacy_classes
from coxhom.errors import CoxhomError
from coxhom.graphs import CoxeterGraph, parse_graph
from coxhom.groups import build_group
from coxhom.homs import (
    WHom,
    catalog,
    classify_uceps,
    exists_proper_ucep,
    preserves_coloured,
    standard_hom,
)
from coxhom.pipelines import bn_verify, e7_table1, e7_table2_and_V, h3_search
from coxhom.urep import obstruction, theorem31_report
from coxhom.words import parse_word

__version__ = "0.1.0"

__all__ = [
    "ConjClass",
    "CoxeterGraph",
    "CoxhomError",
    "WHom",
    "bn_verify",
    "build_group",
    "catalog",
    "classify_uceps",
    "conjugacy_classes",
    "e7_table1",
    "e7_table2_and_V",
    "exists_proper_ucep",
    "h3_search",
    "obstruction",
    "parse_graph",
    "preserves_coloured",
    "standard_hom",
    "theorem31_report",
    "parse_word",
    "__version__",
]
