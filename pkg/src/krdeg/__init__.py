"""Kirillov-Reshetikhin dual equivalence graphs: tableaux, crystals, charge,
graph construction and symmetric-function characters."""

from .charge import charge, r_matrix, semicharge
from .crystal import RectSeq, TensorElement, enumerate_zero_weight
from .deg import KRDegGraph, build_graph, commutator_edge, components_by_charge, definitional_edge, descent_set
from .symfun import SymFunc, component_character, cyclic_character, plethysm

__all__ = [
    "RectSeq",
    "TensorElement",
    "enumerate_zero_weight",
    "charge",
    "semicharge",
    "r_matrix",
    "KRDegGraph",
    "build_graph",
    "commutator_edge",
    "definitional_edge",
    "descent_set",
    "components_by_charge",
    "SymFunc",
    "cyclic_character",
    "plethysm",
    "component_character",
]
