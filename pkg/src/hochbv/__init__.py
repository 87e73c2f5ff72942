"""Exact Hochschild (co)homology, Tamarkin-Tsygan calculus and BV operators of Frobenius algebras."""

from .algebra import FiniteDimAlgebra, QuiverPresentation, from_quiver, from_structure_constants
from .bv import DualityData, verify_bv
from .calculus import Calculus, Chain, Cochain, verify_calculus
from .catalog import CATALOG, builtin
from .exactfield import GF, Q, FieldDescriptor, parse_field
from .frobenius import FrobeniusData, criterion_check, frobenius_data, split_nakayama
from .hochschild import chain_complex, chain_complex_twisted, cochain_complex, weight_decomposition

__all__ = [
    "FiniteDimAlgebra", "QuiverPresentation", "from_quiver", "from_structure_constants",
    "DualityData", "verify_bv", "Calculus", "Chain", "Cochain", "verify_calculus",
    "CATALOG", "builtin", "GF", "Q", "FieldDescriptor", "parse_field",
    "FrobeniusData", "criterion_check", "frobenius_data", "split_nakayama",
    "chain_complex", "chain_complex_twisted", "cochain_complex", "weight_decomposition",
]
