"""Multiplication structures for finite groups in linear space."""

from .core import (AxiomError, CayleyGroup, GroupError, NotNormalError, ParseError,
                   QuotientGroup, Subgroup, Transversal, closure, is_normal, lift,
                   load_group, normalizer, quotient, read_group, transversal)
from .series import (ChainCandidate, ChainNotFound, CompositionSeries, composition_series,
                     find_chain, is_simple, maximal_normal_subgroup, sylow_subgroup)

__version__ = "0.1.0"

__all__ = [
    "AxiomError", "CayleyGroup", "GroupError", "NotNormalError", "ParseError", "QuotientGroup",
    "Subgroup", "Transversal", "closure", "is_normal", "lift", "load_group", "normalizer",
    "quotient", "read_group", "transversal", "ChainCandidate", "ChainNotFound",
    "CompositionSeries", "composition_series", "find_chain", "is_simple",
    "maximal_normal_subgroup", "sylow_subgroup",
]
