"""Plus modular symbols for Gamma_0(N) via Manin symbols."""

from .p1 import p1_list, p1_normalize
from .space import ManinSymbolSpace, SeparationError, SpaceCapError, build_space
from .eigen import hecke_action, hecke_matrices, isolate_symbol
from .symbol import (
    NormalizationError, PlusModularSymbol, evaluate, normalize, plus_symbol,
)

__all__ = [
    "ManinSymbolSpace", "NormalizationError", "PlusModularSymbol",
    "SeparationError", "SpaceCapError", "build_space", "evaluate",
    "hecke_action", "hecke_matrices", "isolate_symbol", "normalize",
    "p1_list", "p1_normalize", "plus_symbol",
]
