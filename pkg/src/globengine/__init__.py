"""Exact globalization of geometric partial comodules and partial group actions."""

from .exactla import LinearMap, VectorSpace
from .comod import Coalgebra, Comodule
from .gpc import Cover, PartialComoduleDatum, check_gpc, induce
from .globalize import GLOBALIZABLE, NOT_GLOBALIZABLE, analyze_cover, globalize
from .psets import PartialGSet, coequalizer_globalize, globalize_quotient

__version__ = "0.1.0"

__all__ = [
    "LinearMap", "VectorSpace", "Coalgebra", "Comodule", "Cover", "PartialComoduleDatum",
    "check_gpc", "induce", "GLOBALIZABLE", "NOT_GLOBALIZABLE", "analyze_cover", "globalize",
    "PartialGSet", "coequalizer_globalize", "globalize_quotient",
]
