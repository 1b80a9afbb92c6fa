"""Exact computations in partial crossed products of free and finite groups."""

__version__ = "0.1.0"

from .errors import ContextMismatchError, EnumerationCapError, GroupError, ParcrossError, ParseError
from .scalars import GaussQ
from .group_words import FiniteGroup, FreeGroup
from .coordinate_algebra import BoolFn, Context, FinitePoint, Surd, char, monomial
from .partial_action import alpha, translate_point
from .crossed_product import CPElement, embed, mono, one, pi, proj, word_image, zero
from .expressions import parse_boolfn, parse_cp, parse_point
from .relations import (RelationSet, cp_equal_mod, instantiate, omega_contains, omega_violations,
                        vanishes_on_omega)
from .presentations import (DirectedGraph, Edge, GeneratorMap, Matrix01, Presentation, build_ck,
                            build_graph, check_morphism, check_partial_isometries, dualize_ck,
                            permutation_morphism)
from .kernel import BACKEND as KERNEL_BACKEND

__all__ = [
    "ContextMismatchError", "EnumerationCapError", "GroupError", "ParcrossError", "ParseError",
    "GaussQ", "FiniteGroup", "FreeGroup", "BoolFn", "Context", "FinitePoint", "Surd", "char",
    "monomial", "alpha", "translate_point", "CPElement", "embed", "mono", "one", "pi", "proj",
    "word_image", "zero", "parse_boolfn", "parse_cp", "parse_point", "RelationSet", "cp_equal_mod",
    "instantiate", "omega_contains", "omega_violations", "vanishes_on_omega", "DirectedGraph", "Edge",
    "GeneratorMap", "Matrix01", "Presentation", "build_ck", "build_graph", "check_morphism",
    "check_partial_isometries", "dualize_ck", "permutation_morphism", "KERNEL_BACKEND",
]
