"""Natural Hopf algebras of nonsymmetric operads.

Free operads on a signature, the associative operad and the multiset operads
``MAs``; their natural Hopf algebras in the ``E`` basis and, for free
operads, the ``F`` and ``H`` bases built on the easterly wind lattices;
polynomial realizations over related alphabets; and the WQSym,
decorated-forest and Faà di Bruno specializations.
"""
from .core import (
    EMPTY,
    LEAF,
    ArityError,
    Forest,
    NHopfError,
    ParseError,
    Signature,
    Term,
    UnsupportedError,
    edges,
    enumerate_reduced_forests,
    enumerate_terms,
    forests_up_to,
    full_compose,
    generator_term,
    node,
    nodes,
    parse_forest,
    parse_term,
    partial_compose,
    preorder_decorations,
    reduce_forest,
)
from .hopf import HopfElement, NaturalHopfAlgebra, Tensor
from .operad import AsElement, AssociativeOperad, FreeOperad, MasElement, MasOperad

__version__ = "0.1.0"

S_E = Signature.parse("a:1,b:2,c:3")
"""The running example signature: ``a`` unary, ``b`` binary, ``c`` ternary."""

__all__ = [
    "EMPTY", "LEAF", "ArityError", "Forest", "NHopfError", "ParseError", "Signature",
    "Term", "UnsupportedError", "edges", "enumerate_reduced_forests", "enumerate_terms",
    "forests_up_to", "full_compose", "generator_term", "node", "nodes", "parse_forest",
    "parse_term", "partial_compose", "preorder_decorations", "reduce_forest",
    "HopfElement", "NaturalHopfAlgebra", "Tensor", "AsElement", "AssociativeOperad",
    "FreeOperad", "MasElement", "MasOperad", "S_E",
]
