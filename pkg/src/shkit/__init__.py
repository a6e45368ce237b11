"""Finite semi-Heyting algebras with a dually quasi-De Morgan negation."""

from .algebra import AlgebraError, AxiomViolation, FiniteAlgebra, Lattice, load_algebra, validate
from .catalog import CATALOG, check, get_identity, holds
from .classify import classify, level, level_alt
from .enumerator import SearchSpec, search
from .paper import builtin, verify_paper
from .terms import evaluate, parse, parse_identity

__all__ = [
    "AlgebraError",
    "AxiomViolation",
    "CATALOG",
    "FiniteAlgebra",
    "Lattice",
    "SearchSpec",
    "builtin",
    "check",
    "classify",
    "evaluate",
    "get_identity",
    "holds",
    "level",
    "level_alt",
    "load_algebra",
    "parse",
    "parse_identity",
    "search",
    "validate",
    "verify_paper",
]
