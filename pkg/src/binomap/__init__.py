"""Decomposition of binomial systems into monomial maps."""
from .decomp import Decomposition, contains, decompose, lattice_relations
from .enumerate import (EnumerationOptions, EquationStatus, NotBinomialError, classify,
                        enumerate_consistent, enumerate_covers)
from .incidence import IncidenceMatrix, build_incidence, row_covered, vanishes
from .lattice import HNFResult, hnf, kernel_lattice
from .poly import (ParseError, PolynomialSystem, Term, VariableTable, adjacent_minors,
                   parse_system, serialize_system)
from .toric import (BranchLimitError, MonomialMap, ResidualSystem, build_map, residual,
                    solve_coefficients, verify_map)

__all__ = [
    "BranchLimitError", "Decomposition", "EnumerationOptions", "EquationStatus", "HNFResult",
    "IncidenceMatrix", "MonomialMap", "NotBinomialError", "ParseError", "PolynomialSystem",
    "ResidualSystem", "Term", "VariableTable", "adjacent_minors", "build_incidence",
    "build_map", "classify", "contains", "decompose", "enumerate_consistent",
    "enumerate_covers", "hnf", "kernel_lattice", "lattice_relations", "parse_system",
    "residual", "row_covered", "serialize_system", "solve_coefficients", "vanishes",
    "verify_map",
]
