"""Exact tooling for local-unitary vs local-Clifford equivalence.

The package certifies LU = LC for surface-code and grid cluster states,
screens CSS states through binary-matroid graphicness, decides diagonal
local-Clifford feasibility exactly, and grows local-unitary-but-not-
local-Clifford state pairs to new lengths by CSS-code concatenation.
"""

from .embedding import EmbeddedGraph, parse_graph, toric_grid
from .errors import (CapExceeded, FormatError, PreconditionError,
                     StablulcError)
from .factory import (CounterexampleSeed, CssCode, LengthPlan, encode_pair,
                      enumerate_lengths, length_plan, rep2, rm15, rm31,
                      transversal_diag_action)
from .gf2 import BitMatrix, BitVector
from .matroid import (BinaryMatroid, css_counterexample_screen, has_minor,
                      is_cographic, is_graphic, is_isomorphic,
                      minor_closure_check, surface_code_matroid)
from .oracle import (DiagonalLocalUnitary, QuadraticFormState, dlc_feasible,
                     verify_dlu_pair)
from .pauli import PauliOperator, StabilizerGroup
from .surface import (build_code, build_state, grid_cluster_state,
                      grid_minimality_certificate, lulc_certificate,
                      minimal_decompositions, transversal_clifford_conclusion)

__version__ = "0.1.0"

__all__ = [
    "BinaryMatroid", "BitMatrix", "BitVector", "CapExceeded",
    "CounterexampleSeed", "CssCode", "DiagonalLocalUnitary", "EmbeddedGraph",
    "FormatError", "LengthPlan", "PauliOperator", "PreconditionError",
    "QuadraticFormState", "StablulcError", "StabilizerGroup", "build_code",
    "build_state", "css_counterexample_screen", "dlc_feasible", "encode_pair",
    "enumerate_lengths", "grid_cluster_state", "grid_minimality_certificate",
    "has_minor", "is_cographic", "is_graphic", "is_isomorphic", "length_plan",
    "lulc_certificate", "minimal_decompositions", "minor_closure_check",
    "parse_graph", "rep2", "rm15", "rm31", "surface_code_matroid",
    "toric_grid", "transversal_clifford_conclusion",
    "transversal_diag_action", "verify_dlu_pair",
]
