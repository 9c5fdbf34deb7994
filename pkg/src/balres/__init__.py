"""Exact resistance matrices of matrix-weighted balanced digraphs and their inverses."""

from .errors import (
    BalresError,
    DegenerateQuadratic,
    HypothesisViolation,
    InputError,
    NotBalanced,
    NotStronglyConnected,
    ParseError,
    SingularMatrixError,
)
from .graph import UndirectedGraph, WeightedDigraph, random_balanced_digraph, symmetrize, undirected_shadow
from .laplacian import build_laplacian, check_structure, laplacian_matrix
from .matrix import BlockMatrix, RMatrix, invert, pinv_laplacian_like, rational
from .report import VerificationReport
from .resistance import (
    ResistanceParams,
    build_resistance,
    inverse_closed_form,
    verify_lemma_identities,
)

__version__ = "0.1.0"
