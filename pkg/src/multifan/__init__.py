"""Exact volume polynomials and duality-algebra invariants of multi-fans."""

from .algebra import HilbertFunction, annihilator_basis, d_vector, hilbert, is_editable, var_dimension
from .errors import ConsistencyError, MultiFanError
from .exactmath import SparsePolynomial
from .explorer import enumerate_strata, r_invariant, singular_vertices
from .fan import MultiFan, connected_sum, join, project, random_fan, suspend
from .moves import MoveSpec, apply_move, random_moves, suspended_move
from .simplicial import SimplicialChain, SimplicialComplex
from .volume import evaluate_volume, volume_polynomial

__all__ = [
    "ConsistencyError",
    "HilbertFunction",
    "MoveSpec",
    "MultiFan",
    "MultiFanError",
    "SimplicialChain",
    "SimplicialComplex",
    "SparsePolynomial",
    "annihilator_basis",
    "apply_move",
    "connected_sum",
    "d_vector",
    "enumerate_strata",
    "evaluate_volume",
    "hilbert",
    "is_editable",
    "join",
    "project",
    "r_invariant",
    "random_fan",
    "random_moves",
    "singular_vertices",
    "suspend",
    "suspended_move",
    "var_dimension",
    "volume_polynomial",
]
