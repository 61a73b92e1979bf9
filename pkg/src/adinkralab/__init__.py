"""Adinkras, their complexes of free modules and the invariants computed from them."""

from .adinkra import (Adinkra, AdinkraError, Edge, Parity, PreconditionError, RankSequence, Vertex,
                      enumerate_rank_sequences, graph_tensor, koszul_adinkra, lower_vertex,
                      raise_vertex, rank_sequence, validate, validate_any, validate_q, valise_of,
                      zero_mode_vertices)
from .complexes import (ChainMap, FreeComplex, MatrixFactorization, check_laplacian, complex_of,
                        cone, cone_of_raise, embed_into_koszul, knorrer, unroll, valise_mf)
from .exactalg import Poly, PolyMatrix, VariableSet, quadratic_form
from .formats import dump_adinkra, load_adinkra, load_bundled

__version__ = "0.1.0"
