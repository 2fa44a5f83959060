"""Exact linear algebra: RCF over Q and F_p, Hermite normal form, LLL."""

from .hnf import HNFResult, hnf, hnf_rows, integer_nullspace, is_hnf, lattice_index, same_lattice, saturate
from .lll import DependentVectorsError, gram_schmidt, is_lll_reduced, lll_reduce
from .matrix import SparseIntMatrix, sqnorm, vstack
from .modular import CONFIRM_PRIME, DEFAULT_PRIME, ModularRCF, is_prime, rank_modular, rcf_modular
from .rational import RCF, nullspace_canonical, primitive_vector, rank_rational, rcf_rational

__all__ = [
    "CONFIRM_PRIME",
    "DEFAULT_PRIME",
    "DependentVectorsError",
    "HNFResult",
    "ModularRCF",
    "RCF",
    "SparseIntMatrix",
    "gram_schmidt",
    "hnf",
    "hnf_rows",
    "integer_nullspace",
    "is_hnf",
    "is_lll_reduced",
    "is_prime",
    "lattice_index",
    "lll_reduce",
    "nullspace_canonical",
    "primitive_vector",
    "rank_modular",
    "rank_rational",
    "rcf_modular",
    "rcf_rational",
    "same_lattice",
    "saturate",
    "sqnorm",
    "vstack",
]
