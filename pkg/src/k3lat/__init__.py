"""Exact lattice computations for K3 surfaces: Neron-Severi, Mukai and discriminant lattices,
spinor norms, Kneser's criterion, and the symplectomorphism test on CH^2."""

from .lattice import (EnumerationTooLarge, IntegerLattice, LatticeError, Signature, build_named,
                      direct_sum, determinant, enumerate_vectors_of_norm, norm, pairing, parse_construct,
                      signature, twist)
from .isometry import Isometry, NotAnIsometryError, ReflectionFactorization

__all__ = [
    "EnumerationTooLarge", "IntegerLattice", "Isometry", "LatticeError", "NotAnIsometryError",
    "ReflectionFactorization", "Signature", "build_named", "determinant", "direct_sum",
    "enumerate_vectors_of_norm", "norm", "pairing", "parse_construct", "signature", "twist",
]
