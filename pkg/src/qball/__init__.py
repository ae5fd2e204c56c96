"""Exact computer algebra for the quantum matrix ball.

Normal forms for the quantized coordinate rings, the invariant-kernel
bimodule with the quantum Poisson kernel, and machine verification of the
identity chain ending in the quantum Hua equations.
"""

from .scalars import VScalar, Q, V, qpow, vpow
from .ncpoly import Algebra, NCPoly, normalize
from .algebras import boundary_algebra, matrix_algebra, pol_algebra, star_poly

__all__ = [
    "VScalar", "Q", "V", "qpow", "vpow",
    "Algebra", "NCPoly", "normalize",
    "boundary_algebra", "matrix_algebra", "pol_algebra", "star_poly",
]

__version__ = "0.1.0"
