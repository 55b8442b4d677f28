"""Exact computation of the integral Chow rings CH(Y_n) and CH(X_n)."""

__version__ = "0.1.0"

from .chow_x import compute_chow_x, verify_chow_x
from .chow_y import ChowY, build_basis
from .quotient import QuotientRing, build

__all__ = ["ChowY", "QuotientRing", "build", "build_basis", "compute_chow_x", "verify_chow_x", "__version__"]
