"""Numerical primitives: batched root finding, bisection, differences."""

from ._backend import BACKEND
from .core import (
    ComplexPoly,
    all_roots,
    backend_name,
    bisect,
    fd_jacobian,
    roots_batch,
)

__all__ = [
    "BACKEND",
    "ComplexPoly",
    "all_roots",
    "backend_name",
    "bisect",
    "fd_jacobian",
    "roots_batch",
]
