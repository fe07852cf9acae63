"""Exact computational algebra for C_p-Green functors of Lie type."""
from .errors import GreenLieError
from .exactq import Matrix, Q, Subspace
from .liecore import LieAlgebra, Representation
from .mackey import CpMackey, GreenLieFunctor, GreenLieMorphism, LieBimodule, validate_green_lie
from .cohomology import Complex, EquivCochain, complex_for
from .constructions import build_example, list_examples

__all__ = [
    "GreenLieError", "Matrix", "Q", "Subspace", "LieAlgebra", "Representation", "CpMackey",
    "GreenLieFunctor", "GreenLieMorphism", "LieBimodule", "validate_green_lie", "Complex",
    "EquivCochain", "complex_for", "build_example", "list_examples",
]
__version__ = "0.1.0"
