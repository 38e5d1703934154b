"""Exact verification engine for spin geometry with parallel skew-symmetric torsion."""
from .exactfield import ExactScalar, ScalarPoly
from .clifford import Multivector
from .linalg import EXACT, FLOAT

__version__ = "0.1.0"

__all__ = ["ExactScalar", "ScalarPoly", "Multivector", "EXACT", "FLOAT", "__version__"]
