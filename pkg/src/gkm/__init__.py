"""Exact arithmetic on abstract one-skeleta (GKM graphs)."""
from .builders import complete, cube, johnson, octahedron, polytope_skeleton, product
from .cohomology import (
    CohomologyClass,
    basis,
    decompose,
    dimension,
    dimension_formula,
    thom_basis,
    thom_class,
)
from .errors import GKMError, MalformedInput
from .exactalg import Polynomial
from .reduction import cut, flip_flop, kirwan, reduce
from .skeleton import OneSkeleton, betti, polarize, sample_polarizing, validate
from .surgery import blow_up

__version__ = "0.1.0"

__all__ = [
    "CohomologyClass", "GKMError", "MalformedInput", "OneSkeleton", "Polynomial",
    "basis", "betti", "blow_up", "complete", "cube", "cut", "decompose", "dimension",
    "dimension_formula", "flip_flop", "johnson", "kirwan", "octahedron", "polarize",
    "polytope_skeleton", "product", "reduce", "sample_polarizing", "thom_basis",
    "thom_class", "validate",
]
