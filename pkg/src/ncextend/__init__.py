"""Graph parameters extended to direct sums of noncommutative graphs ⊕_d G_d ⊗ Q_d.

Exact rational machinery for cohomomorphism witnesses, value certificates
and their transport, plus the numerical Lovász theta solver and closed-form
exponent bounds.
"""

from .graph import Graph, complement, complete, cycle, empty, hadamard_graph, strong_product
from .semiring import AElement, a_add, a_mul, evaluate, to_ncgraph

__all__ = [
    "AElement",
    "Graph",
    "a_add",
    "a_mul",
    "complement",
    "complete",
    "cycle",
    "empty",
    "evaluate",
    "hadamard_graph",
    "strong_product",
    "to_ncgraph",
]
__version__ = "0.1.0"
