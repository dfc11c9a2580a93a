"""Exact holonomy and Einstein metrics for Lorentzian Walker manifolds."""

from .exactnum import EvaluationError, ParseError, Poly, Q, RatFunc
from .liealg import HolonomyDescriptor, Subalgebra, builtin, decompose
from .walker import WalkerMetric, infinitesimal_holonomy, ricci

__all__ = [
    "EvaluationError",
    "HolonomyDescriptor",
    "ParseError",
    "Poly",
    "Q",
    "RatFunc",
    "Subalgebra",
    "WalkerMetric",
    "builtin",
    "decompose",
    "infinitesimal_holonomy",
    "ricci",
]

__version__ = "0.1.0"
