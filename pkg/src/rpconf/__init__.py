"""Exact mod-2 cohomology computations for C(RP^n, 2), W_n and the Grassmannian G_{n+1,2}."""

from .ambient import WClass, WMonomial, parse_monomial
from .grassmann import GrassmannRing
from .wcalg import WRing

__all__ = ["GrassmannRing", "WRing", "WClass", "WMonomial", "parse_monomial"]
__version__ = "0.1.0"
