"""Exact combinatorics of periods of Eisenstein series on (Sp_{2n}, Sp_n x Sp_n).

Submodules: rootsys, levi, sympmat, orbits, exponents, graph, periods,
spectrum and cli.
"""

from ._kernel import BACKEND
from .levi import LeviDatum

__version__ = "0.1.0"

__all__ = ["BACKEND", "LeviDatum", "__version__"]
