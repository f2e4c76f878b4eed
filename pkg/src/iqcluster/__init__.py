"""Exact cluster realisation of the AI-type iquantum group.

The package realises the universal iquantum group of type AI_n inside the
quantum torus algebra of a self-amalgamated Fock-Goncharov triangle, and
verifies its defining relations, quasi-cluster braid symmetries, Coxeter
cyclicity, coideal formulas, PBW leading terms, integrality and the
quantum-dilogarithm form of the rank-one quasi K-matrix, all in exact
arithmetic over Z[q^(1/2), q^(-1/2)].
"""

from . import errors
from .scalars import QLaurent, QScalar

__all__ = ["errors", "QLaurent", "QScalar"]
__version__ = "0.1.0"
