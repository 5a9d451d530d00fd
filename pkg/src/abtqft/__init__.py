"""Abelian-group-valued TQFT computations.

Exact finitely generated abelian groups, the symmetric monoidal
categories of group morphisms with their homotopy fibers, discrete
differential geometry with lattice circle connections, and the mod-24
and mod-2 bordism invariant pipelines built on top of them.
"""

__version__ = "0.1.0"

from . import analytic, fgab, intmat, moncat
from . import discrete, invariants
