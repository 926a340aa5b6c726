"""Exact centralizer algebras of the finite and infinite subgroups of SU(2).

The package constructs and cross-verifies the endomorphism algebras of
tensor powers of the defining two-dimensional representation: walk counts on
the McKay graphs, closed dimension formulas, matrix-unit and diagram bases,
Temperley-Lieb and branch idempotents, all in exact cyclotomic arithmetic.
"""

from .cyclotomic import CycloNum, root_of_unity
from .groups import SubgroupSpec, parse_group
from .tensor_endo import SparseEndo

__all__ = ["CycloNum", "root_of_unity", "SubgroupSpec", "parse_group",
           "SparseEndo"]
__version__ = "0.1.0"
