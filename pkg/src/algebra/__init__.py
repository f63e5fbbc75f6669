"""Coefficient rings, weights and exact linear algebra.

- laurent: Z[v, v^-1], Gaussian binomials, the quotients A_l and specializations
- cartan: Cartan data, type A weights and saturated sets
- fields: exact fields used for row reduction
- linalg: echelon subspaces and kernels over those fields
"""

from . import cartan, fields, laurent, linalg

__all__ = ["laurent", "cartan", "fields", "linalg"]
