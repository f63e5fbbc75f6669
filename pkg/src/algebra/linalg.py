"""Sparse exact linear algebra over the fields in :mod:`fields`.

Vectors are dicts ``key -> field element`` with orderable keys and no zero
entries.  ``EchelonSpace`` keeps a reduced row-echelon basis, so reducing a
vector against it gives the canonical normal form modulo the subspace; the
non-pivot keys then index a basis of the quotient.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

logger = logging.getLogger(__name__)

Vector = Dict[Hashable, Any]


def clean(vec: Mapping[Hashable, Any], field) -> Vector:
    return {k: c for k, c in vec.items() if not field.is_zero(c)}


def axpy(field, y: Vector, a, x: Mapping[Hashable, Any]) -> Vector:
    """Return y + a*x (new dict)."""
    out = dict(y)
    for k, c in x.items():
        value = out.get(k, field.zero) + a * c
        if field.is_zero(value):
            out.pop(k, None)
        else:
            out[k] = value
    return out


def scale(field, a, x: Mapping[Hashable, Any]) -> Vector:
    if field.is_zero(a):
        return {}
    return {k: a * c for k, c in x.items()}


class EchelonSpace:
    """Subspace of K^(keys) held in reduced row-echelon form.

    Each stored row has pivot equal to its smallest key, coefficient one at
    the pivot, and zero at every other row's pivot.
    """

    def __init__(self, field, vectors: Iterable[Mapping[Hashable, Any]] = ()) -> None:
        self.field = field
        self.rows: Dict[Hashable, Vector] = {}
        for vec in vectors:
            self.add(vec)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[Hashable]:
        return sorted(self.rows)

    def basis(self) -> List[Vector]:
        return [dict(self.rows[p]) for p in self.pivots]

    def reduce(self, vec: Mapping[Hashable, Any]) -> Vector:
        """Normal form of ``vec`` modulo the subspace (supported off the pivots)."""
        out = clean(vec, self.field)
        for pivot in [k for k in out if k in self.rows]:
            coeff = out.get(pivot)
            if coeff is None:
                continue
            out = axpy(self.field, out, -coeff, self.rows[pivot])
        return out

    def contains(self, vec: Mapping[Hashable, Any]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[Hashable, Any]) -> bool:
        """Insert ``vec``; return True when the dimension grew."""
        residue = self.reduce(vec)
        if not residue:
            return False
        pivot = min(residue)
        residue = scale(self.field, self.field.one / residue[pivot], residue)
        for key, row in list(self.rows.items()):
            coeff = row.get(pivot)
            if coeff is not None:
                self.rows[key] = axpy(self.field, row, -coeff, residue)
        self.rows[pivot] = residue
        return True

    def contains_space(self, other: "EchelonSpace") -> bool:
        return all(self.contains(row) for row in other.rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, EchelonSpace):
            return NotImplemented
        return self.dim == other.dim and self.contains_space(other)

    __hash__ = None


def rank(field, vectors: Iterable[Mapping[Hashable, Any]]) -> int:
    return EchelonSpace(field, vectors).dim


def kernel(
    field,
    columns: Sequence[Tuple[Hashable, Mapping[Hashable, Any]]],
) -> List[Vector]:
    """Kernel of the linear map sending unknown ``j`` to ``image_j``.

    ``columns`` lists ``(j, image_j)``.  The rows ``(image_j | e_j)`` are
    reduced with image keys ordered before unknown keys; rows whose image part
    vanishes span the kernel.
    """
    space = EchelonSpace(field)
    for j, image in columns:
        row = {(0, k): c for k, c in image.items()}
        row[(1, j)] = field.one
        space.add(row)
    result = []
    for pivot, row in space.rows.items():
        if pivot[0] == 1:
            result.append({k[1]: c for k, c in row.items()})
    return result
