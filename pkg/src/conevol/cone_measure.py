"""Cone-volume measures of polytopes with the origin strictly inside.

For each facet F_i with unit-rhs outer normal a_i, the facet cone is
conv({0} u F_i).  Its exact volume is the atom weight the measure places at
a_i.  Weights are computed by triangulating the facet cone directly (facet
simplices coned at the origin, |det| / n! each); no surface-area route and
no irrational normalization is ever involved, so every weight is rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .errors import OriginNotInterior
from .kernel import Matrix, Vector, determinant
from .polytope import Polytope, volume


@dataclass(frozen=True)
class ConeVolumeMeasure:
    """Atoms (outer normal, weight) in facet order, plus the total mass.

    The total equals the polytope volume exactly (pyramid decomposition);
    :func:`pyramid_formula_check` re-derives both sides independently.
    """

    dim: int
    atoms: tuple[tuple[Vector, Fraction], ...]
    total: Fraction

    def weight(self, facet_index: int) -> Fraction:
        return self.atoms[facet_index][1]


def _require_origin_interior(p: Polytope) -> None:
    if not p.unit_rhs:
        raise OriginNotInterior("cone volumes need the origin strictly inside")


def cone_volume(p: Polytope, facet_index: int) -> Fraction:
    """Exact volume of conv({0} u F_i) via a full-dimensional triangulation."""
    _require_origin_interior(p)
    n = p.dim
    fact = factorial(n)
    total = Fraction(0)
    for simplex in p.facet_structure[facet_index].simplices:
        det = determinant(Matrix(tuple(p.vertices[j] for j in simplex)))
        total += abs(det) / fact
    return total


@lru_cache(maxsize=None)
def cone_volume_measure(p: Polytope) -> ConeVolumeMeasure:
    """The cone-volume measure: one rational atom per facet."""
    _require_origin_interior(p)
    atoms = tuple(
        (p.normals[i], cone_volume(p, i)) for i in range(p.facet_count)
    )
    total = sum(w for _, w in atoms)
    return ConeVolumeMeasure(p.dim, atoms, total)


def pyramid_formula_check(p: Polytope) -> tuple[Fraction, Fraction, bool]:
    """(volume, sum of cone volumes, equal).

    The two sides come from different decompositions (interior-point cone
    triangulation versus facet cones at the origin), so exact agreement is an
    informative self-test, not a tautology.  ``equal`` must be True for every
    valid input.
    """
    vol = volume(p)
    total = cone_volume_measure(p).total
    return vol, total, vol == total


def facet_cone_functional(
    p: Polytope, facet_indices: Sequence[int], x: Vector
) -> Fraction:
    """sum over i of (1 - <a_i, x>) * vol(C_i), an affine function of x.

    Restricted to the full facet index set it equals the volume at x = 0 and
    drops by <x, sum a_i vol(C_i)> elsewhere.
    """
    if x.dim != p.dim:
        raise ValueError(f"point dimension {x.dim} != ambient {p.dim}")
    facet_indices = list(facet_indices)
    if not facet_indices:
        raise ValueError("need at least one facet index")
    measure = cone_volume_measure(p)
    seen = set()
    total = Fraction(0)
    for i in facet_indices:
        if i in seen:
            raise ValueError(f"repeated facet index {i}")
        seen.add(i)
        a, w = measure.atoms[i]
        total += (1 - a.dot(x)) * w
    return total
