"""Subspace concentration audits for centered polytopes.

A centered polytope (centroid at the origin) has a cone-volume measure whose
mass cannot concentrate too heavily on any subspace of normals:

* linear:  mass on L         <=  (dim L / n) * vol(P)
* affine:  mass on flat A    <=  ((dim A + 1) / (n + 1)) * vol(P)

Each audit op returns a :class:`ConcentrationReport` with the exact slack and,
for the linear case, a complete equality certificate: equality holds iff the
normals split across L and a complementary subspace L'.  For affine flats the
complement witness is an attempt (the affine hull of the remaining normals);
its absence does not refute equality.

Equality cases of the affine inequality at the extremes are classified by
:func:`equality_case_classification`: a facet's singleton flat attains the
bound iff the polytope is a pyramid over that facet, and a vertex's tight
hyperplane flat attains it iff the vertex is a pyramid apex.  For simple
polytopes, equality at any face-derived flat forces a simplex.  Violations of
those characterizations raise :class:`~conevol.errors.TheoremViolation`,
which always indicates a bug in this library, never a property of the input.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    NotCentered,
    OriginNotInterior,
    TheoremViolation,
    TooManyFacets,
)
from .kernel import (
    AffineFlat,
    LinearSubspace,
    Vector,
    affine_hull,
    flats_complementary,
    linear_span,
    subspaces_complementary,
)
from .polytope import (
    Polytope,
    VPolytope,
    centroid,
    contains_point,
    face_dim,
    polar,
    pyramid_apexes,
    volume,
)
from .cone_measure import cone_volume_measure

DEFAULT_FACET_CAP = 14


@dataclass(frozen=True)
class ComplementWitness:
    """A complementary flat L' with every normal in L u L' (resp. A u A')."""

    complement: AffineFlat | LinearSubspace
    member_indices: frozenset[int]
    complement_indices: frozenset[int]


@dataclass(frozen=True)
class ConcentrationReport:
    """One audited inequality: lhs <= rhs with slack = rhs - lhs.

    Negative slack is a theorem violation for centered input; audits surface
    it in the report rather than raising so a full document can still be
    assembled and inspected.
    """

    kind: str  # "linear" | "affine"
    flat: AffineFlat | LinearSubspace
    flat_dim: int
    member_indices: frozenset[int]
    lhs: Fraction
    rhs: Fraction
    slack: Fraction
    equality: bool
    witness: ComplementWitness | None


def require_centered(p: Polytope) -> None:
    if not centroid(p).is_zero():
        raise NotCentered("operation needs a centered polytope")
    # centered implies the origin is strictly interior
    if not p.unit_rhs:
        raise TheoremViolation("centered polytope without unit-rhs h-rep")


def _flat_members(p: Polytope, flat: AffineFlat | LinearSubspace) -> frozenset[int]:
    return frozenset(
        i for i in range(p.facet_count) if flat.contains(p.normals[i])
    )


def linear_scc(
    p: Polytope, subspace: LinearSubspace | Iterable[Vector]
) -> ConcentrationReport:
    """Audit the linear subspace concentration inequality for span(vectors).

    The returned witness is decisive: it is present iff equality holds, since
    L' = span of the non-member normals is complementary exactly in the
    equality case.
    """
    require_centered(p)
    if not isinstance(subspace, LinearSubspace):
        subspace = linear_span(list(subspace), p.dim)
    if subspace.ambient_dim != p.dim:
        raise ValueError(
            f"subspace ambient dim {subspace.ambient_dim} != polytope dim {p.dim}"
        )
    members = _flat_members(p, subspace)
    measure = cone_volume_measure(p)
    lhs = sum((measure.weight(i) for i in members), Fraction(0))
    rhs = Fraction(subspace.dim, p.dim) * measure.total
    witness = None
    if lhs == rhs:
        rest = [p.normals[i] for i in range(p.facet_count) if i not in members]
        complement = linear_span(rest, p.dim)
        if subspaces_complementary(subspace, complement):
            witness = ComplementWitness(
                complement=complement,
                member_indices=members,
                complement_indices=frozenset(range(p.facet_count)) - members,
            )
    return ConcentrationReport(
        kind="linear",
        flat=subspace,
        flat_dim=subspace.dim,
        member_indices=members,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        equality=lhs == rhs,
        witness=witness,
    )


def affine_scc(p: Polytope, flat: AffineFlat) -> ConcentrationReport:
    """Audit the affine subspace concentration inequality for a proper flat."""
    require_centered(p)
    if flat.ambient_dim != p.dim:
        raise ValueError(
            f"flat ambient dim {flat.ambient_dim} != polytope dim {p.dim}"
        )
    if flat.dim >= p.dim:
        raise ValueError("flat must be proper (dim < ambient dim)")
    members = _flat_members(p, flat)
    measure = cone_volume_measure(p)
    lhs = sum((measure.weight(i) for i in members), Fraction(0))
    rhs = Fraction(flat.dim + 1, p.dim + 1) * measure.total
    witness = None
    if lhs == rhs:
        rest = [p.normals[i] for i in range(p.facet_count) if i not in members]
        if rest:
            complement = affine_hull(rest)
            if flats_complementary(flat, complement):
                witness = ComplementWitness(
                    complement=complement,
                    member_indices=members,
                    complement_indices=frozenset(range(p.facet_count)) - members,
                )
    return ConcentrationReport(
        kind="affine",
        flat=flat,
        flat_dim=flat.dim,
        member_indices=members,
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        equality=lhs == rhs,
        witness=witness,
    )


def _hulls_of_subsets(
    points: Sequence[Vector], max_dim: int, *, affine: bool
) -> list[tuple[AffineFlat | LinearSubspace, frozenset[int]]]:
    """All distinct hulls of point subsets with dim <= max_dim.

    A hull is identified with its full member index set: the hull of any
    generating subset equals the hull of all members it absorbs, so keying on
    members dedups exactly.  Output is sorted by (dim, member tuple).
    """
    n = points[0].dim
    # a hull of dim d is generated by d+1 points (affine) or d (linear)
    max_size = max_dim + 1 if affine else max_dim
    by_members: dict[frozenset[int], AffineFlat | LinearSubspace] = {}
    for size in range(1, max_size + 1):
        for subset in combinations(range(len(points)), size):
            chosen = [points[i] for i in subset]
            hull: AffineFlat | LinearSubspace
            if affine:
                hull = affine_hull(chosen)
            else:
                hull = linear_span(chosen, n)
            if hull.dim > max_dim:
                continue
            members = frozenset(
                i for i in range(len(points)) if hull.contains(points[i])
            )
            by_members.setdefault(members, hull)
    return sorted(
        ((hull, members) for members, hull in by_members.items()),
        key=lambda pair: (pair[0].dim, tuple(sorted(pair[1]))),
    )


def enumerate_normal_flats(
    p: Polytope,
    max_dim: int | None = None,
    *,
    facet_cap: int = DEFAULT_FACET_CAP,
) -> list[AffineFlat]:
    """Every affine flat of dim <= max_dim spanned by a subset of facet normals.

    ``max_dim`` defaults to dim - 1 (the proper flats the affine inequality
    ranges over); passing dim also yields the full-space hull.  Exhaustive
    over subsets, so capped at ``facet_cap`` facets.  Deterministic order:
    ascending flat dimension, then member index set.
    """
    if p.facet_count > facet_cap:
        raise TooManyFacets(
            f"{p.facet_count} facets > cap {facet_cap}; raise facet_cap to force"
        )
    if max_dim is None:
        max_dim = p.dim - 1
    if max_dim < 0:
        return []
    return [
        flat for flat, _ in _hulls_of_subsets(p.normals, max_dim, affine=True)
    ]


def full_audit(
    p: Polytope,
    max_flat_dim: int | None = None,
    *,
    facet_cap: int = DEFAULT_FACET_CAP,
) -> list[ConcentrationReport]:
    """Audit every normal-spanned flat: affine reports first, then linear."""
    require_centered(p)
    if p.facet_count > facet_cap:
        raise TooManyFacets(
            f"{p.facet_count} facets > cap {facet_cap}; raise facet_cap to force"
        )
    if max_flat_dim is None:
        max_flat_dim = p.dim - 1
    max_flat_dim = min(max_flat_dim, p.dim - 1)
    reports = []
    if max_flat_dim >= 0:
        for flat, _ in _hulls_of_subsets(p.normals, max_flat_dim, affine=True):
            reports.append(affine_scc(p, flat))
        for span, _ in _hulls_of_subsets(
            p.normals, max_flat_dim, affine=False
        ):
            reports.append(linear_scc(p, span))
    return reports


def grunbaum_point_check(p: Polytope) -> bool:
    """Check -v/n lies in P for every vertex v of the centered polytope."""
    require_centered(p)
    n = p.dim
    return all(
        contains_point(p, v.scale(Fraction(-1, n))) for v in p.vertices
    )


def detect_join_structure(
    p: Polytope,
) -> tuple[VPolytope, VPolytope] | None:
    """Split the vertex set across two complementary affine flats, if possible.

    Returns the two vertex classes as V-polytopes, the class containing
    vertex 0 first, or None when no such split exists.  With multiple splits
    the one whose first class has the lexicographically smallest vertex tuple
    wins, making the choice deterministic.
    """
    verts = p.vertices
    count = len(verts)
    splits = []
    seen: set[frozenset[frozenset[int]]] = set()
    for flat, members in _hulls_of_subsets(verts, p.dim - 1, affine=True):
        if len(members) == count:
            raise TheoremViolation("all vertices in a proper flat")
        rest = frozenset(range(count)) - members
        key = frozenset({members, rest})
        if key in seen:
            continue
        seen.add(key)
        other = affine_hull([verts[i] for i in rest])
        if not flats_complementary(flat, other):
            continue
        first, second = (members, rest) if 0 in members else (rest, members)
        splits.append((tuple(sorted(first)), tuple(sorted(second))))
    if not splits:
        return None
    first, second = min(splits)
    return (
        VPolytope(dim=p.dim, vertices=tuple(verts[i] for i in first)),
        VPolytope(dim=p.dim, vertices=tuple(verts[i] for i in second)),
    )


def join_detection_roundtrip(p: Polytope) -> tuple[bool, bool]:
    """(join found in P, join found in polar(P)).

    A polytope with the origin interior splits as a join exactly when its
    polar does, so the two booleans agree for every valid input; callers
    treat disagreement as a library bug.
    """
    if not p.unit_rhs:
        raise OriginNotInterior("polar side of the roundtrip needs 0 interior")
    primal = detect_join_structure(p)
    dual = detect_join_structure(polar(p))
    return primal is not None, dual is not None


@dataclass(frozen=True)
class EqualityCase:
    """One classified equality case of the affine concentration inequality."""

    kind: str  # "pyramid_base" | "pyramid_apex" | "simplex_face"
    report: ConcentrationReport
    facet_index: int | None = None
    apex_index: int | None = None


def is_simple(p: Polytope) -> bool:
    """Every vertex on exactly dim facets."""
    return all(len(p.vertex_facets[i]) == p.dim for i in range(len(p.vertices)))


def _proper_faces_of_simple(p: Polytope) -> list[frozenset[int]]:
    """Facet index sets of the proper faces (dim 1..n-1) of a simple polytope.

    At a simple vertex every subset of its n facets meets in a face, so
    scanning those subsets reaches every proper face; faces are deduped by
    their facet index set.
    """
    faces: set[frozenset[int]] = set()
    for tight in p.vertex_facets:
        tight = sorted(tight)
        for size in range(1, p.dim):
            for subset in combinations(tight, size):
                faces.add(frozenset(subset))
    out = []
    for facet_set in sorted(faces, key=lambda s: (len(s), tuple(sorted(s)))):
        members = set.intersection(
            *(set(p.incidence[i]) for i in facet_set)
        )
        if not members:
            continue
        if 1 <= face_dim(p, frozenset(members)) <= p.dim - 1:
            out.append(facet_set)
    return out


def equality_case_classification(p: Polytope) -> list[EqualityCase]:
    """Classify the equality cases of the affine inequality at the extremes.

    Checks both directions of each characterization:

    * facet singleton flat attains the bound  <->  pyramid over that facet
    * vertex tight-normal hyperplane attains  <->  pyramid apex at the vertex
    * simple polytope, any face-derived flat  <->  simplex (equality at all)

    Any one-sided failure raises TheoremViolation.
    """
    require_centered(p)
    cases = []
    apexes = pyramid_apexes(p)
    base_facets = {base for _, base in apexes}
    apex_vertices = {v for v, _ in apexes}

    for i in range(p.facet_count):
        report = affine_scc(p, affine_hull([p.normals[i]]))
        if report.equality != (i in base_facets):
            raise TheoremViolation(
                "facet equality does not match pyramid structure"
            )
        if report.equality:
            cases.append(
                EqualityCase(kind="pyramid_base", report=report, facet_index=i)
            )

    for v_index in range(len(p.vertices)):
        tight = sorted(p.vertex_facets[v_index])
        flat = affine_hull([p.normals[i] for i in tight])
        if flat.dim != p.dim - 1:
            if v_index in apex_vertices:
                raise TheoremViolation(
                    "apex tight normals must span a hyperplane flat"
                )
            continue
        report = affine_scc(p, flat)
        if report.equality != (v_index in apex_vertices):
            raise TheoremViolation(
                "vertex equality does not match apex structure"
            )
        if report.equality:
            cases.append(
                EqualityCase(
                    kind="pyramid_apex", report=report, apex_index=v_index
                )
            )

    if is_simple(p):
        simplex = len(p.vertices) == p.dim + 1
        for facet_set in _proper_faces_of_simple(p):
            flat = affine_hull([p.normals[i] for i in sorted(facet_set)])
            report = affine_scc(p, flat)
            if report.equality != simplex:
                raise TheoremViolation(
                    "face-flat equality does not match simplex structure"
                )
            if report.equality:
                cases.append(EqualityCase(kind="simplex_face", report=report))
    return cases
