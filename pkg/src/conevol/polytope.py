"""Exact polytope representations and conversions.

A :class:`Polytope` carries three synchronized pieces of data:

* ``v_rep``: the irredundant vertex list, sorted lexicographically,
* ``h_rep``: the irredundant facet list.  When the origin is strictly
  interior the facets are normalized to ``<a_i, x> <= 1``; otherwise they are
  stored in primitive-integer form ``<g_i, x> <= c_i`` (this happens e.g. for
  hulls taken before recentering, where the origin may sit on the boundary),
* ``incidence``: for each facet, the set of vertex indices lying on it.

Everything is exact.  Conversions are exhaustive-search based, which is the
right trade-off at the dimensions this package supports (cap 6 by default):
facets of a hull are found by scanning point subsets for supporting
hyperplanes, and vertices of an H-polytope by scanning constraint subsets.
Boundedness and feasibility of H-data are certified by Fourier-Motzkin
elimination before enumeration.

Volume and centroid use the canonical triangulation: each facet is fanned
from its lexicographically smallest vertex (recursively, through a
coordinate projection of the facet), and the resulting facet simplices are
coned at an interior point (the vertex average).  Cone volumes at the origin
reuse the same facet simplices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    CapExceeded,
    DegenerateInput,
    NotAFace,
    NotComplementary,
    OriginNotInterior,
    TheoremViolation,
    Unbounded,
)
from .kernel import (
    ONE,
    ZERO,
    AffineFlat,
    Matrix,
    Vector,
    _rref_core,
    affine_hull,
    determinant,
    flats_complementary,
    kernel_basis,
    rank_of_rows,
    solve_unique,
    vector,
    zero_vector,
)

DEFAULT_DIM_CAP = 6
_SUBSET_CAP = 400_000
_FM_ROW_CAP = 20_000


@dataclass(frozen=True)
class VPolytope:
    """Vertex representation: an irredundant rational point list in R^dim."""

    dim: int
    vertices: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        for v in self.vertices:
            if v.dim != self.dim:
                raise ValueError(f"vertex dimension {v.dim} != ambient {self.dim}")


@dataclass(frozen=True)
class HPolytope:
    """Halfspace representation: rows <normals[i], x> <= rhs[i]."""

    dim: int
    normals: tuple[Vector, ...]
    rhs: tuple[Fraction, ...]
    irredundant: bool = False

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("ambient dimension must be at least 1")
        if len(self.normals) != len(self.rhs):
            raise ValueError("normals and rhs lengths differ")
        for a in self.normals:
            if a.dim != self.dim:
                raise ValueError(f"normal dimension {a.dim} != ambient {self.dim}")
            if a.is_zero():
                raise ValueError("zero normal vector")


@dataclass(frozen=True)
class _FacetStructure:
    """Triangulation and ridge data of one facet.

    ``simplices`` are (dim)-tuples of polytope vertex indices triangulating
    the facet; ``ridges`` are the vertex-index sets of the facet's own
    facets, i.e. the (dim-2)-faces of the polytope contained in this facet.
    """

    simplices: tuple[tuple[int, ...], ...]
    ridges: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class Polytope:
    """A full-dimensional bounded rational polytope with both representations."""

    v_rep: VPolytope
    h_rep: HPolytope
    incidence: tuple[frozenset[int], ...]

    @property
    def dim(self) -> int:
        return self.v_rep.dim

    @property
    def vertices(self) -> tuple[Vector, ...]:
        return self.v_rep.vertices

    @property
    def normals(self) -> tuple[Vector, ...]:
        return self.h_rep.normals

    @property
    def rhs(self) -> tuple[Fraction, ...]:
        return self.h_rep.rhs

    @property
    def facet_count(self) -> int:
        return len(self.h_rep.normals)

    @property
    def origin_interior(self) -> bool:
        return all(b > 0 for b in self.h_rep.rhs)

    @property
    def unit_rhs(self) -> bool:
        return all(b == 1 for b in self.h_rep.rhs)

    @cached_property
    def vertex_facets(self) -> tuple[frozenset[int], ...]:
        """For each vertex index, the set of facet indices containing it."""
        table: list[set[int]] = [set() for _ in self.vertices]
        for i, tight in enumerate(self.incidence):
            for v in tight:
                table[v].add(i)
        return tuple(frozenset(s) for s in table)

    @cached_property
    def interior_point(self) -> Vector:
        """The vertex average; strictly interior for a full-dimensional polytope."""
        total = zero_vector(self.dim)
        for v in self.vertices:
            total = total + v
        return total.scale(Fraction(1, len(self.vertices)))

    @cached_property
    def facet_structure(self) -> tuple[_FacetStructure, ...]:
        return tuple(_build_facet_structure(self, i) for i in range(self.facet_count))

    @cached_property
    def _volume_centroid(self) -> tuple[Fraction, Vector]:
        return _volume_centroid_coned(self, self.interior_point, skip_incident=False)


def _sorted_vertex_tuple(points: Iterable[Vector]) -> tuple[Vector, ...]:
    return tuple(sorted(set(points)))


def _primitive_halfspace(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[tuple[int, ...], int]:
    """Scale <g, x> <= c by a positive rational so entries become coprime
    integers.  Orientation is preserved (positive scaling only)."""
    values = list(coeffs) + [rhs]
    scale = lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1]


def _assemble(
    vertices: Sequence[Vector],
    normals: Sequence[Vector],
    rhs: Sequence[Fraction],
    *,
    validate: str = "full",
) -> Polytope:
    """Canonicalize representations, derive incidence, validate, construct.

    Facets are normalized to unit right-hand side when the origin is strictly
    interior, else to primitive-integer form; both are then sorted
    lexicographically so equal polytopes compare equal.
    """
    verts = _sorted_vertex_tuple(vertices)
    if not verts:
        raise DegenerateInput("no vertices")
    n = verts[0].dim
    if all(b > 0 for b in rhs):
        facets = sorted(
            {(a.scale(ONE / b), ONE) for a, b in zip(normals, rhs, strict=True)},
            key=lambda f: f[0].coords,
        )
    else:
        primitive = {_primitive_halfspace(a.coords, b) for a, b in zip(normals, rhs, strict=True)}
        facets = [
            (vector(g), Fraction(c))
            for g, c in sorted(primitive)
        ]
    out_normals = tuple(a for a, _ in facets)
    out_rhs = tuple(b for _, b in facets)
    incidence = []
    for a, b in facets:
        tight = frozenset(j for j, v in enumerate(verts) if a.dot(v) == b)
        incidence.append(tight)
    poly = Polytope(
        VPolytope(n, verts),
        HPolytope(n, out_normals, out_rhs, irredundant=True),
        tuple(incidence),
    )
    _validate_polytope(poly, validate)
    return poly


def _validate_polytope(p: Polytope, level: str) -> None:
    """Certify the V/H pair describes one and the same bounded polytope.

    ``trusted`` checks containment and incidence agreement only.  ``light``
    adds the rank certificates (each vertex is a genuine vertex of the
    H-polytope, each halfspace supports a genuine facet of the hull).
    ``full`` additionally certifies the facet list is complete: every ridge
    of every facet lies in exactly two facets and the facet-ridge adjacency
    graph is connected, which pins the facet set to the whole boundary.
    """
    if level not in ("trusted", "light", "full"):
        raise ValueError(f"unknown validation level: {level}")
    n = p.dim
    verts = p.vertices
    if len(verts) < n + 1:
        raise DegenerateInput(f"{len(verts)} vertices cannot span dimension {n}")
    for (a, b), tight in zip(zip(p.normals, p.rhs), p.incidence, strict=True):
        for j, v in enumerate(verts):
            d = a.dot(v)
            if d > b:
                raise DegenerateInput(f"vertex {v.coords} violates facet {a.coords} <= {b}")
            if (d == b) != (j in tight):
                raise DegenerateInput("incidence table disagrees with tightness")
    if level == "trusted":
        return
    hom = [list(v.coords) + [ONE] for v in verts]
    rank = rank_of_rows(hom)
    if rank != n + 1:
        raise DegenerateInput(f"affine rank {rank - 1} < ambient dimension {n}")
    for j, tight_facets in enumerate(p.vertex_facets):
        rows = [p.normals[i].coords for i in tight_facets]
        if rank_of_rows(rows) != n:
            raise DegenerateInput(f"point {verts[j].coords} is not a vertex (tight rank < {n})")
    for i, tight in enumerate(p.incidence):
        rows = [list(verts[j].coords) + [ONE] for j in tight]
        if rank_of_rows(rows) != n:
            raise DegenerateInput(f"halfspace {i} does not support a facet")
    if level == "light" or n == 1:
        return
    ridge_owners: dict[frozenset[int], list[int]] = {}
    for i, fs in enumerate(p.facet_structure):
        for ridge in fs.ridges:
            owners = [j for j, tight in enumerate(p.incidence) if ridge <= tight]
            if len(owners) != 2:
                raise DegenerateInput(
                    f"ridge {sorted(ridge)} lies in {len(owners)} facets, expected 2"
                )
            ridge_owners.setdefault(ridge, owners)
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for owners in ridge_owners.values():
            if i in owners:
                for j in owners:
                    if j not in seen:
                        seen.add(j)
                        frontier.append(j)
    if len(seen) != p.facet_count:
        raise DegenerateInput("facet adjacency graph is disconnected; facet list incomplete")


def _build_facet_structure(p: Polytope, facet_index: int) -> _FacetStructure:
    """Triangulate facet ``facet_index`` and list its ridges.

    The facet lives in a hyperplane not parallel to coordinate axis ``k``
    (any axis where its normal is nonzero), so dropping coordinate ``k`` is
    an affine bijection of the facet onto a full-dimensional polytope in one
    dimension less.  That lower hull is triangulated recursively by fanning
    from its lexicographically smallest vertex.
    """
    n = p.dim
    member_indices = sorted(p.incidence[facet_index])
    if n == 1:
        return _FacetStructure(simplices=((member_indices[0],),), ridges=())
    normal = p.normals[facet_index]
    k = next(i for i, x in enumerate(normal.coords) if x != 0)
    projected = []
    back: dict[tuple[Fraction, ...], int] = {}
    for idx in member_indices:
        coords = tuple(x for i, x in enumerate(p.vertices[idx].coords) if i != k)
        projected.append(Vector(coords))
        back[coords] = idx
    sub = convex_hull(projected, _validate="light")
    if len(sub.vertices) != len(member_indices):
        raise TheoremViolation("facet vertex projected to a non-extreme point")
    sub_simplices = _fan_triangulation(sub)
    simplices = tuple(
        tuple(back[sub.vertices[s].coords] for s in simplex) for simplex in sub_simplices
    )
    ridges = tuple(
        frozenset(back[sub.vertices[s].coords] for s in tight) for tight in sub.incidence
    )
    return _FacetStructure(simplices=simplices, ridges=ridges)


def _fan_triangulation(p: Polytope) -> tuple[tuple[int, ...], ...]:
    """Triangulate by fanning from the lexicographically smallest vertex:
    cone vertex 0 over the triangulations of the facets that miss it."""
    if p.dim == 1:
        return ((0, len(p.vertices) - 1),)
    simplices = []
    for i, tight in enumerate(p.incidence):
        if 0 in tight:
            continue
        for s in p.facet_structure[i].simplices:
            simplices.append(s + (0,))
    return tuple(simplices)


def _volume_centroid_coned(
    p: Polytope, apex: Vector, *, skip_incident: bool
) -> tuple[Fraction, Vector]:
    """Exact volume and centroid of the cone decomposition over ``apex``.

    With an interior apex every facet contributes; with a vertex apex the
    facets containing it are skipped (their cones are flat).
    """
    n = p.dim
    fact = factorial(n)
    total = ZERO
    moment = zero_vector(n)
    inv = Fraction(1, n + 1)
    for i, fs in enumerate(p.facet_structure):
        if skip_incident and any(p.vertices[j] == apex for j in p.incidence[i]):
            continue
        for simplex in fs.simplices:
            rows = tuple(p.vertices[j] - apex for j in simplex)
            det = determinant(Matrix(rows))
            if det < 0:
                det = -det
            if det == 0:
                raise TheoremViolation("flat simplex in a cone decomposition")
            vol = det / fact
            total += vol
            csum = apex
            for j in simplex:
                csum = csum + p.vertices[j]
            moment = moment + csum.scale(inv * vol)
    if total == 0:
        raise DegenerateInput("zero volume; polytope not full-dimensional")
    return total, moment.scale(ONE / total)


def volume(p: Polytope) -> Fraction:
    """Exact volume via the canonical interior-point cone triangulation."""
    return p._volume_centroid[0]


def centroid(p: Polytope) -> Vector:
    """Exact centroid (volume-weighted barycenter)."""
    return p._volume_centroid[1]


def vertex_fan_volume_centroid(p: Polytope, apex_index: int = 0) -> tuple[Fraction, Vector]:
    """Volume and centroid by a second, independent decomposition: cones over
    the facets that miss one vertex.  Used as a cross-check oracle."""
    apex = p.vertices[apex_index]
    return _volume_centroid_coned(p, apex, skip_incident=True)


def contains_point(p: Polytope, x: Vector, *, strict: bool = False) -> bool:
    """Exact membership; ``strict`` tests the interior."""
    for a, b in zip(p.normals, p.rhs):
        d = a.dot(x)
        if d > b or (strict and d == b):
            return False
    return True


def _supporting_halfspaces(points: Sequence[Vector]) -> list[tuple[tuple[int, ...], int]]:
    """All supporting halfspaces of conv(points) whose boundary meets the
    hull in a facet, as primitive-integer pairs (g, c) meaning <g, x> <= c.

    Scans point subsets of size n; a subset spanning a hyperplane with every
    point on one side supports a facet.  Coplanar subsets of one facet all
    reproduce the same canonical halfspace, so merging is a set union.
    """
    n = points[0].dim
    npts = len(points)
    if comb(npts, n) > _SUBSET_CAP:
        raise CapExceeded(f"hull subset scan too large: C({npts},{n})")
    found: set[tuple[tuple[int, ...], int]] = set()
    for subset in itertools.combinations(range(npts), n):
        rows = [Vector(points[i].coords + (-ONE,)) for i in subset]
        basis = kernel_basis(rows, n + 1)
        if len(basis) != 1:
            continue
        g = Vector(basis[0].coords[:n])
        c = basis[0].coords[n]
        if g.is_zero():
            continue
        below = above = False
        for pnt in points:
            d = g.dot(pnt)
            if d < c:
                below = True
            elif d > c:
                above = True
            if below and above:
                break
        if below and above:
            continue
        if above:
            g, c = -g, -c
        found.add(_primitive_halfspace(g.coords, c))
    return sorted(found)


def v_to_h(v: VPolytope) -> HPolytope:
    """Facet enumeration.  Unit right-hand sides when the origin is interior,
    primitive-integer general form otherwise."""
    return convex_hull(v.vertices, dim_cap=v.dim).h_rep


def convex_hull(
    points: Sequence[Vector],
    *,
    dim_cap: int = DEFAULT_DIM_CAP,
    _validate: str = "full",
) -> Polytope:
    """Convex hull of a full-dimensional rational point set.

    Redundant (non-extreme) points are dropped; coplanar point sets merge
    into single facets.  Raises :class:`DegenerateInput` naming the affine
    rank when the points do not span, and :class:`CapExceeded` above the
    dimension cap.
    """
    pts = _sorted_vertex_tuple(points)
    if not pts:
        raise DegenerateInput("empty point set")
    n = pts[0].dim
    if any(p.dim != n for p in pts):
        raise ValueError("mixed point dimensions")
    if n > dim_cap:
        raise CapExceeded(f"dimension {n} exceeds cap {dim_cap}")
    hom = [list(p.coords) + [ONE] for p in pts]
    rank = rank_of_rows(hom)
    if rank != n + 1:
        raise DegenerateInput(f"affine rank {rank - 1} < ambient dimension {n}")
    halfspaces = _supporting_halfspaces(pts)
    tight_normals: list[list[Vector]] = [[] for _ in pts]
    for g, c in halfspaces:
        gv = vector(g)
        for j, p in enumerate(pts):
            if gv.dot(p) == c:
                tight_normals[j].append(gv)
    extreme = [
        j
        for j in range(len(pts))
        if rank_of_rows([a.coords for a in tight_normals[j]]) == n
    ]
    kept = [pts[j] for j in extreme]
    return _assemble(
        kept,
        [vector(g) for g, _ in halfspaces],
        [Fraction(c) for _, c in halfspaces],
        validate=_validate,
    )


def _fm_eliminate(rows: list[tuple[tuple[Fraction, ...], Fraction]], var: int):
    """One Fourier-Motzkin step on constraints <a, x> <= b, removing ``var``."""
    pos, neg, zero = [], [], []
    for a, b in rows:
        if a[var] > 0:
            pos.append((a, b))
        elif a[var] < 0:
            neg.append((a, b))
        else:
            zero.append((a, b))
    out = {
        _canon_fm_row(tuple(x for i, x in enumerate(a) if i != var), b)
        for a, b in zero
    }
    for ap, bp in pos:
        sp = ONE / ap[var]
        for an, bn in neg:
            sn = -ONE / an[var]
            coeffs = tuple(
                sp * x + sn * y
                for i, (x, y) in enumerate(zip(ap, an))
                if i != var
            )
            out.add(_canon_fm_row(coeffs, sp * bp + sn * bn))
            if len(out) > _FM_ROW_CAP:
                raise CapExceeded("Fourier-Motzkin row blowup")
    return [(a, b) for a, b in out]


def _canon_fm_row(coeffs: tuple[Fraction, ...], rhs: Fraction):
    g, c = _primitive_halfspace(coeffs, rhs)
    return (tuple(Fraction(x) for x in g), Fraction(c))


def _fm_feasible(normals: Sequence[Vector], rhs: Sequence[Fraction]) -> bool:
    """Exact feasibility of {x : <a_i, x> <= b_i} by eliminating all variables."""
    n = normals[0].dim if normals else 0
    rows = [(a.coords, b) for a, b in zip(normals, rhs, strict=True)]
    for _ in range(n):
        rows = _fm_eliminate(rows, 0)
    return all(b >= 0 for _, b in rows)


def _recession_nontrivial(normals: Sequence[Vector]) -> bool:
    """Does {y != 0 : <a_i, y> <= 0 for all i} contain a point?  Checked by
    pinning each coordinate to +-1 in turn and testing feasibility."""
    n = normals[0].dim
    for k in range(n):
        for s in (ONE, -ONE):
            reduced_normals = []
            reduced_rhs = []
            for a in normals:
                coeffs = tuple(x for i, x in enumerate(a.coords) if i != k)
                b = -s * a.coords[k]
                if all(x == 0 for x in coeffs):
                    if b < 0:
                        break
                    continue
                reduced_normals.append(Vector(coeffs))
                reduced_rhs.append(b)
            else:
                if not reduced_normals or _fm_feasible(reduced_normals, reduced_rhs):
                    return True
    return False


def h_to_v(h: HPolytope, *, dim_cap: int = DEFAULT_DIM_CAP) -> VPolytope:
    """Vertex enumeration for a bounded, nonempty H-polytope.

    Raises :class:`Unbounded` when the recession cone is nontrivial and
    :class:`DegenerateInput` when the system is infeasible.
    """
    n = h.dim
    if n > dim_cap:
        raise CapExceeded(f"dimension {n} exceeds cap {dim_cap}")
    m = len(h.normals)
    if not _fm_feasible(h.normals, h.rhs):
        raise DegenerateInput("infeasible constraint system")
    if m <= n or _recession_nontrivial(h.normals):
        raise Unbounded("recession cone is nontrivial")
    if comb(m, n) > _SUBSET_CAP:
        raise CapExceeded(f"vertex enumeration too large: C({m},{n})")
    verts: set[Vector] = set()
    for subset in itertools.combinations(range(m), n):
        x = solve_unique([h.normals[i] for i in subset], [h.rhs[i] for i in subset])
        if x is None:
            continue
        if all(a.dot(x) <= b for a, b in zip(h.normals, h.rhs)):
            verts.add(x)
    return VPolytope(n, tuple(sorted(verts)))


def normalize_unit_rhs(h: HPolytope, *, dim_cap: int = DEFAULT_DIM_CAP) -> HPolytope:
    """Irredundant unit-rhs form <a_i, x> <= 1 of a bounded H-polytope with
    the origin strictly inside.  Raises :class:`OriginNotInterior` otherwise
    (a zero right-hand side after reduction means the origin sits on the
    boundary)."""
    v = h_to_v(h, dim_cap=dim_cap)
    poly = convex_hull(v.vertices, dim_cap=dim_cap)
    if not poly.origin_interior:
        on_boundary = any(b == 0 for b in poly.rhs)
        raise OriginNotInterior(
            "origin lies on the boundary" if on_boundary else "origin is not inside"
        )
    return poly.h_rep


def from_reps(
    vertices: Sequence[Vector],
    normals: Sequence[Vector],
    rhs: Sequence[Fraction | int],
    *,
    validate: str = "full",
) -> Polytope:
    """Build a polytope from externally known representations, running the
    consistency certificate at the requested strictness."""
    return _assemble(
        vertices,
        tuple(normals),
        tuple(Fraction(b) for b in rhs),
        validate=validate,
    )


def translate(p: Polytope, t: Vector, *, validate: str = "light") -> Polytope:
    """Translate by ``t``; representations are re-canonicalized exactly."""
    verts = [v + t for v in p.vertices]
    rhs = [b + a.dot(t) for a, b in zip(p.normals, p.rhs)]
    return _assemble(verts, p.normals, rhs, validate=validate)


def translate_to_centroid(p: Polytope) -> Polytope:
    """The centered translate: centroid moves to the origin, exactly."""
    c = centroid(p)
    if c.is_zero():
        return p
    return translate(p, -c)


def is_centered(p: Polytope) -> bool:
    return centroid(p).is_zero()


def polar(p: Polytope) -> Polytope:
    """The polar body: vertices and facet normals swap roles exactly.

    Requires the origin strictly inside.  The facet list of ``p`` is sorted
    lexicographically, as vertex lists are, so indices align: vertex ``i`` of
    the polar is normal ``i`` of ``p`` and incidence transposes.
    """
    if not p.unit_rhs:
        raise OriginNotInterior("polar needs the origin strictly inside (unit rhs form)")
    ones = (ONE,) * len(p.vertices)
    dual = Polytope(
        VPolytope(p.dim, p.normals),
        HPolytope(p.dim, p.vertices, ones, irredundant=True),
        p.vertex_facets,
    )
    _validate_polytope(dual, "light")
    return dual


def face_closure(p: Polytope, vertex_indices: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """(vertex set, facet set) of the smallest face containing the vertices.

    The facet set is the facets containing every given vertex; the vertex
    set is all vertices tight on every one of those facets.  An empty facet
    set means the smallest containing face is the polytope itself.
    """
    s = frozenset(vertex_indices)
    if not s or not s <= set(range(len(p.vertices))):
        raise NotAFace(f"invalid vertex index set {sorted(s)}")
    common = frozenset(range(p.facet_count))
    for v in s:
        common &= p.vertex_facets[v]
    if not common:
        return frozenset(range(len(p.vertices))), frozenset()
    closure = frozenset(range(len(p.vertices)))
    for i in common:
        closure &= p.incidence[i]
    return closure, common


def polar_face(p: Polytope, vertex_indices: Iterable[int]) -> frozenset[int]:
    """The face of the polar dual to a proper face of ``p``.

    The input is a vertex-index set of ``p`` that must be exactly the vertex
    set of a proper face (dimension 0 through n-1); the result is the
    vertex-index set of the dual face of ``polar(p)``, which by index
    alignment is simply the set of facets of ``p`` containing the face.
    """
    if not p.unit_rhs:
        raise OriginNotInterior("polar faces need the origin strictly inside")
    s = frozenset(vertex_indices)
    closure, common = face_closure(p, s)
    if not common:
        raise NotAFace("the whole polytope is not a proper face")
    if closure != s:
        raise NotAFace(f"not a face: closure adds vertices {sorted(closure - s)}")
    return common


def face_dim(p: Polytope, vertex_indices: Iterable[int]) -> int:
    """Dimension of the affine hull of the given vertices."""
    rows = [list(p.vertices[i].coords) + [ONE] for i in vertex_indices]
    return rank_of_rows(rows) - 1


def section_profile_q(p: Polytope, u: Vector, t: Fraction | int) -> Fraction:
    """The rational section-profile surrogate q(t).

    The section is the slice of the polytope by the hyperplane through
    ``t u`` orthogonal to ``u``; q is its (n-1)-volume divided by |u|.  That
    quotient is rational: projecting the section along a coordinate axis k
    with u_k != 0 scales (n-1)-volume by |u_k| / |u|, so q equals the
    projected volume divided by |u_k|.
    """
    if u.dim != p.dim or u.is_zero():
        raise ValueError("direction must be a nonzero vector of the ambient dimension")
    t = Fraction(t)
    c = t * u.dot(u)
    svals = [u.dot(v) for v in p.vertices]
    candidates: set[Vector] = set()
    for v, s in zip(p.vertices, svals):
        if s == c:
            candidates.add(v)
    for (i, v), (j, w) in itertools.combinations(enumerate(p.vertices), 2):
        si, sj = svals[i], svals[j]
        if (si < c < sj) or (sj < c < si):
            lam = (c - si) / (sj - si)
            candidates.add(v + (w - v).scale(lam))
    if not candidates:
        return ZERO
    k = next(i for i, x in enumerate(u.coords) if x != 0)
    scale = abs(u.coords[k])
    if p.dim == 1:
        return ONE / scale
    projected = [
        Vector(tuple(x for i, x in enumerate(pt.coords) if i != k)) for pt in candidates
    ]
    hom = [list(q.coords) + [ONE] for q in set(projected)]
    if rank_of_rows(hom) != p.dim:
        return ZERO
    section = convex_hull(projected, _validate="light")
    return volume(section) / scale


def pyramid_apexes(p: Polytope) -> tuple[tuple[int, int], ...]:
    """All (apex vertex index, base facet index) pairs: vertices lying on
    every facet except exactly one."""
    out = []
    m = p.facet_count
    for v_idx, facets_of_v in enumerate(p.vertex_facets):
        if len(facets_of_v) == m - 1:
            missing = next(i for i in range(m) if i not in facets_of_v)
            out.append((v_idx, missing))
    return tuple(out)


def is_pyramid(p: Polytope) -> tuple[Vector, int] | None:
    """The lexicographically smallest apex with its base facet index, or None.

    Decision procedure is purely combinatorial (incidence counting); the
    exact section-profile identity serves as an independent cross-check in
    the test suite, not here.
    """
    apexes = pyramid_apexes(p)
    if not apexes:
        return None
    v_idx, base = apexes[0]
    return p.vertices[v_idx], base


def _independent_coordinate_subset(points: Sequence[Vector]) -> tuple[int, ...]:
    """Coordinates indexing the direction space of the points' affine hull:
    projection onto them is injective on that hull."""
    base = points[0]
    diffs = [[x - y for x, y in zip(pnt.coords, base.coords)] for pnt in points[1:]]
    _, _, pivots = _rref_core(diffs)
    return tuple(pivots)


def _check_vertex_irredundant(v: VPolytope) -> None:
    """Raise unless every listed point is extreme within its own affine hull."""
    pts = list(dict.fromkeys(v.vertices))
    if len(pts) != len(v.vertices):
        raise DegenerateInput("duplicate vertices")
    if len(pts) == 1:
        return
    coords = _independent_coordinate_subset(pts)
    if not coords:
        raise DegenerateInput("duplicate vertices")
    projected = [Vector(tuple(p.coords[c] for c in coords)) for p in pts]
    hull = convex_hull(projected, _validate="light")
    if len(hull.vertices) != len(pts):
        raise DegenerateInput("vertex list contains non-extreme points")


def join(q1: VPolytope, q2: VPolytope, *, dim_cap: int = DEFAULT_DIM_CAP) -> Polytope:
    """Join of two polytopes with complementary affine hulls.

    The joint hull is full-dimensional and every input vertex stays extreme;
    the converse direction (recognizing joins) lives in the concentration
    module."""
    if q1.dim != q2.dim:
        raise ValueError("ambient dimension mismatch")
    if not q1.vertices or not q2.vertices:
        raise DegenerateInput("empty factor")
    _check_vertex_irredundant(q1)
    _check_vertex_irredundant(q2)
    a1 = affine_hull(list(q1.vertices))
    a2 = affine_hull(list(q2.vertices))
    if not flats_complementary(a1, a2):
        raise NotComplementary(
            f"affine hulls of dimensions {a1.dim} and {a2.dim} are not complementary"
        )
    result = convex_hull(list(q1.vertices) + list(q2.vertices), dim_cap=dim_cap)
    if len(result.vertices) != len(q1.vertices) + len(q2.vertices):
        raise TheoremViolation("a join factor vertex stopped being extreme")
    return result
