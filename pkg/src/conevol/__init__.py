"""Exact rational cone-volume measures and subspace concentration audits.

The public surface re-exports the main types and operations; the
submodules stay importable directly for the long tail (validation
levels, section profiles, JSON helpers).
"""

__version__ = "0.1.0"

from .errors import (
    CapExceeded,
    DegenerateInput,
    GeometryError,
    NotAFace,
    NotCentered,
    NotComplementary,
    OriginNotInterior,
    TheoremViolation,
    TooManyFacets,
    Unbounded,
)
from .kernel import (
    AffineFlat,
    LinearSubspace,
    Vector,
    affine_hull,
    linear_span,
    vector,
)
from .polytope import (
    HPolytope,
    Polytope,
    VPolytope,
    centroid,
    contains_point,
    convex_hull,
    from_reps,
    h_to_v,
    is_centered,
    is_pyramid,
    join,
    polar,
    section_profile_q,
    translate,
    translate_to_centroid,
    v_to_h,
    volume,
)
from .cone_measure import (
    ConeVolumeMeasure,
    cone_volume,
    cone_volume_measure,
    facet_cone_functional,
    pyramid_formula_check,
)
from .concentration import (
    ComplementWitness,
    ConcentrationReport,
    EqualityCase,
    affine_scc,
    detect_join_structure,
    enumerate_normal_flats,
    equality_case_classification,
    full_audit,
    grunbaum_point_check,
    join_detection_roundtrip,
    linear_scc,
)
from .lifting import (
    LiftTower,
    TowerLevel,
    build_tower,
    lift_step,
    lifted_normal,
    pyramid_lift,
    tower_bound,
)
from .generators import (
    GeneratorSpec,
    centered_simplex,
    cross_polytope,
    cube,
    generate,
    join_centered,
    pyramid_over,
    random_centered,
)

__all__ = [
    "__version__",
    "AffineFlat",
    "CapExceeded",
    "ComplementWitness",
    "ConcentrationReport",
    "ConeVolumeMeasure",
    "DegenerateInput",
    "EqualityCase",
    "GeneratorSpec",
    "GeometryError",
    "HPolytope",
    "LiftTower",
    "LinearSubspace",
    "NotAFace",
    "NotCentered",
    "NotComplementary",
    "OriginNotInterior",
    "Polytope",
    "TheoremViolation",
    "TooManyFacets",
    "TowerLevel",
    "Unbounded",
    "VPolytope",
    "Vector",
    "affine_hull",
    "affine_scc",
    "build_tower",
    "centered_simplex",
    "centroid",
    "cone_volume",
    "cone_volume_measure",
    "contains_point",
    "convex_hull",
    "cross_polytope",
    "cube",
    "detect_join_structure",
    "enumerate_normal_flats",
    "equality_case_classification",
    "facet_cone_functional",
    "from_reps",
    "full_audit",
    "generate",
    "grunbaum_point_check",
    "h_to_v",
    "is_centered",
    "is_pyramid",
    "join",
    "join_centered",
    "join_detection_roundtrip",
    "lift_step",
    "lifted_normal",
    "linear_scc",
    "linear_span",
    "pyramid_formula_check",
    "pyramid_lift",
    "pyramid_over",
    "polar",
    "random_centered",
    "section_profile_q",
    "tower_bound",
    "translate",
    "translate_to_centroid",
    "v_to_h",
    "vector",
    "volume",
]
