"""Exact matching distances, geodesics, and verification for persistence diagrams."""

from .diagram import (
    DEFAULT_TOL,
    Diagram,
    MetricParams,
    Point,
    diagonal_distance,
    diagonal_projection,
    diagram_to_dict,
    ground_norm,
    parse_diagram,
    parse_extended,
    serialize_diagram,
)
from .errors import (
    InvalidCouplingError,
    ParameterDomainError,
    ParseError,
    PdgError,
    SizeGuardError,
    StructuralError,
    UnsupportedRegimeError,
    ValidationError,
    WrongSolverError,
)
from .gallery import GALLERY_NAMES, gallery_frame
from .geodesics import (
    AuditReport,
    CurveClassification,
    DEFAULT_GRID,
    GeodesicCertificate,
    SampledCurve,
    certify_geodesic,
    characterization_audit,
    classify_curve,
    convex_combination,
    detect_branching,
    identity_psi,
    parse_curve,
    regime,
    sample_convex_combination,
    sample_gallery,
    uniform_grid,
)
from .matching import (
    AugmentedProblem,
    Matching,
    brute_force_distance,
    build_augmented_problem,
    distance,
    enumerate_optimal_matchings,
    matching_cost,
    matching_from_assignment,
    solve_assignment_bottleneck,
    solve_assignment_sum,
)
from .ot import (
    Coupling,
    OtReport,
    coupling_from_matching,
    random_doubly_stochastic,
    transport_cost,
    verify_ot_equivalence,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedProblem",
    "AuditReport",
    "Coupling",
    "CurveClassification",
    "DEFAULT_GRID",
    "DEFAULT_TOL",
    "Diagram",
    "GALLERY_NAMES",
    "GeodesicCertificate",
    "InvalidCouplingError",
    "Matching",
    "MetricParams",
    "OtReport",
    "ParameterDomainError",
    "ParseError",
    "PdgError",
    "Point",
    "SampledCurve",
    "SizeGuardError",
    "StructuralError",
    "UnsupportedRegimeError",
    "ValidationError",
    "WrongSolverError",
    "brute_force_distance",
    "build_augmented_problem",
    "certify_geodesic",
    "characterization_audit",
    "classify_curve",
    "convex_combination",
    "coupling_from_matching",
    "detect_branching",
    "diagonal_distance",
    "diagonal_projection",
    "diagram_to_dict",
    "distance",
    "enumerate_optimal_matchings",
    "gallery_frame",
    "ground_norm",
    "identity_psi",
    "matching_cost",
    "matching_from_assignment",
    "parse_curve",
    "parse_diagram",
    "parse_extended",
    "random_doubly_stochastic",
    "regime",
    "sample_convex_combination",
    "sample_gallery",
    "serialize_diagram",
    "solve_assignment_bottleneck",
    "solve_assignment_sum",
    "transport_cost",
    "uniform_grid",
    "verify_ot_equivalence",
]
