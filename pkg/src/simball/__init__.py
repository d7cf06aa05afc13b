"""Geometry of simplices in the unit ball: minimal enclosing ellipsoids,
suitable faces, exact surd predicates, and randomized extension searches."""

from .ellipsoid import Ellipsoid, ball_volume, membership_margin, minimal_ellipsoid, mvee
from .errors import (
    ArgumentError,
    CampaignIOError,
    ConvergenceError,
    DegenerateSimplexError,
    InternalInvariantError,
    MalformedInputError,
    ModeError,
    NoSuitableFaceError,
    RankError,
    SamplingError,
    SimballError,
)
from .geometry import (
    FaceGeometry,
    FaceIndex,
    FaceRatios,
    Simplex,
    centroid,
    face_geometry,
    face_ratios,
    is_suitable,
    rationalize_to_ball,
    regular_simplex,
    simplex_digest,
    simplex_from_json_dict,
    simplex_to_json_dict,
    simplex_volume_det,
    y_norm_sq_from_gram,
    y_norm_sq_surd,
)
from .projector import ProjectorNorm, projector_norm, psi, theta_table
from .sampling import (
    CampaignConfig,
    ProbeRecord,
    conjecture_probe,
    random_simplex,
    random_simplex_for_trial,
    run_campaign,
    trial_rng,
)
from .suitability import (
    CheckOutcome,
    CoeffPair,
    CoefficientIdentity,
    CriticalFinding,
    SuitabilityReport,
    coefficient_identity,
    extend_face,
    extend_suitable_face,
    face_existence_check,
    faces_report,
    find_suitable_vertex,
    suitable_faces,
    sum_bound_check,
    sum_inequality_coeffs,
    vertex_condition,
    vertex_extension_check,
)
from .surd import QuadSurd, surd_cmp

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "ball_volume",
    "CampaignConfig",
    "CampaignIOError",
    "centroid",
    "CheckOutcome",
    "CoeffPair",
    "coefficient_identity",
    "CoefficientIdentity",
    "conjecture_probe",
    "ConvergenceError",
    "CriticalFinding",
    "DegenerateSimplexError",
    "Ellipsoid",
    "extend_face",
    "extend_suitable_face",
    "face_existence_check",
    "face_geometry",
    "FaceGeometry",
    "FaceIndex",
    "face_ratios",
    "FaceRatios",
    "faces_report",
    "find_suitable_vertex",
    "InternalInvariantError",
    "is_suitable",
    "MalformedInputError",
    "membership_margin",
    "minimal_ellipsoid",
    "ModeError",
    "mvee",
    "NoSuitableFaceError",
    "ProbeRecord",
    "projector_norm",
    "ProjectorNorm",
    "psi",
    "QuadSurd",
    "random_simplex",
    "random_simplex_for_trial",
    "RankError",
    "rationalize_to_ball",
    "regular_simplex",
    "run_campaign",
    "SamplingError",
    "SimballError",
    "Simplex",
    "simplex_digest",
    "simplex_from_json_dict",
    "simplex_to_json_dict",
    "simplex_volume_det",
    "suitable_faces",
    "SuitabilityReport",
    "sum_bound_check",
    "sum_inequality_coeffs",
    "surd_cmp",
    "theta_table",
    "trial_rng",
    "vertex_condition",
    "vertex_extension_check",
    "y_norm_sq_from_gram",
    "y_norm_sq_surd",
]
