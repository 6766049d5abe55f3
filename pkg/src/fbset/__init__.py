"""Feedback set problems on bounded-degree (planar) graphs: reductions,
embeddings, exact solvers, and machine verification."""

from .graphs import (
    DegreeProfile,
    DiGraph,
    StructuralPredicates,
    UGraph,
    degree_profile,
    is_connected,
    structural_predicates,
    subdivide_all,
    trim_non_cyclic,
)
from .planarity import (
    Embedding,
    NonPlanarVerdict,
    PatternClass,
    SignPattern,
    classify_pattern,
    digraph_embedding,
    face_count,
    faces,
    is_bipolar_embedding,
    is_planar,
    sign_pattern,
    test_planarity,
    validate_embedding,
)
from .linear_forest import LinearForestCover, linear_forest_cover, validate_cover
from .reductions import (
    NeighborOrdering,
    ReductionArtifact,
    VerificationReport,
    double_edges,
    path_split_gadget,
    split_vertices,
    verify_reduction,
)
from .gadgets import (
    cfvs_gadget,
    irregular_doubling,
    planar_dfvs_gadget,
    speckenmeyer_reduce,
    widget_count,
)
from .solvers import (
    BipolarPipelineResult,
    CubicIdentityReport,
    Cycle,
    Instance,
    SizeEnvelope,
    SizeEnvelopeError,
    SolveResult,
    ValidationResult,
    check_cubic_identity,
    shortest_cycle,
    solve,
    solve_bipolar_pipeline,
    solve_deg2,
    solve_exact,
    validate,
)
from .classify import ClassificationVerdict, classify
from .fileio import ParseError, parse, parse_manifest, serialize, serialize_manifest
from .dot import export_dot

__version__ = "0.1.0"
