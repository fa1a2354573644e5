pub mod document;
pub mod error;
pub mod finiteflex;
pub mod fixtures;
pub mod framework;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod report;
pub mod rigidity;
pub mod sketch;
pub mod symmetry;

pub use error::{Error, ErrorCategory, Result};
pub use framework::{
    affine_span_check, apply_affine, apply_infinitesimal_rotation, extrude_framework, normalize,
    verify_extrusion_symmetry, Configuration, ExtrusionSpec, Framework, Placement, SymmetryReport,
};
pub use graph::{
    edge_fixed_flip, extrusion_action, extrusion_product, EdgeKind, FixedStatus, Letter, PhGraph,
    Vertex, VertexKind, VertexLabel,
};
pub use group::{irreducible_characters, ExtrusionGroup, GroupElement};
pub use rigidity::{
    hyperplane_pinning, infinitesimal_analysis, minimal_pinning, rigidity_matrix,
    trivial_motion_basis, InfinitesimalAnalysis, PinningSpec, RigidityMatrix,
};
pub use finiteflex::{
    finite_flex_test, linear_push, measurement_jacobian, regular_point_test, restricted_jacobian,
    AffineSubspace, FiniteFlexResult, FlexDetermination, LinearPushResult, MeasurementMap,
    PushDetermination,
};
pub use document::{read_framework, write_framework, FrameworkDocument};
pub use report::{analyze, push_report, AnalysisOptions, ReportDocument};
pub use sketch::render_svg;
