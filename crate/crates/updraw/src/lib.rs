//! Upward three-dimensional grid drawings of directed acyclic graphs.
//!
//! Everything here works on exact integer arithmetic: drawings live on the
//! grid, the crossing verifier never rounds, and layout checkers certify
//! their inputs rather than trusting the producers.

pub mod colouring;
pub mod construct;
pub mod dag;
pub mod error;
pub mod geometry;
pub mod layout;
pub mod oracle;
pub mod report;
pub mod subdivide;

pub use colouring::{
    colouring_to_upward_tracks, greedy_colouring, harmonious_colouring,
    is_harmonious_colouring, is_proper_colouring, is_strong_star_colouring,
    longest_path_colouring, strong_star_colouring, Colouring, ColouringKind, StarVariant,
};
pub use construct::{
    caterpillar_span1_layout, coloured_upward_drawing, knprime_track_layout, long_path_drawing,
    moment_curve_drawing, pach_placement, track_drawing_3, track_drawing_4, track_drawing_5,
    track_drawing_general, tree_span2_layout, PrimeChoice,
};
pub use dag::{
    degeneracy, depth_labels, generate, topological_order, Dag, DepthLabels, Family, VertexOrder,
};
pub use error::{Error, Result};
pub use geometry::{
    bounding_box, segments_intersect_improperly, segments_intersect_improperly_alt,
    verify_drawing, BoundingBox, Drawing3D, GridPoint,
};
pub use layout::{
    drawing_to_track_layout, one_queue_to_span2_tracks, span, track_to_queue,
    verify_queue_layout, verify_track_layout, wrap, EdgeColouredTrackLayout, QueueLayout,
    TrackLayout,
};
pub use oracle::{
    exact_directed_bandwidth, exact_upward_queue_number, exact_upward_track_number,
    find_upward_track_layout, max_rainbow_size, span1_upward_layout_exists, OracleBudget,
};
pub use report::{PointOwner, VerifyReport, Violation};
pub use subdivide::{
    bandwidth_of, four_track_subdivision, rainbow_queue_layout, two_bend_drawing,
    two_queue_subdivision, upward_planar_subdivision, BandwidthCertificate, Drawing2D,
    Subdivision, VertexOrigin,
};
