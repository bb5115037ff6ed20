//! Violation records shared by the drawing, track-layout, and queue-layout
//! verifiers. A verifier never stops at the first problem; it reports every
//! witness it finds so tests can assert on exact failure sets.

use std::fmt;

/// Who owns a point of a drawing: a vertex or the k-th bend of an arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointOwner {
    Vertex(usize),
    Bend { arc: (usize, usize), index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two arc polylines share a point that is not a permitted endpoint
    /// touch. Same-arc self-intersections use `arc_a == arc_b`.
    Crossing {
        arc_a: (usize, usize),
        arc_b: (usize, usize),
    },
    CoincidentPoints {
        a: PointOwner,
        b: PointOwner,
    },
    VertexOnEdge {
        vertex: usize,
        arc: (usize, usize),
    },
    /// z does not strictly increase along the arc's polyline.
    NonUpward {
        arc: (usize, usize),
    },
    IntraTrackArc {
        arc: (usize, usize),
    },
    XCrossing {
        arc_a: (usize, usize),
        arc_b: (usize, usize),
    },
    /// Witness cycle in G+, the graph plus track successor arcs.
    GPlusCycle {
        vertices: Vec<usize>,
    },
    NestedArcs {
        arc_a: (usize, usize),
        arc_b: (usize, usize),
        queue: usize,
    },
    NonTopologicalArc {
        arc: (usize, usize),
    },
    /// Ranks within the track are not 0..size-1.
    BadTrackRanks {
        track: i64,
    },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::Crossing { .. } => "crossing",
            Violation::CoincidentPoints { .. } => "coincident_points",
            Violation::VertexOnEdge { .. } => "vertex_on_edge",
            Violation::NonUpward { .. } => "non_upward",
            Violation::IntraTrackArc { .. } => "intra_track_arc",
            Violation::XCrossing { .. } => "x_crossing",
            Violation::GPlusCycle { .. } => "gplus_cycle",
            Violation::NestedArcs { .. } => "nested_arcs",
            Violation::NonTopologicalArc { .. } => "non_topological_arc",
            Violation::BadTrackRanks { .. } => "bad_track_ranks",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Crossing { arc_a, arc_b } if arc_a == arc_b => {
                write!(f, "arc ({}, {}) intersects itself", arc_a.0, arc_a.1)
            }
            Violation::Crossing { arc_a, arc_b } => write!(
                f,
                "arcs ({}, {}) and ({}, {}) cross",
                arc_a.0, arc_a.1, arc_b.0, arc_b.1
            ),
            Violation::CoincidentPoints { a, b } => {
                write!(f, "coincident points: {a:?} and {b:?}")
            }
            Violation::VertexOnEdge { vertex, arc } => write!(
                f,
                "vertex {} lies on arc ({}, {})",
                vertex, arc.0, arc.1
            ),
            Violation::NonUpward { arc } => {
                write!(f, "arc ({}, {}) is not upward", arc.0, arc.1)
            }
            Violation::IntraTrackArc { arc } => {
                write!(f, "arc ({}, {}) joins two vertices of one track", arc.0, arc.1)
            }
            Violation::XCrossing { arc_a, arc_b } => write!(
                f,
                "arcs ({}, {}) and ({}, {}) form an X-crossing",
                arc_a.0, arc_a.1, arc_b.0, arc_b.1
            ),
            Violation::GPlusCycle { vertices } => {
                write!(f, "G+ contains a cycle through {vertices:?}")
            }
            Violation::NestedArcs { arc_a, arc_b, queue } => write!(
                f,
                "arcs ({}, {}) and ({}, {}) nest in queue {}",
                arc_a.0, arc_a.1, arc_b.0, arc_b.1, queue
            ),
            Violation::NonTopologicalArc { arc } => write!(
                f,
                "arc ({}, {}) runs backwards in the vertex order",
                arc.0, arc.1
            ),
            Violation::BadTrackRanks { track } => {
                write!(f, "track {track} has gapped or duplicated ranks")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        writeln!(f, "{} violation(s):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
