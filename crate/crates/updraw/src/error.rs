use thiserror::Error;

/// Everything that can go wrong constructing or checking a layout object.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arc set contains a directed cycle")]
    CycleDetected,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("segment has equal endpoints")]
    DegenerateSegment,
    #[error("drawing assigns {got} points to {expected} vertices")]
    MissingVertexPoint { expected: usize, got: usize },
    #[error("drawing has no points")]
    EmptyDrawing,
    #[error("missing assignment: {0}")]
    MissingAssignment(String),
    #[error("arc ({0}, {1}) has span {span}, expected 1..={limit}", .arc.0, .arc.1)]
    SpanViolation {
        arc: (usize, usize),
        span: i64,
        limit: i64,
    },
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("queue layout uses more than one queue")]
    NotOneQueue,
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("vertex order is not topological")]
    NotTopological,
    #[error("underlying graph is not a tree")]
    NotATree,
    #[error("underlying graph is not a caterpillar")]
    NotACaterpillar,
    #[error("not an upward planar drawing: {0}")]
    NotUpwardPlanar(String),
    #[error("colouring is not a strong star colouring")]
    NotStrongStar,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
