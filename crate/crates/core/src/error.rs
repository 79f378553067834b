use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("width violation at event {event}: {detail}")]
    Width { event: usize, detail: String },

    #[error("not a string link: {0}")]
    Permutation(String),

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("empty strand selection")]
    EmptySelection,

    #[error("expected {expected} strands, got {found}")]
    StrandCount { expected: usize, found: usize },

    #[error("expected {expected} components, got {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("bad index: {0}")]
    Index(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("degree cap mismatch: {0} vs {1}")]
    CapMismatch(usize, usize),

    #[error("series has non-unit constant term")]
    NonUnit,

    #[error("Wirtinger iteration did not converge after {0} sweeps")]
    NonConvergence(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid PD code: {0}")]
    Pd(String),
}
