use thiserror::Error;

/// Errors produced by graph construction, group closure, and the
/// zeta / L-function machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("power series has no reciprocal: constant term is zero")]
    ZeroConstantTerm,

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error(
        "coefficient of u^{index} ({re} + {im}i) is {distance:.3e} away from an integer (tolerance {tol:.3e})"
    )]
    RoundingFailed {
        index: usize,
        re: f64,
        im: f64,
        distance: f64,
        tol: f64,
    },

    #[error("polynomial division left a remainder of size {residual:.3e}")]
    InexactDivision { residual: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path is not closed")]
    PathNotClosed,

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("group closure exceeds the maximum order {max_order}")]
    ClosureTooLarge { max_order: usize },

    #[error("action is not edge-free: {0}")]
    NotEdgeFree(String),

    #[error("invalid graph of groups: {0}")]
    InvalidGog(String),

    #[error("half-edge {0} is not a leg")]
    NotALeg(usize),

    #[error(
        "enumeration to length {length} over branching factor {branching} is too large; \
         pass allow_big to override"
    )]
    EnumerationGuard { length: usize, branching: usize },

    #[error("graph of groups carries only abstract charges; stabilizer data is required")]
    MissingStabilizers,

    #[error("invalid covering data: {0}")]
    InvalidCovering(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
