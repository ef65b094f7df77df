use thiserror::Error;

use crate::embedding::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("intersection form is degenerate")]
    DegenerateForm,

    #[error("quadratic forms require an alternating intersection form (orientable surface)")]
    NotAlternating,

    #[error("basis value {value} at position {index} has the wrong parity for an enhancement")]
    EnhancementParity { index: usize, value: u8 },

    #[error("Gauss sum {re}{im:+}i does not have modulus 2^({b1}/2)")]
    GaussSum { re: i128, im: i128, b1: usize },

    #[error("invalid embedded graph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("vertex {0} has degree 0; delete isolated vertices before building the terminal graph")]
    IsolatedVertex(usize),

    #[error("edge {0} does not exist")]
    UnknownEdge(usize),

    #[error("edge {0} is not an outside edge crossing exactly one side")]
    NotOutsideEdge(usize),

    #[error("graph must be normalized (edge {0} crosses more than one side)")]
    NotNormalized(usize),

    #[error("terminal graph has an odd number of vertices ({0})")]
    OddOrder(usize),

    #[error("untwisted adjacency requested on a surface with non-zero omega")]
    TwistRequired,

    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),

    #[error("exact Pfaffian dimension {dim} exceeds the bound {bound}; use numeric mode")]
    BoundExceeded { dim: usize, bound: usize },

    #[error("cycle space dimension {dim} exceeds the brute-force bound {bound}")]
    OracleBound { dim: usize, bound: usize },

    #[error("numeric overflow in {0}")]
    Overflow(&'static str),

    #[error("edge set is not a perfect matching of the terminal graph")]
    NotPerfectMatching,

    #[error("orientation does not match the terminal graph: {0}")]
    BadOrientation(String),

    #[error("residual phase {residual:e} exceeds tolerance for value {value:e}")]
    PhaseResidual { residual: f64, value: f64 },

    #[error("exact phase sum is not a real multiple of the Gauss sum: {0}")]
    ExactPhase(String),

    #[error("no numeric value for weight symbol '{0}'")]
    MissingValue(String),

    #[error("weight must be positive, got {0}")]
    NonPositive(String),

    #[error("cannot parse weight '{0}'")]
    BadWeight(String),

    #[error("invalid generator parameters: {0}")]
    BadSpec(String),

    #[error("dual face graph is disconnected through long edges")]
    DualDisconnected,

    #[error("face walk did not close: {0}")]
    FaceWalk(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
