//! Crate-wide error type.

use crate::polytope::Polytope;
use crate::Point;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point {0} is outside the chart [0, {1})")]
    PointOutOfChart(Point, usize),

    #[error("orientation {ornt} is out of range for {shape:?}")]
    OrientationOutOfRange { shape: Polytope, ornt: i8 },

    #[error("grading violation: cone of point {parent} ({parent_shape:?}, dim {parent_dim}) lists point {child} ({child_shape:?}, dim {child_dim})")]
    GradingViolation {
        parent: Point,
        parent_shape: Polytope,
        parent_dim: usize,
        child: Point,
        child_shape: Polytope,
        child_dim: usize,
    },

    #[error("cone size mismatch at point {point}: {shape:?} expects {expected} cone points, got {got}")]
    ConeSizeMismatch {
        point: Point,
        shape: Polytope,
        expected: usize,
        got: usize,
    },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("filter selection contains point {0}, which is not a top-dimensional cell")]
    FilterNonCell(Point),

    #[error("no production rule for transform type {0}")]
    MissingProduction(String),

    #[error("point {parent} produces no {shape:?} children")]
    ShapeNotProduced { parent: Point, shape: Polytope },

    #[error("replica {replica} out of range for {shape:?} children of point {parent} ({count} produced)")]
    ReplicaOutOfRange {
        parent: Point,
        shape: Polytope,
        replica: usize,
        count: usize,
    },

    #[error("missing action table row for type {ty} at parent orientation {ornt}")]
    MissingActionRow { ty: String, ornt: i8 },

    #[error("cone path unresolvable at point {point}: {reason}")]
    UnresolvablePath { point: Point, reason: String },

    #[error("ambiguous child match while deriving actions for {shape:?} (orientation {ornt}, replica {replica})")]
    AmbiguousActionMatch {
        shape: Polytope,
        ornt: i8,
        replica: usize,
    },

    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("unsupported format version `{0}` (expected `{1}`)")]
    VersionMismatch(String, String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code: 1 validation, 2 I/O, 3 bad arguments.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse { .. } | Error::VersionMismatch(..) => 2,
            Error::InvalidOptions(_) | Error::Unsupported(_) | Error::UnknownLabel(_) => 3,
            _ => 1,
        }
    }
}
