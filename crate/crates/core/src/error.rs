use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("a design needs at least one point")]
    EmptyDesign,

    #[error("points {first} and {second} coincide (distance {distance:e})")]
    DuplicatePoint {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("point has zero or non-finite norm")]
    DegeneratePoint,

    #[error("unknown group label `{0}`")]
    UnknownGroup(String),

    #[error("generators for `{label}` did not close at the expected order {expected} (reached {reached})")]
    GroupClosure {
        label: String,
        expected: usize,
        reached: usize,
    },

    #[error("orbits of representatives {first} and {second} overlap")]
    OrbitCollision { first: usize, second: usize },

    #[error("parameter vector has length {0}, expected an even number")]
    OddParameterCount(usize),

    #[error("{n} points cannot be written as a union of orbits of `{group}`")]
    UnreachablePointCount { n: usize, group: String },

    #[error("starting configuration is not invariant under `{0}`")]
    StartNotInvariant(String),

    #[error("invalid search parameter: {0}")]
    InvalidSearch(String),

    #[error("polynomial has a repeated root")]
    RepeatedRoot,

    #[error("expected {expected} positive roots, found {found}")]
    RootCount { expected: usize, found: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("unknown design name `{0}`")]
    UnknownDesign(String),

    #[error("interval {t}-design needs at least {min} points, got {n}")]
    BelowMinimumSize { n: usize, t: usize, min: usize },

    #[error("interval designs are only tabulated for t <= 11, got {0}")]
    StrengthOutOfRange(usize),

    #[error("interval design solver failed (best residual {best_residual:e})")]
    IntervalNoConvergence { best_residual: f64 },

    #[error("product construction needs m > t (m = {m}, t = {t})")]
    PolygonTooSmall { m: usize, t: usize },

    #[error("could not separate the two designs after {0} random rotations")]
    UnionCollision(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
