use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("zero socle: the form has no nonzero coefficient")]
    ZeroSocle,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("expected a linear form, got degree {0}")]
    NotLinear(u32),
    #[error("degree {e} out of range 0..={d}")]
    DegreeOutOfRange { e: u32, d: u32 },
    #[error("power sum cancels to the zero form")]
    DegenerateInput,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("outside supported envelope: {0}")]
    Unsupported(String),
    #[error("pole at t = {0}")]
    Pole(String),
    #[error("chern character requested on P^{0}; only the plane is supported")]
    NotPlane(usize),
    #[error("first chern class {0} is not integral")]
    NonIntegral(String),
    #[error("exceptional slopes up to rank {bound} do not resolve the boundary at slope {slope}")]
    BoundaryUnresolved { slope: String, bound: u64 },
    #[error("charge point is zero")]
    ZeroCharge,
    #[error("malformed betti table: {0}")]
    MalformedTable(String),
    #[error("outside the uniqueness regime: {0}")]
    Regime(String),
    #[error("catalog entry `{0}` has no ideal-theoretic witness")]
    NoWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
