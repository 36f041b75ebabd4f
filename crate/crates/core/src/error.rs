use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    Shape { rows: usize, cols: usize, len: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("expected a linear form")]
    NotLinear,
    #[error("the linear form annihilates the dual generator")]
    ZeroDerivative,

    #[error("forms p_i are linearly dependent (rank {rank} < {count})")]
    LinearlyDependent { rank: usize, count: usize },
    #[error("forms p_i are algebraically independent (Jacobian of full rank {0})")]
    AlgebraicallyIndependent(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("need at least 3 forms p_0..p_n and 2 back variables, got {forms} forms over {back} variables")]
    TooFewForms { forms: usize, back: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a Perazzo form: {0}")]
    NotPerazzo(String),
    #[error("degree {degree} too small, need at least {min}")]
    DegreeTooSmall { degree: usize, min: usize },
    #[error("random sampler gave up after {0} attempts")]
    SamplerExhausted(usize),

    #[error("monomial ideal is not artinian: no pure power of variable {0}")]
    NotArtinian(usize),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
