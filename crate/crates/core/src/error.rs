use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {reason}{}", fmt_witness(.witness))]
    NotAGroup {
        reason: String,
        witness: Option<(usize, usize, usize)>,
    },

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("not an exact factorization: {0}")]
    NotExactFactorization(String),

    #[error("matched pair tables have inconsistent shape: {0}")]
    Shape(String),

    #[error("{point} is not in the orbit of {base}")]
    OrbitMismatch { base: usize, point: usize },

    #[error("irreducible splitting failed after retries (seed {seed})")]
    SplitFailed { seed: u64 },

    #[error("value {value} is not within {tol} of an integer")]
    NonIntegral { value: f64, tol: f64 },

    #[error("map is not a homomorphism: phi({a}*{b}) != phi({a})*phi({b})")]
    NotHomomorphism { a: usize, b: usize },

    #[error("not a unitary representation: residual {residual:e}")]
    NotUnitaryRep { residual: f64 },

    #[error("map is not a bijection")]
    NotBijective,

    #[error("representation belongs to a group of order {found}, expected the stabilizer of order {expected}")]
    StabilizerMismatch { expected: usize, found: usize },

    #[error("two evaluations of the same quantity disagree: {0}")]
    FormulaMismatch(String),

    #[error("completeness check failed: sum of squared dimensions {found} != {expected}")]
    CompletenessFailed { expected: usize, found: usize },

    #[error("multiplicity of irrep {irrep} is {found} but the character pairing gives {expected}")]
    MultiplicityMismatch {
        irrep: usize,
        expected: usize,
        found: usize,
    },

    #[error("{r} is not in the product of the orbits")]
    PointNotInProductOfOrbits { r: usize },

    #[error("the length window [{k}, {k}+1) contains no classes")]
    EmptyWindow { k: usize },

    #[error("dual element blocks do not match class dimensions: {0}")]
    BlockShape(String),

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("parse error{}: {message}", .location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default())]
    Parse {
        message: String,
        location: Option<String>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn fmt_witness(w: &Option<(usize, usize, usize)>) -> String {
    match w {
        Some((a, b, c)) => format!(" (witness {a}, {b}, {c})"),
        None => String::new(),
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            message: e.to_string(),
            location: Some(format!("line {}, column {}", e.line(), e.column())),
        }
    }
}

impl Error {
    /// True when the fault lies in the supplied input (malformed or
    /// inconsistent descriptors, out-of-range requests) rather than in a
    /// computed identity failing to hold.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotAGroup { .. }
                | Error::IndexOutOfRange { .. }
                | Error::NotExactFactorization(_)
                | Error::Shape(_)
                | Error::EmptyWindow { .. }
                | Error::BlockShape(_)
                | Error::OrderCap { .. }
                | Error::Parse { .. }
                | Error::Io(_)
        )
    }
}
