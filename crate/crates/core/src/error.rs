use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} is outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("cannot evaluate function at x = {x}: {reason}")]
    Eval { x: f64, reason: String },

    #[error("illegal character {ch:?} at offset {offset}")]
    Lex { offset: usize, ch: char },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid {what}: {message}")]
    InvalidSpec { what: &'static str, message: String },

    #[error("coefficient {coefficient} diverges at p = {p}")]
    DivergentCoefficient { coefficient: String, p: f64 },

    #[error(
        "quadrature for {what} did not converge (value {value}, error estimate {error_estimate})"
    )]
    NotConverged {
        what: String,
        value: f64,
        error_estimate: f64,
    },

    #[error("f and g are not similarly ordered: (f(a)-f(b))(g(a)-g(b)) = {product}")]
    Ordering { product: f64 },

    #[error("closed forms for {what} disagree: {left} vs {right}")]
    ConstantMismatch { what: String, left: f64, right: f64 },
}
