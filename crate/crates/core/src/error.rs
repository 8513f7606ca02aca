use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(Complex64),

    #[error("zero base in a principal-branch power")]
    ZeroBase,

    #[error("parameter {name} = {value} is a nonpositive integer")]
    ParameterPole { name: &'static str, value: Complex64 },

    #[error("integer second parameter mu = {0} is not supported by the two-term Psi formula")]
    IntegerMu(Complex64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} did not converge within {limit} terms")]
    SeriesNonConvergence { what: &'static str, limit: usize },

    #[error("quadrature did not converge: estimate {estimate:.3e} after {evaluations} evaluations")]
    QuadratureNonConvergence { estimate: f64, evaluations: usize },

    #[error("integrand is not finite at x = {0}")]
    NonFiniteIntegrand(f64),

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("point outside the domain of {id}: {reason}")]
    OutOfDomain { id: String, reason: String },
}
