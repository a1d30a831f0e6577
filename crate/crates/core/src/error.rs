use thiserror::Error;

/// Errors shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive (got {value})")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("energy must be positive (got {0})")]
    NonPositiveEnergy(f64),

    #[error("epsilon = {epsilon} is outside the admissible range (limit {limit})")]
    EpsilonOutOfRange { epsilon: f64, limit: f64 },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("series does not vanish at its expansion point: {0}")]
    InvalidExpansionPoint(String),

    #[error("series is only known through power {known}, power {requested} was requested")]
    OrderInsufficient { requested: i32, known: i32 },

    #[error("unknown or unsupported form: {0}")]
    UnknownForm(String),

    #[error("no classically allowed region at energy {0}")]
    NoClassicalRegion(f64),

    #[error("quadrature did not converge (last estimates {last} and {previous})")]
    QuadratureNotConverged { last: f64, previous: f64 },

    #[error("derivative is not finite at E = {0}")]
    DerivativeNotFinite(f64),

    #[error("recurrence is singular: {0}")]
    RecurrenceSingular(String),

    #[error("could not bracket a root of J(E) = {target}")]
    BracketNotFound { target: f64 },

    #[error("J(E) is not increasing on [{lo}, {hi}]")]
    NotMonotonic { lo: f64, hi: f64 },

    #[error("relative energy drift {drift:e} exceeds the limit after {retries} step halvings")]
    EnergyDriftExceeded { drift: f64, retries: u32 },

    #[error("no period detected within {0} time units")]
    NoPeriodFound(f64),

    #[error("eigenvalues did not settle with basis size {0}")]
    BasisNotConverged(usize),

    #[error("Jacobi eigensolver stalled after {0} sweeps")]
    EigensolverStalled(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
