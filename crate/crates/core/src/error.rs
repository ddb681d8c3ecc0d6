//! Crate-wide error type.

/// Errors surfaced by constructors, estimators, and evaluation routines.
///
/// The variants separate "you built an impossible object" ([`Config`]) from
/// "the inputs are outside the physical model" ([`Domain`]), "the caller broke
/// an API contract" ([`Contract`]), and failures of measurement/scoring
/// routines themselves.
///
/// [`Config`]: Error::Config
/// [`Domain`]: Error::Domain
/// [`Contract`]: Error::Contract
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Invalid construction parameters: grid sizes, band layout, estimator
    /// settings.
    #[error("config: {0}")]
    Config(String),

    /// Physically meaningless inputs: delays outside the unambiguous range,
    /// non-finite gains, and similar.
    #[error("domain: {0}")]
    Domain(String),

    /// Mismatched vector lengths or selections between cooperating objects.
    #[error("contract: {0}")]
    Contract(String),

    /// A requested quantity could not be measured on the given sampling
    /// (for example a null search on a grid too coarse to resolve it).
    #[error("diagnostic: {0}")]
    Diagnostic(String),

    /// Scoring/benchmark helper failures: mismatched component counts, empty
    /// sweep axes, zero trial counts.
    #[error("evaluation: {0}")]
    Evaluation(String),

    /// The requested quantity is unbounded or undefined for this
    /// configuration (for example a delay bound on a single-carrier
    /// selection).
    #[error("degenerate: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
