use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a special function or formula.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    /// Invalid model parameters (Mie exponents, potential mixtures, ...).
    #[error("invalid parameters: {0}")]
    Parameter(String),

    /// The potential specification text could not be parsed.
    #[error("cannot parse potential `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// No sign change on the requested bracket.
    #[error("root not bracketed on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// The requested configuration violates the hard-core constraint.
    #[error("infeasible configuration: {0}")]
    Infeasible(String),

    /// A junction point was requested outside the regime where it exists.
    #[error("no junction point: {0}")]
    NoJunction(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
