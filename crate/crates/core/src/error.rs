use thiserror::Error;

/// Errors surfaced by the numerical layer.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The integrand returned NaN at a concrete abscissa.
    #[error("integrand returned NaN at x = {abscissa}")]
    NanAbscissa { abscissa: f64 },

    /// The true value of the requested quantity overflows f64.
    #[error("range overflow: {0}")]
    Overflow(String),

    /// A symmetric pole pair failed the simple-pole diagnostic.
    #[error("principal value: symmetric sum diverges under refinement (pole at {pole} is not simple)")]
    NotSimplePole { pole: f64 },

    /// The Fresnel-subtracted integrand did not decay at the truncation radius.
    #[error(
        "fresnel subtraction: |f(x) - trig({alpha}*x^2)| = {residual:.3e} at x = {radius}, \
         envelope does not match"
    )]
    EnvelopeMismatch {
        alpha: f64,
        radius: f64,
        residual: f64,
    },

    /// Invalid quadrature configuration.
    #[error("invalid config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
