use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument left the physical domain of a formula (e.g. zeta <= 0
    /// where only the caller may take the static limit).
    #[error("domain error: {0}")]
    Domain(String),

    /// A mode sum hit its term cap before the tail bound dropped below
    /// tolerance. Carries the partial sum so callers can decide whether
    /// the accuracy is still acceptable.
    #[error("mode sum not converged after {terms} terms (partial sum {partial:.6e}, tail bound {tail_bound:.3e})")]
    Truncation {
        terms: usize,
        partial: f64,
        tail_bound: f64,
    },

    /// Numerically impossible state for passive media; signals a bug, not
    /// bad input.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Scenario file rejected during validation.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
