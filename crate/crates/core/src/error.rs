use alloc::string::String;

/// Errors produced by the evaluators and checks in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Γ evaluated at a non-positive integer.
    #[error("gamma function pole at {0}")]
    Pole(f64),
    /// The `a = d = 1` normalisation needs a positive reaction rate.
    #[error("reaction rate a = 0 cannot be rescaled to a = 1")]
    NotRescalable,
    /// The alternating series did not reach its tolerance within `k_max`
    /// terms. `lower..=upper` brackets `u` (Leibniz criterion).
    #[error("series not converged after {k_max} terms, u in [{lower:e}, {upper:e}]")]
    Truncation {
        k_max: usize,
        lower: f64,
        upper: f64,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => {
        $crate::Error::Domain(alloc::format!($($arg)*))
    };
}
pub(crate) use domain;
