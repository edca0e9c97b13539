//! Special functions: Γ, erf/erfc and the Mittag-Leffler family.

mod gamma;
mod mittag_leffler;

pub use gamma::{gamma_fn, ln_gamma, recip_gamma};
pub use mittag_leffler::{
    ml_e, ml_e_alpha_alpha, ml_e_prime, ml_log_e, MittagLeffler, MlEval, MlKind, MlMethod,
    MlParams, DEFAULT_ASYMPTOTIC_TERMS, DEFAULT_SERIES_RADIUS,
};

/// Error function.
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function, accurate in the far tail.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_erfc_reference_values() {
        assert!((erf(1.0) - 0.842_700_792_949_714_9).abs() < 1e-15);
        assert!((erfc(3.0) - 2.209_049_699_858_544e-5).abs() < 1e-19);
        assert_eq!(erf(0.0), 0.0);
    }
}
