use crate::error::{Error, Result};
use crate::math::{sin, PI};

fn is_pole(s: f64) -> bool {
    s <= 0.0 && s == libm::floor(s)
}

/// Γ(s) for real `s` away from the poles.
///
/// Backed by the `libm` port of musl's `tgamma` (a Lanczos-type rational
/// approximation with reflection for negative arguments).
pub fn gamma_fn(s: f64) -> Result<f64> {
    if s.is_nan() || is_pole(s) {
        return Err(Error::Pole(s));
    }
    Ok(libm::tgamma(s))
}

/// `1/Γ(x)`, which is entire: zero at the poles of Γ.
pub fn recip_gamma(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    if x > 171.0 {
        return 0.0;
    }
    if x < 0.0 {
        // reflection keeps the tiny values near the poles accurate
        let s = sin(PI * (x - 2.0 * libm::floor(0.5 * x)));
        let g = libm::tgamma(1.0 - x);
        if g.is_infinite() {
            return 0.0;
        }
        return s * g / PI;
    }
    1.0 / libm::tgamma(x)
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma_r(x).0
}
