//! The 1-D fundamental solution of `∂ᵅ_t u = d·u_xx + a·u`, `u(·, 0) = δ`.
//!
//! In Fourier variables the solution is
//! `u(x, t) = 2 ∫₀^∞ E_α((a − 4π²dξ²)t^α) cos(2πxξ) dξ`, and after the
//! normalisation `a = d = 1` and `ξ ↦ ξ/2π`,
//! `u(x, t) = (1/π) ∫₀^∞ E_α((1 − ξ²)t^α) cos(xξ) dξ = (1/π) Σ (−1)^k a_k`
//! with `a_k` the integral over the `k`-th half-period of `cos(xξ)`.
//!
//! [`u_series`] sums that alternating series with a Leibniz bracket,
//! [`u_quadrature`] integrates the Fourier form directly, and [`u_gaussian`]
//! is the `α = 1` closed form. Large values are carried in log form: every
//! integrand is evaluated relative to a fixed exponent `log_scale`.

mod panels;
mod quadrature;
pub(crate) mod series;

pub use quadrature::u_quadrature;
pub use series::{a_term, term_sequence, u_series, u_series_with, SeriesConfig, TermSequence};

use crate::error::{domain, Error, Result};
use crate::math::{exp, fabs, log, pow, sqrt, EPS, PI};
use crate::special::{recip_gamma, MittagLeffler};

/// Default tolerance on `u`.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Below this `x` the series path hands over to direct quadrature.
pub const DEFAULT_X_MIN: f64 = 0.5;
/// Default cap on the number of series terms.
pub const DEFAULT_K_MAX: usize = 2_000_000;

/// Problem parameters `(α, d, a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracParams {
    pub alpha: f64,
    pub d: f64,
    pub a: f64,
}

impl FracParams {
    pub fn new(alpha: f64, d: f64, a: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&alpha) {
            return Err(domain!("alpha = {alpha} must lie in [1/2, 1]"));
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(domain!("diffusivity d = {d} must be finite and positive"));
        }
        if !(a >= 0.0 && a.is_finite()) {
            return Err(domain!(
                "reaction rate a = {a} must be finite and non-negative"
            ));
        }
        Ok(Self { alpha, d, a })
    }

    /// `a = d = 1`.
    pub fn normalized(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, 1.0)
    }
}

/// Stopping tolerance for the solution evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// Bound on `|u − û|`.
    Absolute(f64),
    /// Bound on `|u − û|/|u|`.
    Relative(f64),
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::Absolute(DEFAULT_TOL)
    }
}

impl Tolerance {
    fn validate(self) -> Result<Self> {
        let v = match self {
            Tolerance::Absolute(v) | Tolerance::Relative(v) => v,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(domain!("tolerance {v} must be finite and positive"));
        }
        Ok(self)
    }
}

/// How a [`SolutionValue`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionMethod {
    AlternatingSeries,
    DirectQuadrature,
    GaussianClosedForm,
}

impl SolutionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionMethod::AlternatingSeries => "AlternatingSeries",
            SolutionMethod::DirectQuadrature => "DirectQuadrature",
            SolutionMethod::GaussianClosedForm => "GaussianClosedForm",
        }
    }
}

/// Which evaluator [`solve`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    Series,
    Quadrature,
    /// Gaussian at `α = 1`, quadrature when `a = 0`, series otherwise.
    Auto,
}

/// A value of `u(x, t)`.
///
/// `u` may overflow to `+∞` at large `t`; `log_u` is then authoritative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionValue {
    pub u: f64,
    pub log_u: Option<f64>,
    pub method: SolutionMethod,
    pub abs_error_bound: f64,
}

impl SolutionValue {
    /// Builds a value from `u = scaled · exp(log_scale)`.
    pub(crate) fn from_scaled(
        scaled: f64,
        bound_scaled: f64,
        log_scale: f64,
        method: SolutionMethod,
    ) -> Self {
        let log_u = if scaled > 0.0 {
            Some(log(scaled) + log_scale)
        } else {
            None
        };
        Self {
            u: scaled * exp(log_scale),
            log_u,
            method,
            abs_error_bound: bound_scaled * exp(log_scale),
        }
    }

    /// `ln u`, from `log_u` when available.
    pub fn ln(&self) -> f64 {
        self.log_u.unwrap_or_else(|| log(self.u))
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain!(
            "t = {t}: the initial datum is a Dirac delta; choose t > 0"
        ));
    }
    Ok(())
}

/// Maps `(x, t)` to the `a = d = 1` problem:
/// `u_{d,a}(x, t) = √(a/d) · u_{1,1}(x√(a/d), t·a^{1/α})`.
pub fn rescale(params: &FracParams, x: f64, t: f64) -> Result<(f64, f64)> {
    check_time(t)?;
    if params.a == 0.0 {
        return Err(Error::NotRescalable);
    }
    let s = sqrt(params.a / params.d);
    Ok((x * s, t * pow(params.a, 1.0 / params.alpha)))
}

/// The `α = 1` closed form `(4πdt)^{-1/2} exp(at − x²/(4dt))`.
pub fn u_gaussian(x: f64, t: f64, params: &FracParams) -> Result<SolutionValue> {
    check_time(t)?;
    if params.alpha != 1.0 {
        return Err(domain!("the Gaussian closed form needs alpha = 1"));
    }
    let d = params.d;
    let log_u = -0.5 * log(4.0 * PI * d * t) + params.a * t - x * x / (4.0 * d * t);
    let u = exp(log_u);
    Ok(SolutionValue {
        u,
        log_u: Some(log_u),
        method: SolutionMethod::GaussianClosedForm,
        abs_error_bound: 8.0 * EPS * (1.0 + fabs(log_u)) * u,
    })
}

/// `u(x, t)` for general `(d, a)` with the chosen evaluator.
///
/// The series works in the `a = d = 1` normalisation and is mapped back
/// through [`rescale`]; negative `x` uses evenness.
pub fn solve(
    params: &FracParams,
    x: f64,
    t: f64,
    choice: MethodChoice,
    tol: Tolerance,
) -> Result<SolutionValue> {
    check_time(t)?;
    let x = fabs(x);
    let choice = match choice {
        MethodChoice::Auto if params.alpha == 1.0 => return u_gaussian(x, t, params),
        MethodChoice::Auto if params.a == 0.0 => MethodChoice::Quadrature,
        MethodChoice::Auto => MethodChoice::Series,
        c => c,
    };
    match choice {
        MethodChoice::Quadrature => u_quadrature(x, t, params, tol),
        _ => {
            let (xs, ts) = rescale(params, x, t)?;
            let factor = sqrt(params.a / params.d);
            let tol = match tol {
                Tolerance::Absolute(v) => Tolerance::Absolute(v / factor),
                rel => rel,
            };
            let v = u_series(xs, ts, params.alpha, tol)?;
            Ok(SolutionValue {
                u: v.u * factor,
                log_u: v.log_u.map(|l| l + log(factor)),
                method: v.method,
                abs_error_bound: v.abs_error_bound * factor,
            })
        }
    }
}

/// `E_α((a − 4π²dξ²)t^α)` divided by its large-`ξ` form
/// `1/(Γ(1−α)(4π²dξ² − a)t^α)`.
pub fn spectral_tail_ratio(xi: f64, t: f64, params: &FracParams) -> Result<f64> {
    check_time(t)?;
    if params.alpha == 1.0 {
        return Err(domain!("the algebraic tail does not exist at alpha = 1"));
    }
    let z = (4.0 * PI * PI * params.d * xi * xi - params.a) * pow(t, params.alpha);
    if !(z > 0.0) {
        return Err(domain!("need 4π²dξ² > a (got ξ = {xi})"));
    }
    let ml = MittagLeffler::with_alpha(params.alpha)?;
    Ok(ml.e(-z).value * z / recip_gamma(1.0 - params.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_validated() {
        assert!(FracParams::new(0.4, 1.0, 1.0).is_err());
        assert!(FracParams::new(0.5, 0.0, 1.0).is_err());
        assert!(FracParams::new(0.5, 1.0, -1.0).is_err());
        assert!(FracParams::new(1.0, 1.0, 0.0).is_ok());
    }

    #[test]
    fn rescale_identity_and_errors() {
        let p = FracParams::normalized(0.75).unwrap();
        assert_eq!(rescale(&p, 3.0, 2.0).unwrap(), (3.0, 2.0));
        let p0 = FracParams::new(0.75, 1.0, 0.0).unwrap();
        assert_eq!(rescale(&p0, 1.0, 1.0), Err(Error::NotRescalable));
        assert!(rescale(&p, 1.0, 0.0).is_err());
    }

    #[test]
    fn gaussian_reference_values() {
        let p = FracParams::new(1.0, 1.0, 0.0).unwrap();
        let v = u_gaussian(0.0, 1.0, &p).unwrap().u;
        assert!((v - 0.282_094_791_773_878_1).abs() < 1e-15);
        let p = FracParams::new(1.0, 1.0, 1.0).unwrap();
        let v = u_gaussian(2.0, 1.0, &p).unwrap().u;
        assert!((v - 0.282_094_791_773_878_1).abs() < 1e-15);
        let p = FracParams::new(1.0, 0.5, 2.0).unwrap();
        let v = u_gaussian(1.0, 2.0, &p).unwrap().u;
        let expected = (3.75f64).exp() / (4.0 * PI).sqrt();
        assert!((v - expected).abs() < 1e-13 * expected);
        assert!(u_gaussian(0.0, 1.0, &FracParams::normalized(0.5).unwrap()).is_err());
    }

    #[test]
    fn gaussian_log_form_survives_overflow() {
        let p = FracParams::new(1.0, 1.0, 1.0).unwrap();
        let v = u_gaussian(0.0, 1000.0, &p).unwrap();
        assert!(v.u.is_infinite());
        let expected = 1000.0 - 0.5 * (4000.0 * PI).ln();
        assert!((v.log_u.unwrap() - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn spectral_tail_ratio_tends_to_one() {
        let p = FracParams::normalized(0.5).unwrap();
        let r = spectral_tail_ratio(100.0, 1.0, &p).unwrap();
        assert!((r - 1.0).abs() < 0.01);
        let mut prev = f64::INFINITY;
        let mut xi = 8.0;
        while xi <= 256.0 {
            let dev = (spectral_tail_ratio(xi, 1.0, &p).unwrap() - 1.0).abs();
            assert!(dev < prev);
            prev = dev;
            xi *= 2.0;
        }
        assert!(spectral_tail_ratio(0.1, 1.0, &p).is_err());
        let p1 = FracParams::normalized(1.0).unwrap();
        assert!(spectral_tail_ratio(10.0, 1.0, &p1).is_err());
    }
}
