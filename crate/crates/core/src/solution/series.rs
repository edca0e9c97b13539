//! The alternating half-period series `π·u = Σ (−1)^k a_k` (`a = d = 1`).

use alloc::vec::Vec;

use super::panels::{Integrand, PanelSum};
use super::{check_time, u_quadrature, FracParams, SolutionMethod, SolutionValue, Tolerance};
use super::{DEFAULT_K_MAX, DEFAULT_X_MIN};
use crate::error::{domain, Error, Result};
use crate::math::{exp, fabs, pow, Dd, EPS, PI, PI_LO};
use crate::quadrature::{GaussLegendre, PANEL_ORDER};
use crate::special::MittagLeffler;

// multiple of ε·Σ|w·f| added to every declared bound
const ROUNDING_FLOOR: f64 = 64.0 * EPS;

/// Truncation settings for [`u_series_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub tol: Tolerance,
    pub k_max: usize,
    pub x_min: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            k_max: DEFAULT_K_MAX,
            x_min: DEFAULT_X_MIN,
        }
    }
}

impl SeriesConfig {
    pub fn with_tol(tol: Tolerance) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// The coefficients `a_k` and partial sums of one series evaluation.
///
/// All values are in units of `exp(log_scale)`. The series was truncated
/// at `K = k_stop`; `terms` and `partial_sums` run up to index `K + 1`, so
/// `S_K` and `S_{K+1}` bracket `π·u`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSequence {
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// `a_{K+1}` plus a floating-point floor; bounds `|π·u − S_K|`.
    pub remainder_bound: f64,
    pub k_stop: usize,
    pub log_scale: f64,
}

impl TermSequence {
    /// `S_K`, the truncated value of `π·u`.
    pub fn sum(&self) -> f64 {
        self.partial_sums[self.k_stop]
    }

    /// `(min, max)` of `S_K` and `S_{K+1}`.
    pub fn bracket(&self) -> (f64, f64) {
        let a = self.partial_sums[self.k_stop];
        let b = self.partial_sums[self.k_stop + 1];
        (a.min(b), a.max(b))
    }
}

/// Integrates the half-period coefficients for fixed `(x, t, α)`.
pub(crate) struct TermIntegrator<'a> {
    integrand: Integrand<'a>,
    gl: GaussLegendre,
    x: f64,
}

impl<'a> TermIntegrator<'a> {
    pub(crate) fn new(ml: &'a MittagLeffler, x: f64, t: f64) -> Self {
        let t_alpha = pow(t, ml.alpha());
        Self {
            integrand: Integrand::new(ml, 1.0, 1.0, t_alpha, x),
            gl: GaussLegendre::new(PANEL_ORDER),
            x,
        }
    }

    pub(crate) fn log_scale(&self) -> f64 {
        self.integrand.log_scale
    }

    pub(crate) fn interval(&self, k: usize) -> (f64, f64) {
        let h = PI / (2.0 * self.x);
        if k == 0 {
            (0.0, h)
        } else {
            let kf = k as f64;
            ((2.0 * kf - 1.0) * h, (2.0 * kf + 1.0) * h)
        }
    }

    /// `a_k` in scaled units, with its rounding bookkeeping.
    ///
    /// With `ξ = kπ/x + s`, `(−1)^k cos(xξ) = cos(xs)`, so the integrand is
    /// evaluated in local coordinates and is positive.
    pub(crate) fn term(&self, k: usize) -> (f64, PanelSum) {
        let (lo, hi) = self.interval(k);
        let center = Dd::new(PI, PI_LO).mul(Dd::from(k as f64)).div_f64(self.x);
        let (s_lo, s_hi) = if k == 0 {
            (0.0, hi)
        } else {
            let h = 0.5 * PI / self.x;
            (-h, h)
        };
        let n = self.integrand.panels(lo, hi);
        let width = (s_hi - s_lo) / n as f64;
        let mut sum = PanelSum::new();
        for p in 0..n {
            let a = s_lo + width * p as f64;
            let b = if p + 1 == n { s_hi } else { a + width };
            sum.add_panel(&self.gl, a, b, |s| self.integrand.eval_local(center, s));
        }
        (sum.value(), sum)
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain!("the half-period split needs x > 0 (got {x})"));
    }
    Ok(())
}

/// `a_k(x, t) = (−1)^k ∫ E_α((1 − ξ²)t^α) cos(xξ) dξ` over the `k`-th
/// half-period (`[0, π/2x]` for `k = 0`).
pub fn a_term(k: usize, x: f64, t: f64, alpha: f64) -> Result<f64> {
    check_x(x)?;
    check_time(t)?;
    FracParams::normalized(alpha)?;
    let ml = MittagLeffler::with_alpha(alpha)?;
    let ti = TermIntegrator::new(&ml, x, t);
    let (v, _) = ti.term(k);
    Ok(v * exp(ti.log_scale()))
}

/// Sums the alternating series until the Leibniz remainder meets `config.tol`.
pub fn term_sequence(x: f64, t: f64, alpha: f64, config: &SeriesConfig) -> Result<TermSequence> {
    check_x(x)?;
    check_time(t)?;
    FracParams::normalized(alpha)?;
    let tol = config.tol.validate()?;
    let ml = MittagLeffler::with_alpha(alpha)?;
    let ti = TermIntegrator::new(&ml, x, t);
    let log_scale = ti.log_scale();
    let abs_threshold = match tol {
        Tolerance::Absolute(v) => v * PI * exp(-log_scale),
        Tolerance::Relative(_) => 0.0,
    };

    let mut terms = Vec::new();
    let mut partial_sums = Vec::new();
    let mut running = crate::math::Compensated::new();
    let mut floor = 0.0;
    for k in 0..=config.k_max.saturating_add(1) {
        let (a, sum) = ti.term(k);
        floor += ROUNDING_FLOOR * sum.abs + sum.err;
        running.add(if k % 2 == 0 { a } else { -a });
        terms.push(a);
        partial_sums.push(running.value());
        if k >= 2 {
            let s_k = partial_sums[k - 1];
            let threshold = match tol {
                Tolerance::Absolute(_) => abs_threshold,
                Tolerance::Relative(v) => v * fabs(s_k),
            };
            if a <= threshold {
                return Ok(TermSequence {
                    terms,
                    partial_sums,
                    remainder_bound: a + floor,
                    k_stop: k - 1,
                    log_scale,
                });
            }
        }
    }
    let n = partial_sums.len();
    let (s0, s1) = (partial_sums[n - 2], partial_sums[n - 1]);
    let scale = exp(log_scale) / PI;
    Err(Error::Truncation {
        k_max: config.k_max,
        lower: s0.min(s1) * scale,
        upper: s0.max(s1) * scale,
    })
}

/// `u(x, t)` for `a = d = 1` by the alternating series with default settings.
pub fn u_series(x: f64, t: f64, alpha: f64, tol: Tolerance) -> Result<SolutionValue> {
    u_series_with(x, t, alpha, &SeriesConfig::with_tol(tol))
}

/// `u(x, t)` for `a = d = 1` by the alternating series.
///
/// For `x < config.x_min` the half-periods become too wide and the value
/// is computed by [`u_quadrature`] instead (its `method` says so).
pub fn u_series_with(x: f64, t: f64, alpha: f64, config: &SeriesConfig) -> Result<SolutionValue> {
    check_time(t)?;
    let params = FracParams::normalized(alpha)?;
    if !(fabs(x) >= config.x_min) {
        return u_quadrature(x, t, &params, config.tol);
    }
    let seq = term_sequence(fabs(x), t, alpha, config)?;
    Ok(SolutionValue::from_scaled(
        seq.sum() / PI,
        seq.remainder_bound / PI,
        seq.log_scale,
        SolutionMethod::AlternatingSeries,
    ))
}
