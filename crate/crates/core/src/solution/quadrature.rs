//! Direct quadrature of `u = 2 ∫₀^∞ E_α((a − 4π²dξ²)t^α) cos(2πxξ) dξ`.
//!
//! The integrand decays only like `1/ξ²`, so the leading tail
//! `g(ξ) = 1/(Γ(1−α)·4π²d·t^α·(ξ² + 1))` is subtracted and its cosine
//! transform `2∫₀^∞ g cos(2πxξ) dξ = π·γ·e^{−2πx}` added back exactly. The
//! remainder `f − g = O(ξ^{-4})` is integrated on `[0, Ξ]` and `Ξ` is doubled
//! until the bound on `2∫_Ξ^∞ |f − g|` meets the tolerance.

use super::panels::{Integrand, PanelSum};
use super::{check_time, FracParams, SolutionMethod, SolutionValue, Tolerance};
use crate::error::Result;
use crate::math::{ceil, cos, exp, fabs, pow, sqrt, Dd, EPS, PI};
use crate::quadrature::{GaussLegendre, PANEL_ORDER};
use crate::special::{gamma_fn, recip_gamma, MittagLeffler};

const ROUNDING_FLOOR: f64 = 64.0 * EPS;
const MAX_DOUBLINGS: usize = 40;
// the tail estimate uses the algebraic expansion of E_α(−z) beyond this z
const TAIL_MIN_ARGUMENT: f64 = 30.0;

/// `u(x, t)` for general `(d, a)` by direct Fourier quadrature.
pub fn u_quadrature(x: f64, t: f64, params: &FracParams, tol: Tolerance) -> Result<SolutionValue> {
    check_time(t)?;
    let params = FracParams::new(params.alpha, params.d, params.a)?;
    let tol = tol.validate()?;
    let x = fabs(x);
    if params.alpha == 1.0 {
        return gaussian_contour(x, t, &params, tol);
    }
    let alpha = params.alpha;
    let kappa = 4.0 * PI * PI * params.d;
    let t_alpha = pow(t, alpha);
    let ml = MittagLeffler::with_alpha(alpha)?;
    let integrand = Integrand::new(&ml, params.a, kappa, t_alpha, 2.0 * PI * x);
    let log_scale = integrand.log_scale;
    let gl = GaussLegendre::new(PANEL_ORDER);

    let a_prime = params.a / kappa;
    let gamma_s = recip_gamma(1.0 - alpha) / (t_alpha * kappa) * exp(-log_scale);
    let analytic = gamma_s * PI * exp(-2.0 * PI * x);
    // |f − 1/(Γ(1−α)z)| ≤ 2Γ(2α)/(πz²) with z ≥ κT ξ²/2, and
    // |1/(Γ(1−α)z) − g| ≤ 2γ(1 + a')/ξ⁴
    let envelope = 2.0 * gamma_fn(2.0 * alpha)? / PI * 4.0 / (kappa * kappa * t_alpha * t_alpha)
        * exp(-log_scale);
    let tail = |cut: f64| -> f64 {
        let c3 = 3.0 * cut * cut * cut;
        2.0 * (envelope + gamma_s * (1.0 + a_prime) * 2.0) / c3
    };

    // cells of one half-period centred on the extrema of cos(2πxξ); inside
    // a cell ξ = m/(2x) + s and cos(2πxξ) = (−1)^m cos(2πxs)
    let period = if x > 0.0 { 0.5 / x } else { f64::INFINITY };
    let scale = sqrt(a_prime).max(1.0 / sqrt(kappa));
    let mut cut = (2.0 * sqrt(a_prime)).max(sqrt((params.a + TAIL_MIN_ARGUMENT / t_alpha) / kappa));
    let mut sum = PanelSum::new();
    let mut cell = 0usize;
    let mut reached = 0.0;
    let mut total;
    let mut tail_bound;
    let mut doublings = 0;
    let add_range = |sum: &mut PanelSum, center: Dd, sign: f64, s_lo: f64, s_hi: f64| {
        let mut s = s_lo;
        while s < s_hi {
            let xi = center.hi + s;
            let h = integrand.step(xi, period.min(xi.max(scale)));
            let hi = (s + h).min(s_hi);
            sum.add_panel(&gl, s, hi, |s| {
                let (f, err) = integrand.eval_local(center, s);
                let xi = center.hi + s;
                let g = gamma_s / (xi * xi + 1.0) * cos(2.0 * PI * x * s);
                (
                    sign * (f - g),
                    err * fabs(f) / fabs(f - g).max(f64::MIN_POSITIVE),
                )
            });
            s = hi;
        }
    };
    loop {
        if x > 0.0 {
            while reached < cut {
                let center = Dd::from(cell as f64).div_f64(2.0 * x);
                let sign = if cell.is_multiple_of(2) { 1.0 } else { -1.0 };
                let s_lo = if cell == 0 { 0.0 } else { -0.5 * period };
                add_range(&mut sum, center, sign, s_lo, 0.5 * period);
                cell += 1;
                reached = (cell as f64 - 0.5) * period;
            }
        } else {
            add_range(&mut sum, Dd::from(0.0), 1.0, reached, cut);
            reached = cut;
        }
        total = 2.0 * sum.value() + analytic;
        tail_bound = tail(reached);
        let floor = 2.0 * (ROUNDING_FLOOR * sum.abs + sum.err);
        let target = match tol {
            Tolerance::Absolute(v) => v * exp(-log_scale),
            Tolerance::Relative(v) => v * fabs(total),
        };
        if tail_bound <= (0.5 * target).max(floor) || doublings == MAX_DOUBLINGS {
            break;
        }
        cut *= 2.0;
        doublings += 1;
    }
    let bound =
        tail_bound + 2.0 * (ROUNDING_FLOOR * sum.abs + sum.err) + 4.0 * EPS * fabs(analytic);
    Ok(SolutionValue::from_scaled(
        total,
        bound,
        log_scale,
        SolutionMethod::DirectQuadrature,
    ))
}

/// `α = 1`: the integrand is entire, so the line is moved to
/// `ξ = s + iπx/(κt)`, where `u = e^{at − x²/(4dt)} ∫ e^{−κts²} ds` has no
/// oscillation and keeps full relative accuracy far into the tails.
fn gaussian_contour(x: f64, t: f64, params: &FracParams, tol: Tolerance) -> Result<SolutionValue> {
    let kappa = 4.0 * PI * PI * params.d;
    let width = 1.0 / sqrt(kappa * t);
    let log_scale = params.a * t - x * x / (4.0 * params.d * t);
    let gl = GaussLegendre::new(PANEL_ORDER);
    let mut sum = PanelSum::new();
    let mut lo = 0.0;
    let mut cut = 6.0 * width;
    loop {
        let panels = (ceil((cut - lo) / width) as usize).max(1);
        let h = (cut - lo) / panels as f64;
        for p in 0..panels {
            let a = lo + h * p as f64;
            let b = if p + 1 == panels { cut } else { a + h };
            sum.add_panel(&gl, a, b, |s| (exp(-kappa * t * s * s), 2.0 * EPS));
        }
        lo = cut;
        let total = 2.0 * sum.value();
        let tail = exp(-kappa * t * cut * cut) / (kappa * t * cut);
        let floor = 2.0 * (ROUNDING_FLOOR * sum.abs + sum.err);
        let target = match tol {
            Tolerance::Absolute(v) => v * exp(-log_scale),
            Tolerance::Relative(v) => v * total,
        };
        if tail <= (0.5 * target).max(floor) {
            return Ok(SolutionValue::from_scaled(
                total,
                tail + floor,
                log_scale,
                SolutionMethod::DirectQuadrature,
            ));
        }
        cut *= 2.0;
    }
}
