//! Machine checks of the Mittag-Leffler and coefficient inequalities, and
//! the lower bound for `u` along the curve `x = c·t^β`.
//!
//! Quantities that overflow are compared in units of `exp(log_scale)`.

use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::math::{cos, exp, fabs, log, log1p, pow, Compensated, PI};
use crate::solution::series::TermIntegrator;
use crate::solution::{u_series_with, SeriesConfig, Tolerance};
use crate::special::{recip_gamma, MittagLeffler, MlEval, MlKind};

/// Cancellation guard for the front bound: a bracket whose value is below
/// this fraction of its largest contribution is treated as vacuous.
pub const VACUOUS_RESIDUE: f64 = 1e-13;
/// Slack allowed in `log u ≥ log(lower bound)`.
pub const BRACKET_SLACK: f64 = 1e-9;

/// Outcome of one inequality check.
///
/// `lhs` and `rhs` are in units of `exp(log_scale)`. `margin` is signed so
/// that a non-negative value means the inequality holds; each check
/// documents its direction.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub satisfied: bool,
    pub log_scale: f64,
    pub context: Vec<(&'static str, f64)>,
}

impl BoundReport {
    pub(crate) fn new(
        lhs: f64,
        rhs: f64,
        margin: f64,
        log_scale: f64,
        context: Vec<(&'static str, f64)>,
    ) -> Self {
        let tol_eq = 1e-12 * fabs(lhs).max(fabs(rhs)).max(1.0);
        Self {
            lhs,
            rhs,
            margin,
            satisfied: margin >= -tol_eq,
            log_scale,
            context,
        }
    }
}

/// The fixed point of `cos`, by fixed-point iteration.
pub fn dottie_number() -> f64 {
    let mut l: f64 = 0.739;
    for _ in 0..10_000 {
        let next = cos(l);
        if fabs(next - l) < 1e-16 {
            return next;
        }
        l = next;
    }
    l
}

fn check_alpha(alpha: f64, allow_one: bool) -> Result<()> {
    let ok = alpha >= 0.5 && (alpha < 1.0 || (allow_one && alpha == 1.0));
    if !ok {
        let upper = if allow_one { "1]" } else { "1)" };
        return Err(domain!("alpha = {alpha} must lie in [1/2, {upper}"));
    }
    Ok(())
}

/// Signed sum of Mittag-Leffler values and constants relative to `exp(shift)`.
struct ScaledSum {
    shift: f64,
    acc: Compensated,
    largest: f64,
}

impl ScaledSum {
    fn new(shift: f64) -> Self {
        Self {
            shift,
            acc: Compensated::new(),
            largest: 0.0,
        }
    }

    fn push(&mut self, v: f64) {
        self.acc.add(v);
        self.largest = self.largest.max(fabs(v));
    }

    fn eval(&mut self, coef: f64, ev: &MlEval) {
        self.push(coef * ev.scaled(self.shift));
    }

    fn constant(&mut self, c: f64) {
        self.push(c * exp(-self.shift));
    }

    fn value(&self) -> f64 {
        self.acc.value()
    }
}

/// `E_α(r) ≤ αE'_α(r) + 1 − 1/Γ(α) + (1/Γ(1+α) − 1/Γ(2α))·r` for
/// `α ∈ [1/2, 1]`, `r ≥ 0`. Margin is `rhs − lhs`.
pub fn check_ml_upper(alpha: f64, r: f64) -> Result<BoundReport> {
    check_alpha(alpha, true)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(domain!("r = {r} must be finite and non-negative"));
    }
    let ml = MittagLeffler::with_alpha(alpha)?;
    let e = ml.e(r);
    let shift = e.exponent();
    let lhs = e.scaled(shift);
    let mut rhs = ScaledSum::new(shift);
    rhs.eval(alpha, &ml.e_prime(r));
    rhs.constant(1.0 - recip_gamma(alpha));
    rhs.constant((recip_gamma(1.0 + alpha) - recip_gamma(2.0 * alpha)) * r);
    let rhs = rhs.value();
    Ok(BoundReport::new(
        lhs,
        rhs,
        rhs - lhs,
        shift,
        alloc::vec![("alpha", alpha), ("r", r)],
    ))
}

/// `E_α(r) ≥ (α/r)E'_α(r) − 1/(Γ(α)r) + 1 − 1/Γ(2α)` for `α ∈ [1/2, 1]`,
/// `r > 0`. Margin is `lhs − rhs`.
///
/// The first two terms are `(E_{α,α}(r) − 1/Γ(α))/r`, evaluated without
/// cancellation at small `r`.
pub fn check_ml_lower(alpha: f64, r: f64) -> Result<BoundReport> {
    check_alpha(alpha, true)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(domain!("r = {r} must be finite and positive"));
    }
    let ml = MittagLeffler::with_alpha(alpha)?;
    let e = ml.e(r);
    let shift = e.exponent();
    let lhs = e.scaled(shift);
    let mut rhs = ScaledSum::new(shift);
    rhs.eval(1.0, &ml.reduced(MlKind::AlphaAlpha, r));
    rhs.constant(1.0 - recip_gamma(2.0 * alpha));
    let rhs = rhs.value();
    Ok(BoundReport::new(
        lhs,
        rhs,
        lhs - rhs,
        shift,
        alloc::vec![("alpha", alpha), ("r", r)],
    ))
}

// (α cos ℓ/ℓ)(x/T²)[E(T) − E(T(1 − ℓ²/x²)) + c_0]
fn push_a0_bound(sum: &mut ScaledSum, ml: &MittagLeffler, x: f64, ta: f64, ell: f64, sign: f64) {
    let alpha = ml.alpha();
    let q = ell * ell / (x * x);
    let pref = sign * alpha * cos(ell) / ell * x / (ta * ta);
    let c0 = ta * recip_gamma(alpha) / alpha * log1p(-q)
        + q * ta * ta / alpha * (1.0 - recip_gamma(2.0 * alpha));
    sum.eval(pref, &ml.e(ta));
    sum.eval(-pref, &ml.e(ta * (1.0 - q)));
    sum.constant(pref * c0);
}

// (2α/((2k−1)π))(x/T)[E(T(1 − π²(2k−1)²/4x²)) − E(T(1 − π²(2k+1)²/4x²)) + c_k]
fn push_ak_bound(sum: &mut ScaledSum, ml: &MittagLeffler, k: usize, x: f64, ta: f64, sign: f64) {
    let alpha = ml.alpha();
    let kf = k as f64;
    let m = 2.0 * kf - 1.0;
    let p = 2.0 * kf + 1.0;
    let h2 = PI * PI / (4.0 * x * x);
    let pref = sign * 2.0 * alpha / (m * PI) * x / ta;
    let ck = 4.0 * kf * PI / (x * m) * (1.0 - recip_gamma(alpha))
        + ta * kf * PI / (x * m)
            * (recip_gamma(1.0 + alpha) - recip_gamma(2.0 * alpha))
            * (4.0 - (PI / x) * (PI / x) * (1.0 + 4.0 * kf * kf));
    sum.eval(pref, &ml.e(ta * (1.0 - h2 * m * m)));
    sum.eval(-pref, &ml.e(ta * (1.0 - h2 * p * p)));
    sum.constant(pref * ck);
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain!("t = {t} must be finite and positive"));
    }
    Ok(())
}

/// Lower bound for `a_0(x, t)`, valid for `0 < ℓ < π/2 < x`.
/// Margin is `lhs − rhs`.
pub fn a0_lower_bound(x: f64, t: f64, alpha: f64, ell: f64) -> Result<BoundReport> {
    check_alpha(alpha, false)?;
    check_time(t)?;
    if !(ell > 0.0 && ell < 0.5 * PI) {
        return Err(domain!("ell = {ell} must lie in (0, π/2)"));
    }
    if !(x > 0.5 * PI && x.is_finite()) {
        return Err(domain!("x = {x} must exceed π/2"));
    }
    let ml = MittagLeffler::with_alpha(alpha)?;
    let ti = TermIntegrator::new(&ml, x, t);
    let shift = ti.log_scale();
    let lhs = ti.term(0).0;
    let mut rhs = ScaledSum::new(shift);
    push_a0_bound(&mut rhs, &ml, x, pow(t, alpha), ell, 1.0);
    let rhs = rhs.value();
    Ok(BoundReport::new(
        lhs,
        rhs,
        lhs - rhs,
        shift,
        alloc::vec![("x", x), ("t", t), ("alpha", alpha), ("ell", ell)],
    ))
}

/// Upper bound for `a_k(x, t)`, `k ≥ 1`, valid for `x > π(2k+1)/2`.
/// Margin is `rhs − lhs`.
pub fn ak_upper_bound(k: usize, x: f64, t: f64, alpha: f64) -> Result<BoundReport> {
    check_alpha(alpha, false)?;
    check_time(t)?;
    if k == 0 {
        return Err(domain!("the upper bound is stated for k >= 1"));
    }
    let x_min = PI * (2 * k + 1) as f64 / 2.0;
    if !(x > x_min && x.is_finite()) {
        return Err(domain!("x = {x} must exceed π(2k+1)/2 = {x_min}"));
    }
    let ml = MittagLeffler::with_alpha(alpha)?;
    let ti = TermIntegrator::new(&ml, x, t);
    let shift = ti.log_scale();
    let lhs = ti.term(k).0;
    let mut rhs = ScaledSum::new(shift);
    push_ak_bound(&mut rhs, &ml, k, x, pow(t, alpha), 1.0);
    let rhs = rhs.value();
    Ok(BoundReport::new(
        lhs,
        rhs,
        rhs - lhs,
        shift,
        alloc::vec![("k", k as f64), ("x", x), ("t", t), ("alpha", alpha)],
    ))
}

/// Parameters of a front-tracking run along `x = c·t^β`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontConfig {
    pub alpha: f64,
    pub beta: f64,
    pub c: f64,
    pub ell: f64,
    pub t_grid: Vec<f64>,
}

impl FrontConfig {
    /// `β = 0` (a fixed point `x = c`) is accepted alongside `β ∈ (0, 1/2)`.
    pub fn new(alpha: f64, beta: f64, c: f64, t_grid: Vec<f64>) -> Result<Self> {
        check_alpha(alpha, false)?;
        if !(0.0..0.5).contains(&beta) {
            return Err(domain!("beta = {beta} must lie in [0, 1/2)"));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(domain!("c = {c} must be finite and positive"));
        }
        if t_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
            return Err(domain!("all grid times must be finite and positive"));
        }
        if t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(domain!("the time grid must be strictly increasing"));
        }
        Ok(Self {
            alpha,
            beta,
            c,
            ell: dottie_number(),
            t_grid,
        })
    }

    pub fn with_ell(mut self, ell: f64) -> Result<Self> {
        if !(ell > 0.0 && ell < 0.5 * PI) {
            return Err(domain!("ell = {ell} must lie in (0, π/2)"));
        }
        self.ell = ell;
        Ok(self)
    }

    pub fn x_at(&self, t: f64) -> f64 {
        self.c * pow(t, self.beta)
    }
}

/// One point of a front-tracking run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontSample {
    pub t: f64,
    pub x: f64,
    pub log_u: f64,
    /// `−∞` when the bound is vacuous or its hypotheses fail at this `x`.
    pub log_lower_bound: f64,
    pub bracket_ok: bool,
}

/// `ln` of the lower bound `u(x, t) ≥ (a_0 − a_1)/π` at `x = c·t^β`, with
/// `a_0` bounded below and `a_1` bounded above by the coefficient bounds
/// (normalisation `a = d = 1`).
///
/// Returns `−∞` when the assembled bracket is not positive, or when
/// cancellation leaves less than [`VACUOUS_RESIDUE`] of its largest term.
pub fn front_lower_bound(t: f64, config: &FrontConfig) -> Result<f64> {
    check_time(t)?;
    let x = config.x_at(t);
    if !(x > 1.5 * PI) {
        return Err(domain!(
            "x = {x} must exceed 3π/2 for both coefficient bounds"
        ));
    }
    let ml = MittagLeffler::with_alpha(config.alpha)?;
    let ta = pow(t, config.alpha);
    let shift = ml.ln_e(ta);
    let mut sum = ScaledSum::new(shift);
    push_a0_bound(&mut sum, &ml, x, ta, config.ell, 1.0);
    push_ak_bound(&mut sum, &ml, 1, x, ta, -1.0);
    let v = sum.value();
    if !(v > 0.0) || v < VACUOUS_RESIDUE * sum.largest {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(log(v / PI) + shift)
}

/// `ln u` and its lower bound at every grid time.
///
/// `ln u` comes from the alternating series with a relative tolerance
/// (direct quadrature below the series' `x_min`). Points with
/// `x ≤ 3π/2` get the marker `−∞` as lower bound.
pub fn front_track(config: &FrontConfig) -> Result<Vec<FrontSample>> {
    config
        .t_grid
        .iter()
        .map(|&t| front_sample(t, config))
        .collect()
}

/// One sample of [`front_track`].
pub fn front_sample(t: f64, config: &FrontConfig) -> Result<FrontSample> {
    let series = SeriesConfig::with_tol(Tolerance::Relative(1e-10));
    let x = config.x_at(t);
    let log_u = u_series_with(x, t, config.alpha, &series)?.ln();
    let log_lower_bound = if x > 1.5 * PI {
        front_lower_bound(t, config)?
    } else {
        f64::NEG_INFINITY
    };
    Ok(FrontSample {
        t,
        x,
        log_u,
        log_lower_bound,
        bracket_ok: log_u >= log_lower_bound - BRACKET_SLACK,
    })
}

/// `true` when `ln u` is strictly increasing over the samples with `t ≥ t_from`.
pub fn divergence_certified(samples: &[FrontSample], t_from: f64) -> bool {
    let tail: Vec<f64> = samples
        .iter()
        .filter(|s| s.t >= t_from)
        .map(|s| s.log_u)
        .collect();
    tail.len() >= 2 && tail.windows(2).all(|w| w[1] > w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dottie_is_fixed_point() {
        let l = dottie_number();
        assert!(fabs(cos(l) - l) < 1e-15);
        assert!(fabs(l - 0.739_085_133_215_160_6) < 1e-14);
    }

    #[test]
    fn upper_bound_is_tight_at_alpha_one() {
        for r in [0.0, 0.5, 3.0, 50.0, 900.0] {
            let rep = check_ml_upper(1.0, r).unwrap();
            assert!(rep.satisfied);
            assert!(fabs(rep.margin) <= 1e-12 * rep.lhs.max(1.0), "{rep:?}");
        }
    }

    #[test]
    fn ml_bounds_hold_on_samples() {
        for alpha in [0.5, 0.75, 0.9] {
            for r in [1e-6, 0.1, 1.0, 10.0, 100.0] {
                assert!(check_ml_upper(alpha, r).unwrap().satisfied);
                assert!(check_ml_lower(alpha, r).unwrap().satisfied, "{alpha} {r}");
            }
        }
    }

    #[test]
    fn lower_bound_is_an_identity_at_one_half() {
        let rep = check_ml_lower(0.5, 2.0).unwrap();
        assert!(fabs(rep.margin) < 1e-12 * rep.lhs);
    }

    #[test]
    fn coefficient_bounds_examples() {
        let l = dottie_number();
        assert!(a0_lower_bound(5.0, 2.0, 0.5, l).unwrap().satisfied);
        assert!(a0_lower_bound(10.0, 1.0, 0.75, 1.0).unwrap().satisfied);
        assert!(a0_lower_bound(2.0, 0.5, 0.5, 0.1).unwrap().satisfied);
        assert!(ak_upper_bound(1, 10.0, 1.0, 0.75).unwrap().satisfied);
        assert!(ak_upper_bound(2, 20.0, 2.0, 0.5).unwrap().satisfied);
        assert!(ak_upper_bound(1, 4.7, 1.0, 0.75).is_err());
        assert!(ak_upper_bound(1, 4.72, 1.0, 0.75).unwrap().satisfied);
        assert!(a0_lower_bound(1.5, 1.0, 0.75, 0.5).is_err());
    }

    #[test]
    fn front_bound_sits_below_solution() {
        let cfg = FrontConfig::new(0.75, 0.25, 2.0, alloc::vec![50.0]).unwrap();
        let s = front_track(&cfg).unwrap()[0];
        assert!(s.log_lower_bound.is_finite());
        assert!(s.bracket_ok);
        assert!(s.log_lower_bound <= s.log_u);
    }

    #[test]
    fn front_bound_needs_large_x() {
        let cfg = FrontConfig::new(0.5, 0.4, 1.0, alloc::vec![30.0]).unwrap();
        assert!(front_lower_bound(30.0, &cfg).is_err());
        let s = front_track(&cfg).unwrap()[0];
        assert_eq!(s.log_lower_bound, f64::NEG_INFINITY);
        assert!(s.bracket_ok);
    }

    #[test]
    fn config_validation() {
        assert!(FrontConfig::new(0.5, 0.5, 1.0, alloc::vec![1.0]).is_err());
        assert!(FrontConfig::new(1.0, 0.4, 1.0, alloc::vec![1.0]).is_err());
        assert!(FrontConfig::new(0.5, 0.4, 1.0, alloc::vec![2.0, 1.0]).is_err());
        assert!(FrontConfig::new(0.5, 0.0, 1.0, alloc::vec![1.0]).is_ok());
        let cfg = FrontConfig::new(0.5, 0.4, 1.0, alloc::vec![1.0]).unwrap();
        assert!(cfg.with_ell(2.0).is_err());
    }
}
