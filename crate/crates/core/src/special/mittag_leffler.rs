//! Mittag-Leffler functions `E_α(r) = Σ r^k/Γ(1+kα)` and
//! `E_{α,α}(r) = Σ r^k/Γ(α+kα)` for `0 < α ≤ 1` and real `r`.
//!
//! Regimes (`β ∈ {1, α}` is the second parameter, `w = |r|^{1/α}`):
//!
//! * `α = 1`: both functions are `exp`.
//! * `0 ≤ r ≤ series_radius` (and `w ≤ 200`): Taylor series, compensated sum.
//! * `r > series_radius`: `(1/α) r^{(1-β)/α} e^w − Σ r^{-n}/Γ(β−nα)`, kept as
//!   `mantissa · exp(exponent)` so nothing overflows.
//! * `r < 0`, `w ≤ 4`: Taylor series (cancellation bounded by `e^4`).
//! * `r < 0` beyond that: the algebraic expansion `−Σ (−z)^{-n}/Γ(β−nα)`,
//!   optimally truncated, when its smallest term is below `1e-15` relative;
//!   otherwise the Laplace representation of the completely monotone
//!   function, integrated with an exp-sinh rule:
//!
//!   `E_α(−z)     = sin(απ)/(απ) ∫₀^∞ exp(−(zu)^{1/α}) / (u² + 2u cos απ + 1) du`
//!
//!   `E_{α,α}(−z) = sin(απ)/(απ z) ∫₀^∞ (zu)^{1/α} exp(−(zu)^{1/α}) / (u² + 2u cos απ + 1) du`

use alloc::vec::Vec;

use super::gamma::{ln_gamma, recip_gamma};
use crate::error::{domain, Result};
use crate::math::{cos, cosh, exp, expm1, fabs, log, pow, sin, sinh, Compensated, EPS, PI};

/// Default Taylor radius on the positive axis (`r_switch`).
pub const DEFAULT_SERIES_RADIUS: f64 = 12.0;
/// Default cap on the number of asymptotic terms.
pub const DEFAULT_ASYMPTOTIC_TERMS: usize = 64;

const TAYLOR_MAX_TERMS: usize = 512;
const TAYLOR_REL_STOP: f64 = 1e-18;
const NEG_TAYLOR_MAX_EXPONENT: f64 = 4.0;
const POS_TAYLOR_MAX_EXPONENT: f64 = 200.0;
const OVERFLOW_EXPONENT: f64 = 700.0;
const ASYMPTOTIC_ACCEPT: f64 = 1e-15;

/// Which member of the family: `β = 1` or `β = α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MlKind {
    /// `E_α = E_{α,1}`
    Standard,
    /// `E_{α,α}`
    AlphaAlpha,
}

impl MlKind {
    fn index(self) -> usize {
        match self {
            MlKind::Standard => 0,
            MlKind::AlphaAlpha => 1,
        }
    }
}

/// Algorithm that produced an [`MlEval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MlMethod {
    TaylorSeries,
    AsymptoticNegative,
    AsymptoticPositive,
    ClosedForm,
    LaplaceIntegral,
}

impl MlMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            MlMethod::TaylorSeries => "TaylorSeries",
            MlMethod::AsymptoticNegative => "AsymptoticNegative",
            MlMethod::AsymptoticPositive => "AsymptoticPositive",
            MlMethod::ClosedForm => "ClosedForm",
            MlMethod::LaplaceIntegral => "LaplaceIntegral",
        }
    }
}

/// Result of a Mittag-Leffler evaluation.
///
/// `value` is authoritative unless it overflowed to `+∞` or underflowed to
/// `0`, in which case `log_value` carries the result. Internally the value is held as
/// `mantissa · exp(exponent)`; [`MlEval::scaled`] exposes it relative to a
/// caller-chosen exponent without ever forming the huge number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlEval {
    pub value: f64,
    pub log_value: Option<f64>,
    pub method: MlMethod,
    /// Estimated relative error.
    pub err_estimate: f64,
    mantissa: f64,
    exponent: f64,
}

impl MlEval {
    fn plain(value: f64, method: MlMethod, err_estimate: f64) -> Self {
        Self {
            value,
            log_value: None,
            method,
            err_estimate,
            mantissa: value,
            exponent: 0.0,
        }
    }

    fn split(mantissa: f64, exponent: f64, method: MlMethod, err_estimate: f64) -> Self {
        let value = if exponent > OVERFLOW_EXPONENT {
            f64::INFINITY
        } else {
            mantissa * exp(exponent)
        };
        Self {
            value,
            log_value: Some(log(mantissa) + exponent),
            method,
            err_estimate,
            mantissa,
            exponent,
        }
    }

    /// Natural logarithm of the value (only meaningful when it is positive).
    pub fn ln(&self) -> f64 {
        match self.log_value {
            Some(l) => l,
            None => log(self.value),
        }
    }

    /// `value · exp(−shift)`, computed without overflow.
    pub fn scaled(&self, shift: f64) -> f64 {
        self.mantissa * exp(self.exponent - shift)
    }

    /// The exponent the value is carried at (`0` for plain results).
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn overflowed(&self) -> bool {
        self.value.is_infinite()
    }

    /// Sign of the represented number, also when `value` under- or overflowed.
    pub fn is_positive(&self) -> bool {
        self.mantissa > 0.0
    }

    fn scale_by(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            log_value: self.log_value.map(|l| l + log(c)),
            mantissa: self.mantissa * c,
            ..self
        }
    }
}

/// Regime-switch configuration of the evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    /// Taylor series radius on the positive axis; also caps the negative one.
    pub series_radius: f64,
    /// Maximum number of terms of the asymptotic expansions.
    pub asymptotic_terms: usize,
}

impl MlParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(domain!("alpha = {alpha} must lie in (0, 1]"));
        }
        Ok(Self {
            alpha,
            series_radius: DEFAULT_SERIES_RADIUS,
            asymptotic_terms: DEFAULT_ASYMPTOTIC_TERMS,
        })
    }

    pub fn with_series_radius(mut self, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(domain!(
                "series radius {radius} must be finite and positive"
            ));
        }
        self.series_radius = radius;
        Ok(self)
    }

    pub fn with_asymptotic_terms(mut self, terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(domain!("at least one asymptotic term is required"));
        }
        self.asymptotic_terms = terms;
        Ok(self)
    }
}

/// Exp-sinh nodes for the negative-axis Laplace representation.
#[derive(Debug, Clone)]
struct LaplaceRule {
    ln_u: Vec<f64>,
    weight: Vec<f64>,
    prefactor: f64,
}

impl LaplaceRule {
    const TAU_MIN: f64 = -5.5;
    const TAU_MAX: f64 = 3.0;
    const MAX_NODES: usize = 200_000;

    fn new(alpha: f64) -> Self {
        let c = cos(PI * alpha);
        // poles of the kernel sit at arg u = ±(1−α)π; in the τ plane that is
        // Im τ = asin(2(1−α)). The e^{-(zu)^{1/α}} factor also limits the strip.
        let pole = libm::asin((2.0 * (1.0 - alpha)).min(1.0));
        let strip = (0.5 * pole).min(0.2).min(0.4 * alpha);
        let h =
            (2.0 * PI * strip / 38.0).max((Self::TAU_MAX - Self::TAU_MIN) / Self::MAX_NODES as f64);
        let n = ((Self::TAU_MAX - Self::TAU_MIN) / h) as usize + 1;
        let mut ln_u = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for j in 0..n {
            let tau = Self::TAU_MIN + h * j as f64;
            let s = 0.5 * PI * sinh(tau);
            let u = exp(s);
            let w = h * 0.5 * PI * cosh(tau) * u;
            ln_u.push(s);
            weight.push(w / (u * u + 2.0 * c * u + 1.0));
        }
        Self {
            ln_u,
            weight,
            prefactor: sin(PI * alpha) / (PI * alpha),
        }
    }

    /// Returns the value and a heuristic relative error estimate.
    fn eval(&self, kind: MlKind, inv_alpha: f64, z: f64) -> (f64, f64) {
        let lz = log(z);
        let mut fine = Compensated::new();
        let mut coarse = Compensated::new();
        for (j, (lu, w)) in self.ln_u.iter().zip(&self.weight).enumerate() {
            let s = exp((lz + lu) * inv_alpha);
            if s > 745.0 {
                break;
            }
            let f = match kind {
                MlKind::Standard => w * exp(-s),
                MlKind::AlphaAlpha => w * s * exp(-s),
            };
            fine.add(f);
            if j % 2 == 0 {
                coarse.add(2.0 * f);
            }
        }
        let mut v = self.prefactor * fine.value();
        let mut v2 = self.prefactor * coarse.value();
        if kind == MlKind::AlphaAlpha {
            v /= z;
            v2 /= z;
        }
        // exp-sinh error squares when h halves
        let d = fabs(v - v2) / fabs(v);
        (v, d * d + 16.0 * EPS)
    }
}

/// Evaluator for `E_α`, `E_{α,α}` and `E'_α` at a fixed `α`.
///
/// Construction precomputes the Γ tables and quadrature nodes, so build one
/// per `α` and reuse it for many arguments.
#[derive(Debug, Clone)]
pub struct MittagLeffler {
    params: MlParams,
    inv_alpha: f64,
    // lnΓ(β + kα) and 1/Γ(β + kα), k = 0..TAYLOR_MAX_TERMS
    taylor_ln_gamma: [Vec<f64>; 2],
    taylor_recip_gamma: [Vec<f64>; 2],
    // 1/Γ(β − nα) and ln(Γ(1 − β + nα)/π), n = 1..=M
    asym_coeff: [Vec<f64>; 2],
    asym_ln_envelope: [Vec<f64>; 2],
    laplace: Option<LaplaceRule>,
}

impl MittagLeffler {
    pub fn new(params: MlParams) -> Result<Self> {
        let params = MlParams::new(params.alpha)?
            .with_series_radius(params.series_radius)?
            .with_asymptotic_terms(params.asymptotic_terms)?;
        let alpha = params.alpha;
        let betas = [1.0, alpha];
        let mut taylor_ln_gamma: [Vec<f64>; 2] = Default::default();
        let mut taylor_recip_gamma: [Vec<f64>; 2] = Default::default();
        let mut asym_coeff: [Vec<f64>; 2] = Default::default();
        let mut asym_ln_envelope: [Vec<f64>; 2] = Default::default();
        for (i, beta) in betas.iter().enumerate() {
            for k in 0..TAYLOR_MAX_TERMS {
                let arg = beta + k as f64 * alpha;
                taylor_ln_gamma[i].push(ln_gamma(arg));
                taylor_recip_gamma[i].push(if arg < 170.0 { recip_gamma(arg) } else { 0.0 });
            }
            for n in 1..=params.asymptotic_terms {
                let nf = n as f64;
                asym_coeff[i].push(recip_gamma(beta - nf * alpha));
                let env_arg = 1.0 - beta + nf * alpha;
                asym_ln_envelope[i].push(if env_arg > 0.0 {
                    ln_gamma(env_arg) - log(PI)
                } else {
                    -log(PI)
                });
            }
        }
        let laplace = if alpha < 1.0 {
            Some(LaplaceRule::new(alpha))
        } else {
            None
        };
        Ok(Self {
            params,
            inv_alpha: 1.0 / alpha,
            taylor_ln_gamma,
            taylor_recip_gamma,
            asym_coeff,
            asym_ln_envelope,
            laplace,
        })
    }

    /// Evaluator with default regime parameters.
    pub fn with_alpha(alpha: f64) -> Result<Self> {
        Self::new(MlParams::new(alpha)?)
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha
    }

    pub fn params(&self) -> &MlParams {
        &self.params
    }

    fn beta(&self, kind: MlKind) -> f64 {
        match kind {
            MlKind::Standard => 1.0,
            MlKind::AlphaAlpha => self.params.alpha,
        }
    }

    /// `E_α(r)`.
    pub fn e(&self, r: f64) -> MlEval {
        self.eval(MlKind::Standard, r)
    }

    /// `E_{α,α}(r)`.
    pub fn e_alpha_alpha(&self, r: f64) -> MlEval {
        self.eval(MlKind::AlphaAlpha, r)
    }

    /// `E'_α(r) = E_{α,α}(r)/α`.
    pub fn e_prime(&self, r: f64) -> MlEval {
        self.e_alpha_alpha(r).scale_by(self.inv_alpha)
    }

    /// `ln E_α(r)` for any real `r`.
    pub fn ln_e(&self, r: f64) -> f64 {
        self.e(r).ln()
    }

    /// Evaluates the requested member of the family at `r`.
    pub fn eval(&self, kind: MlKind, r: f64) -> MlEval {
        let alpha = self.params.alpha;
        if alpha == 1.0 {
            return MlEval::split(1.0, r, MlMethod::ClosedForm, EPS);
        }
        if r >= 0.0 {
            if r == 0.0 {
                return self.taylor(kind, r);
            }
            let w = pow(r, self.inv_alpha);
            if r <= self.params.series_radius && w <= POS_TAYLOR_MAX_EXPONENT {
                self.taylor(kind, r)
            } else {
                self.asymptotic_positive(kind, r, w)
            }
        } else {
            let z = -r;
            let w = pow(z, self.inv_alpha);
            if z <= self.params.series_radius && w <= NEG_TAYLOR_MAX_EXPONENT {
                self.taylor(kind, r)
            } else {
                self.asymptotic_negative(kind, z)
                    .unwrap_or_else(|| self.laplace(kind, z))
            }
        }
    }

    /// `(E_{α,β}(r) − 1/Γ(β))/r` without the cancellation of the direct
    /// difference near `r = 0`.
    pub fn reduced(&self, kind: MlKind, r: f64) -> MlEval {
        let beta = self.beta(kind);
        if self.params.alpha == 1.0 {
            if fabs(r) < 1.0 {
                return MlEval::plain(expm1(r) / r, MlMethod::ClosedForm, EPS);
            }
        } else if fabs(r) <= 1.0 {
            return self.taylor_reduced(kind, r);
        }
        let full = self.eval(kind, r);
        let c = recip_gamma(beta);
        let m = (full.mantissa - c * exp(-full.exponent)) / r;
        if full.exponent == 0.0 {
            MlEval::plain(m, full.method, full.err_estimate)
        } else {
            MlEval::split(m, full.exponent, full.method, full.err_estimate)
        }
    }

    fn taylor_term(&self, i: usize, k: usize, ln_abs_r: f64, abs_r: f64) -> f64 {
        let kf = k as f64;
        let rg = self.taylor_recip_gamma[i][k];
        let lp = kf * ln_abs_r;
        if rg != 0.0 && lp < 690.0 && lp > -690.0 {
            pow(abs_r, kf) * rg
        } else {
            exp(lp - self.taylor_ln_gamma[i][k])
        }
    }

    fn taylor(&self, kind: MlKind, r: f64) -> MlEval {
        let i = kind.index();
        if r == 0.0 {
            return MlEval::plain(self.taylor_recip_gamma[i][0], MlMethod::TaylorSeries, EPS);
        }
        self.taylor_from(kind, r, 0, 1.0)
    }

    fn taylor_reduced(&self, kind: MlKind, r: f64) -> MlEval {
        if r == 0.0 {
            let v = self.taylor_recip_gamma[kind.index()][1];
            return MlEval::plain(v, MlMethod::TaylorSeries, EPS);
        }
        self.taylor_from(kind, r, 1, 1.0 / r)
    }

    // Σ_{k ≥ start} r^k/Γ(β+kα) · factor
    fn taylor_from(&self, kind: MlKind, r: f64, start: usize, factor: f64) -> MlEval {
        let i = kind.index();
        let abs_r = fabs(r);
        let ln_abs_r = log(abs_r);
        let negative = r < 0.0;
        let mut sum = Compensated::new();
        let mut abs_sum = 0.0;
        let mut last = 0.0;
        let mut converged = false;
        for k in start..TAYLOR_MAX_TERMS {
            let mag = self.taylor_term(i, k, ln_abs_r, abs_r) * fabs(factor);
            let sign = if negative && k % 2 == 1 { -1.0 } else { 1.0 };
            let sign = if factor < 0.0 { -sign } else { sign };
            sum.add(sign * mag);
            abs_sum += mag;
            last = mag;
            if k > start && mag < TAYLOR_REL_STOP * fabs(sum.value()) {
                converged = true;
                break;
            }
        }
        let v = sum.value();
        let tail = if converged { 0.0 } else { last };
        let err = (tail + 4.0 * EPS * abs_sum) / fabs(v);
        MlEval::plain(v, MlMethod::TaylorSeries, err)
    }

    // Σ_{n=1}^{N} c_n · s_n · x^{-n} with optimal truncation; returns the
    // sum, the envelope size of the first omitted term, and whether the
    // envelope dropped below `floor` (converged).
    fn algebraic_series(&self, kind: MlKind, ln_x: f64, alternate: bool, floor: f64) -> (f64, f64) {
        let i = kind.index();
        let mut sum = Compensated::new();
        let mut prev_env = f64::INFINITY;
        let mut est = 0.0;
        let m = self.params.asymptotic_terms;
        for n in 1..=m {
            let nf = n as f64;
            let env = exp(self.asym_ln_envelope[i][n - 1] - nf * ln_x);
            if env > prev_env {
                est = env;
                break;
            }
            if env < floor {
                est = env;
                break;
            }
            let mag = self.asym_coeff[i][n - 1] * exp(-nf * ln_x);
            let sign = if alternate && n % 2 == 0 { -1.0 } else { 1.0 };
            sum.add(sign * mag);
            prev_env = env;
            est = env;
        }
        (sum.value(), est)
    }

    fn asymptotic_negative(&self, kind: MlKind, z: f64) -> Option<MlEval> {
        // E(−z) = −Σ (−z)^{-n} c_n = Σ (−1)^{n+1} c_n z^{-n}
        let lz = log(z);
        let lead = exp(self.asym_ln_envelope[kind.index()][0] - lz);
        let (v, est) = self.algebraic_series(kind, lz, true, 1e-18 * lead);
        if !(v > 0.0) || est > ASYMPTOTIC_ACCEPT * v {
            return None;
        }
        Some(MlEval::plain(
            v,
            MlMethod::AsymptoticNegative,
            est / v + 4.0 * EPS,
        ))
    }

    fn asymptotic_positive(&self, kind: MlKind, r: f64, w: f64) -> MlEval {
        let beta = self.beta(kind);
        let lr = log(r);
        let lead = self.inv_alpha * exp((1.0 - beta) * self.inv_alpha * lr);
        let damp = exp(-w);
        let (corr, est) = if damp == 0.0 {
            (0.0, 0.0)
        } else {
            self.algebraic_series(kind, lr, false, 1e-18 * lead / damp)
        };
        let mantissa = lead - damp * corr;
        let err = damp * est / mantissa + 4.0 * EPS;
        MlEval::split(mantissa, w, MlMethod::AsymptoticPositive, err)
    }

    fn laplace(&self, kind: MlKind, z: f64) -> MlEval {
        let rule = self
            .laplace
            .as_ref()
            .expect("Laplace rule exists whenever alpha < 1");
        let (v, err) = rule.eval(kind, self.inv_alpha, z);
        MlEval::plain(v, MlMethod::LaplaceIntegral, err)
    }
}

fn evaluator(alpha: f64, r: f64) -> Result<MittagLeffler> {
    if !r.is_finite() {
        return Err(domain!("argument r = {r} must be finite"));
    }
    MittagLeffler::with_alpha(alpha)
}

/// `E_α(r)` for `α ∈ (0, 1]`.
pub fn ml_e(alpha: f64, r: f64) -> Result<MlEval> {
    Ok(evaluator(alpha, r)?.e(r))
}

/// `E_{α,α}(r)` for `α ∈ (0, 1]`.
pub fn ml_e_alpha_alpha(alpha: f64, r: f64) -> Result<MlEval> {
    Ok(evaluator(alpha, r)?.e_alpha_alpha(r))
}

/// `E'_α(r) = E_{α,α}(r)/α`.
pub fn ml_e_prime(alpha: f64, r: f64) -> Result<MlEval> {
    Ok(evaluator(alpha, r)?.e_prime(r))
}

/// `ln E_α(r)` for `r > 0`, valid far beyond the overflow of `E_α` itself.
pub fn ml_log_e(alpha: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain!("ml_log_e needs r > 0 (got {r}); use ml_e"));
    }
    Ok(evaluator(alpha, r)?.ln_e(r))
}
