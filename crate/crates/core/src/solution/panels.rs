//! Panel layout and summation for integrands `E_α((c − κξ²)T)·cos(ωξ)`.
//!
//! Panel widths come from a bound on the logarithmic derivative of the
//! integrand, so the layout depends only on the parameters.

use crate::math::{ceil, cos, fabs, pow, Compensated, Dd};
use crate::quadrature::GaussLegendre;
use crate::special::MittagLeffler;

// largest change of ln|integrand| allowed across one panel
const LOG_STEP: f64 = 8.0;

#[derive(Debug, Clone)]
pub(crate) struct Integrand<'a> {
    ml: &'a MittagLeffler,
    c: f64,
    kappa: f64,
    t_alpha: f64,
    omega: f64,
    /// All values are returned relative to `exp(log_scale)`.
    pub log_scale: f64,
    rho_cap: f64,
}

impl<'a> Integrand<'a> {
    pub(crate) fn new(ml: &'a MittagLeffler, c: f64, kappa: f64, t_alpha: f64, omega: f64) -> Self {
        let top_arg = c * t_alpha;
        let top = ml.e(top_arg);
        let shift = top.exponent();
        let rho = ml.e_prime(top_arg).scaled(shift) / top.scaled(shift);
        Self {
            ml,
            c,
            kappa,
            t_alpha,
            omega,
            log_scale: top.ln(),
            rho_cap: rho.max(1.2),
        }
    }

    pub(crate) fn argument(&self, xi: f64) -> f64 {
        (self.c - self.kappa * xi * xi) * self.t_alpha
    }

    /// `E_α` factor at `center + s` times `cos(ω·s)`, where `center` is a
    /// maximum of `±cos(ω·ξ)`.
    ///
    /// The argument is formed in double-double and its low part is applied
    /// through `E'/E`, which near the peak is `w/(αr)` to within `e^{-w}`.
    pub(crate) fn eval_local(&self, center: Dd, s: f64) -> (f64, f64) {
        let xi = center.add(Dd::from(s));
        let r = Dd::from(self.c)
            .add(xi.mul(xi).mul(Dd::from(self.kappa)).neg())
            .mul(Dd::from(self.t_alpha));
        let ev = self.ml.e(r.hi);
        let mut e = ev.scaled(self.log_scale);
        if r.hi > 0.0 {
            let alpha = self.ml.alpha();
            let rho = pow(r.hi, 1.0 / alpha - 1.0) / alpha;
            e += e * rho * r.lo;
        }
        (e * cos(self.omega * s), ev.err_estimate)
    }

    // bound on |d/dξ ln f| over [lo, hi]
    fn log_slope(&self, lo: f64, hi: f64) -> f64 {
        let r_lo = self.argument(lo);
        let rho = if r_lo >= 0.0 {
            self.rho_cap
        } else {
            self.rho_cap.min(2.0 / fabs(r_lo))
        };
        self.omega + 2.0 * self.kappa * hi * self.t_alpha * rho
    }

    /// Number of equal panels for `[lo, hi]`.
    pub(crate) fn panels(&self, lo: f64, hi: f64) -> usize {
        let n = ceil((hi - lo) * self.log_slope(lo, hi) / LOG_STEP);
        if n >= 1.0 {
            n as usize
        } else {
            1
        }
    }

    /// Width of the next panel starting at `xi`, at most `cap`.
    pub(crate) fn step(&self, xi: f64, cap: f64) -> f64 {
        cap.min(LOG_STEP / self.log_slope(xi, xi + cap))
    }
}

/// Running panel sum with the bookkeeping for a rounding floor.
#[derive(Debug, Clone, Default)]
pub(crate) struct PanelSum {
    value: Compensated,
    /// `Σ |w·f|`
    pub abs: f64,
    /// `Σ |w·f|·(relative error of f)`
    pub err: f64,
}

impl PanelSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add_panel<F: FnMut(f64) -> (f64, f64)>(
        &mut self,
        gl: &GaussLegendre,
        lo: f64,
        hi: f64,
        mut f: F,
    ) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = Compensated::new();
        for (x, w) in gl.nodes().iter().zip(gl.weights()) {
            let (v, err) = f(mid + half * x);
            let wv = w * half * v;
            acc.add(wv);
            self.abs += fabs(wv);
            self.err += fabs(wv) * err;
        }
        self.value.add(acc.value());
    }

    pub(crate) fn value(&self) -> f64 {
        self.value.value()
    }
}
