//! Caputo derivative `∂ᵅ_t u(t) = (1/Γ(1−α)) ∫₀ᵗ u̇(τ)(t−τ)^{−α} dτ` of
//! sampled functions, and consistency checks built on it.

use alloc::vec::Vec;

use crate::bounds::BoundReport;
use crate::error::{domain, Result};
use crate::math::{fabs, log, pow, sin, Compensated, PI};
use crate::quadrature::GaussLegendre;
use crate::special::{gamma_fn, recip_gamma, MittagLeffler};

const VOLTERRA_ORDER: usize = 16;

/// Uniform grid `t_j = j·t_end/n`, `j = 0..=n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    n: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, n: usize) -> Result<Self> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(domain!("t_end = {t_end} must be finite and positive"));
        }
        if n < 2 {
            return Err(domain!(
                "a time grid needs at least 2 subintervals (got {n})"
            ));
        }
        Ok(Self { t_end, n })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> f64 {
        self.t_end / self.n as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        if j == self.n {
            self.t_end
        } else {
            j as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n).map(|j| self.node(j)).collect()
    }
}

/// A Caputo derivative value, optionally with a measured convergence order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaputoResult {
    pub value: f64,
    pub order_estimate: Option<f64>,
}

fn check_alpha_open(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain!(
            "the Caputo operator here needs alpha in (0, 1), got {alpha}"
        ));
    }
    Ok(())
}

// b_m = (m+1)^{1−α} − m^{1−α}, m = 0..n
fn l1_weights(n: usize, alpha: f64) -> Vec<f64> {
    let p = 1.0 - alpha;
    (0..n)
        .map(|m| {
            let mf = m as f64;
            pow(mf + 1.0, p) - pow(mf, p)
        })
        .collect()
}

fn l1_at(samples: &[f64], weights: &[f64], scale: f64, n: usize) -> f64 {
    let mut acc = Compensated::new();
    for j in 0..n {
        acc.add(weights[n - j - 1] * (samples[j + 1] - samples[j]));
    }
    scale * acc.value()
}

/// L1 product-integration value of `∂ᵅ_t u` at `t_index`, from samples on `grid`.
pub fn caputo_derivative(
    samples: &[f64],
    grid: &TimeGrid,
    alpha: f64,
    t_index: usize,
) -> Result<CaputoResult> {
    check_alpha_open(alpha)?;
    if t_index == 0 {
        return Err(domain!(
            "the Caputo derivative is not defined at the initial node"
        ));
    }
    if t_index > grid.n() || samples.len() <= t_index {
        return Err(domain!(
            "t_index {t_index} outside the sampled grid ({} samples, n = {})",
            samples.len(),
            grid.n()
        ));
    }
    let weights = l1_weights(t_index, alpha);
    let scale = pow(grid.step(), -alpha) * recip_gamma(2.0 - alpha);
    Ok(CaputoResult {
        value: l1_at(samples, &weights, scale, t_index),
        order_estimate: None,
    })
}

/// `∂ᵅ_t f(t_end)` on grids `n` and `2n`; the order is measured against `exact`.
pub fn caputo_order<F: Fn(f64) -> f64>(
    f: F,
    exact: f64,
    alpha: f64,
    t_end: f64,
    n: usize,
) -> Result<CaputoResult> {
    let coarse = TimeGrid::new(t_end, n)?;
    let fine = TimeGrid::new(t_end, 2 * n)?;
    let sample = |g: &TimeGrid| g.nodes().into_iter().map(&f).collect::<Vec<_>>();
    let dc = caputo_derivative(&sample(&coarse), &coarse, alpha, n)?.value;
    let df = caputo_derivative(&sample(&fine), &fine, alpha, 2 * n)?.value;
    let order = log(fabs(dc - exact) / fabs(df - exact)) / log(2.0);
    Ok(CaputoResult {
        value: df,
        order_estimate: if order.is_finite() { Some(order) } else { None },
    })
}

/// Relative residual of `∂ᵅ_t E_α(λt^α) = λE_α(λt^α)` at nodes `1..=n`.
///
/// Entry `j − 1` belongs to node `t_j`. Near `t = 0` the solution has a
/// `t^α` singularity and the L1 scheme is less accurate there.
pub fn eigenrelation_residual(alpha: f64, lambda: f64, grid: &TimeGrid) -> Result<Vec<f64>> {
    check_alpha_open(alpha)?;
    if grid.n() < 64 {
        return Err(domain!(
            "eigenrelation check needs n >= 64 (got {})",
            grid.n()
        ));
    }
    let ml = MittagLeffler::with_alpha(alpha)?;
    let samples: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&t| ml.e(lambda * pow(t, alpha)).value)
        .collect();
    let weights = l1_weights(grid.n(), alpha);
    let scale = pow(grid.step(), -alpha) * recip_gamma(2.0 - alpha);
    Ok((1..=grid.n())
        .map(|j| {
            let d = l1_at(&samples, &weights, scale, j);
            let target = lambda * samples[j];
            if target == 0.0 {
                fabs(d)
            } else {
                fabs(d - target) / fabs(target)
            }
        })
        .collect())
}

/// `|E_α(λt^α) − 1 − (λ/Γ(α)) ∫₀ᵗ E_α(λτ^α)(t−τ)^{α−1} dτ|`.
///
/// The kernel singularity is removed by `τ = t − s^{1/α}`, which turns the
/// integral into `(1/α) ∫₀^{t^α} E_α(λ(t − s^{1/α})^α) ds`; a further
/// `s = t^α(1 − (1−v)²)` smooths the `τ^α` behaviour at `s = t^α`.
/// `n_quad` Gauss-Legendre nodes are used in total.
pub fn volterra_residual(alpha: f64, lambda: f64, t: f64, n_quad: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(domain!("alpha = {alpha} must lie in (0, 1]"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain!("t = {t} must be finite and positive"));
    }
    if n_quad < 64 {
        return Err(domain!("n_quad = {n_quad} must be at least 64"));
    }
    if !lambda.is_finite() {
        return Err(domain!("lambda = {lambda} must be finite"));
    }
    let ml = MittagLeffler::with_alpha(alpha)?;
    let ta = pow(t, alpha);
    let inv = 1.0 / alpha;
    let gl = GaussLegendre::new(VOLTERRA_ORDER);
    let panels = n_quad / VOLTERRA_ORDER;
    let integral = gl.integrate_composite(0.0, 1.0, panels, |v| {
        let w = 1.0 - v;
        let s = ta * (1.0 - w * w);
        let tau = (t - pow(s, inv)).max(0.0);
        ml.e(lambda * pow(tau, alpha)).value * 2.0 * ta * w
    }) * inv;
    let lhs = ml.e(lambda * ta).value - 1.0;
    Ok(fabs(lhs - lambda * recip_gamma(alpha) * integral))
}

/// `Ξ(t) = ∫₀ᵗ dτ / (τ^α (t−τ)^{1−α})` by quadrature, checked against
/// `B(1−α, α) = π/sin(πα)`.
///
/// The margin is `1e-8·|rhs| − |lhs − rhs|`. The context also records the
/// closed form `4^{α−1}√π Γ(1−α) t^{2−2α}/Γ(3/2−α)`, which grows with `t`
/// and so cannot equal the `t`-independent integral.
pub fn xi_check(alpha: f64, t: f64) -> Result<BoundReport> {
    check_alpha_open(alpha)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain!("t = {t} must be finite and positive"));
    }
    let gl = GaussLegendre::new(32);
    let half = 0.5 * t;
    // [0, t/2]: τ = s^{1/(1−α)} absorbs τ^{−α}
    let p = 1.0 / (1.0 - alpha);
    let left = gl.integrate_composite(0.0, pow(half, 1.0 - alpha), 8, |s| {
        let tau = pow(s, p);
        p * pow(t - tau, alpha - 1.0)
    });
    // [t/2, t]: t − τ = s^{1/α} absorbs (t−τ)^{α−1}
    let q = 1.0 / alpha;
    let right = gl.integrate_composite(0.0, pow(half, alpha), 8, |s| {
        let tau = t - pow(s, q);
        q * pow(tau, -alpha)
    });
    let lhs = left + right;
    let rhs = PI / sin(PI * alpha);
    let printed = pow(4.0, alpha - 1.0)
        * crate::math::sqrt(PI)
        * gamma_fn(1.0 - alpha)?
        * pow(t, 2.0 - 2.0 * alpha)
        * recip_gamma(1.5 - alpha);
    let margin = 1e-8 * fabs(rhs) - fabs(lhs - rhs);
    Ok(BoundReport::new(
        lhs,
        rhs,
        margin,
        0.0,
        alloc::vec![("alpha", alpha), ("t", t), ("printed_closed_form", printed)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_nodes() {
        let g = TimeGrid::new(2.0, 4).unwrap();
        assert_eq!(g.nodes(), alloc::vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(TimeGrid::new(1.0, 1).is_err());
        assert!(TimeGrid::new(0.0, 4).is_err());
    }

    #[test]
    fn constant_has_zero_derivative() {
        let g = TimeGrid::new(1.0, 16).unwrap();
        let u = alloc::vec![1.0; 17];
        for j in 1..=16 {
            assert_eq!(caputo_derivative(&u, &g, 0.4, j).unwrap().value, 0.0);
        }
    }

    #[test]
    fn linear_function_is_exact() {
        // L1 is exact for piecewise-linear u
        let g = TimeGrid::new(1.0, 32).unwrap();
        let u = g.nodes();
        let d = caputo_derivative(&u, &g, 0.5, 32).unwrap().value;
        assert!(fabs(d - core::f64::consts::FRAC_2_SQRT_PI) < 1e-13);
    }

    #[test]
    fn errors() {
        let g = TimeGrid::new(1.0, 8).unwrap();
        let u = g.nodes();
        assert!(caputo_derivative(&u, &g, 0.5, 0).is_err());
        assert!(caputo_derivative(&u, &g, 1.0, 1).is_err());
        assert!(caputo_derivative(&u, &g, 0.5, 9).is_err());
        assert!(volterra_residual(0.5, 1.0, 1.0, 32).is_err());
    }

    #[test]
    fn order_for_quadratic() {
        let alpha = 0.6;
        let exact = 2.0 * recip_gamma(3.0 - alpha);
        let r = caputo_order(|t| t * t, exact, alpha, 1.0, 256).unwrap();
        let order = r.order_estimate.unwrap();
        assert!(fabs(order - (2.0 - alpha)) < 0.2, "order {order}");
    }

    #[test]
    fn eigenrelation_zero_lambda() {
        let g = TimeGrid::new(1.0, 64).unwrap();
        assert!(eigenrelation_residual(0.5, 0.0, &g)
            .unwrap()
            .iter()
            .all(|&r| r == 0.0));
    }

    #[test]
    fn volterra_trivial_cases() {
        assert_eq!(volterra_residual(0.5, 0.0, 1.0, 64).unwrap(), 0.0);
        assert!(volterra_residual(1.0, 1.0, 1.0, 64).unwrap() < 1e-13);
    }

    #[test]
    fn xi_is_beta_value() {
        let r = xi_check(0.5, 1.0).unwrap();
        assert!(r.satisfied);
        assert!(fabs(r.lhs - PI) < 1e-10);
        let printed = r
            .context
            .iter()
            .find(|(k, _)| *k == "printed_closed_form")
            .unwrap()
            .1;
        assert!(fabs(printed - PI / 2.0) < 1e-12);
    }
}
