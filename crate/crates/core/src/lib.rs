//! Numerical toolkit for the time-fractional reaction-diffusion equation
//! `∂ᵅ_t u = d·u_xx + a·u` with a Dirac initial datum.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`special`]: Γ, erf/erfc and the Mittag-Leffler functions `E_α`,
//!   `E_{α,α}` and `E'_α` over the whole real line, with overflow-safe
//!   log-domain results.
//! - [`caputo`]: L1 product-integration Caputo derivative, the
//!   `E_α(λt^α)` eigenrelation and Volterra residuals, and the `Ξ(t)`
//!   kernel integral.
//! - [`solution`]: the 1-D fundamental solution, both as a Leibniz-bracketed
//!   alternating series of half-period integrals and as a direct Fourier
//!   quadrature, plus the `α = 1` Gaussian and the spectral tail ratio.
//! - [`bounds`]: machine checks of the Mittag-Leffler and coefficient
//!   inequalities and the front lower bound along `x = c·t^β`.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod caputo;
mod error;
pub(crate) mod math;
pub mod quadrature;
pub mod solution;
pub mod special;

pub use error::{Error, Result};
