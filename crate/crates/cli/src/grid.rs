//! Evaluation grids.

use anyhow::{bail, Result};

/// `steps` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    check(lo, hi, steps)?;
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let h = (hi - lo) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + h * i as f64
            }
        })
        .collect())
}

/// `steps` log-spaced points from `lo` to `hi` inclusive, `lo > 0`.
pub fn logspace(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    check(lo, hi, steps)?;
    if !(lo > 0.0) {
        bail!("log-spaced grid needs a positive lower end (got {lo})");
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok(linspace(a, b, steps)?
        .into_iter()
        .enumerate()
        .map(|(i, v)| match i {
            0 => lo,
            _ if i + 1 == steps => hi,
            _ => v.exp(),
        })
        .collect())
}

fn check(lo: f64, hi: f64, steps: usize) -> Result<()> {
    if steps == 0 {
        bail!("grid needs at least one point");
    }
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        bail!("grid bounds must be finite with min <= max (got {lo}, {hi})");
    }
    if steps > 1 && hi == lo {
        bail!("grid with {steps} points needs min < max");
    }
    Ok(())
}
