//! Thin wrappers over `libm` plus compensated summation.

pub(crate) use libm::{ceil, cos, cosh, exp, expm1, fabs, fma, log, log1p, pow, sin, sinh, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
pub(crate) const EPS: f64 = f64::EPSILON;
// π − PI
pub(crate) const PI_LO: f64 = 1.2246467991473532e-16;

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub(crate) fn new(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    pub(crate) fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub(crate) fn add(self, o: Dd) -> Dd {
        let s = self.hi + o.hi;
        let bb = s - self.hi;
        let e = (self.hi - (s - bb)) + (o.hi - bb);
        Dd::new(s, e + self.lo + o.lo)
    }

    pub(crate) fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub(crate) fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = fma(self.hi, o.hi, -p);
        Dd::new(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub(crate) fn div_f64(self, d: f64) -> Dd {
        let q = self.hi / d;
        let r = fma(-q, d, self.hi) + self.lo;
        Dd::new(q, r / d)
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if fabs(self.sum) >= fabs(x) {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
