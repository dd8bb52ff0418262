//! Compensated accumulation and Dirichlet-series partial sums.
//!
//! Sums run in ascending index order on a single thread, so identical
//! inputs give bitwise-identical results regardless of the caller's
//! thread count.

use crate::error::Error;
use crate::table::FunctionTable;
use crate::{Complex, Result};

/// Neumaier (Kahan–Babuška) compensated accumulator.
#[derive(Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    c: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        NeumaierSum { sum: 0.0, c: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if libm::fabs(self.sum) >= libm::fabs(v) {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Componentwise-compensated complex accumulator.
#[derive(Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex {
        Complex::new(self.re.value(), self.im.value())
    }
}

/// base^(−s) for base > 0, via exp(−σ·log base)·e^(−it·log base).
#[inline]
pub fn recip_pow(base: f64, s: Complex) -> Complex {
    let ln = libm::log(base);
    Complex::from_polar(libm::exp(-s.re * ln), -s.im * ln)
}

/// A coefficient sequence a(1), a(2), … available up to `limit`.
pub trait Coefficients {
    fn limit(&self) -> u64;
    fn value(&self, n: u64) -> f64;
}

impl Coefficients for FunctionTable {
    fn limit(&self) -> u64 {
        FunctionTable::limit(self)
    }
    fn value(&self, n: u64) -> f64 {
        self.get(n).unwrap_or(0) as f64
    }
}

/// The constant sequence 1.
pub struct Ones(pub u64);
impl Coefficients for Ones {
    fn limit(&self) -> u64 {
        self.0
    }
    fn value(&self, _n: u64) -> f64 {
        1.0
    }
}

/// (−1)^n.
pub struct Alternating(pub u64);
impl Coefficients for Alternating {
    fn limit(&self) -> u64 {
        self.0
    }
    fn value(&self, n: u64) -> f64 {
        if n % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Ramanujan sums c_q(n) for a fixed prime q.
pub struct RamanujanCoefficients {
    pub q: u64,
    pub limit: u64,
}
impl Coefficients for RamanujanCoefficients {
    fn limit(&self) -> u64 {
        self.limit
    }
    fn value(&self, n: u64) -> f64 {
        if n % self.q == 0 {
            (self.q - 1) as f64
        } else {
            -1.0
        }
    }
}

/// Σ_{n≤X} f(n)/n^s with compensated accumulation; zero coefficients are
/// skipped, so sparse sequences cost only their support.
pub fn partial_sum(f: &impl Coefficients, s: Complex, x: u64) -> Result<Complex> {
    if x == 0 {
        return Err(Error::InvalidArgument("X must be positive".into()));
    }
    if f.limit() < x {
        return Err(Error::InvalidArgument(alloc::format!(
            "coefficient source covers only 1..={}, requested X = {x}",
            f.limit()
        )));
    }
    let mut acc = ComplexSum::new();
    for n in 1..=x {
        let v = f.value(n);
        if v != 0.0 {
            acc.add(recip_pow(n as f64, s) * v);
        }
    }
    Ok(acc.value())
}
