//! Euler–Maclaurin evaluation of ζ(s), Hurwitz-style asymptotic tails,
//! and accelerated alternating tails.
//!
//! The asymptotic tail H(s, a) ≈ Σ_{k≥0} (k+a)^{−s} is the single
//! primitive: ζ(s) = Σ_{n<N} n^{−s} + H(s, N), and alternating tails
//! split into two Hurwitz tails at half-integer offsets. Truncation is
//! driven to ~1e−15 relative for σ > 0 once a ≳ 2|Im s|, which the
//! callers guarantee; the desk-scale cap is |Im s| ≤ 1e6.

use crate::error::Error;
use crate::sum::{recip_pow, ComplexSum};
use crate::{Complex, Result};

/// Euler–Mascheroni constant (0.57721566490153286061… rounded to f64).
pub const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// B_{2k} for k = 1..=12.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Asymptotic Hurwitz tail H(s, a) = Σ_{k≥0} (k+a)^{−s}, valid for σ > 1
/// unconditionally and for σ > 0 as the analytic continuation used by
/// [`zeta_em`]; needs a ≫ |Im s| to converge.
pub fn hurwitz_tail(s: Complex, a: f64) -> Complex {
    debug_assert!(a >= 10.0 && a >= 1.5 * s.im.abs(), "Hurwitz tail called below its range");
    let a_pow = recip_pow(a, s); // a^{-s}
    let mut acc = a_pow * a / (s - 1.0) + a_pow * 0.5;
    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k−2) · a^{1−s−2k}
    let mut pochhammer = s;
    let mut factorial = 2.0;
    let mut a_power = a_pow / a; // a^{-s-1}
    let inv_a2 = 1.0 / (a * a);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = pochhammer * (b / factorial) * a_power;
        acc += term;
        if term.norm_sqr() <= acc.norm_sqr() * 1e-34 {
            break;
        }
        let j = 2.0 * (k as f64 + 1.0);
        pochhammer = pochhammer * (s + (j - 1.0)) * (s + j);
        factorial *= (j + 1.0) * (j + 2.0);
        a_power *= inv_a2;
    }
    acc
}

/// ζ(s) for σ > 0 (s away from the pole at 1), by direct summation to
/// N ≈ max(2|Im s|, 50) plus the Euler–Maclaurin tail.
pub fn zeta_em(s: Complex) -> Result<Complex> {
    if s.re <= 0.0 {
        return Err(Error::Domain(alloc::format!("zeta evaluator needs Re(s) > 0, got {s}")));
    }
    if (s - 1.0).norm() < 1e-8 {
        return Err(Error::Domain("s is at the pole of zeta".into()));
    }
    if s.im.abs() > 1e6 {
        return Err(Error::Domain(alloc::format!(
            "|Im s| = {} exceeds the desk-scale cap 1e6",
            s.im.abs()
        )));
    }
    let n = libm::fmax(2.0 * s.im.abs(), 50.0) as u64;
    let mut acc = ComplexSum::new();
    for k in 1..n {
        acc.add(recip_pow(k as f64, s));
    }
    Ok(acc.value() + hurwitz_tail(s, n as f64))
}

/// ζ(x) on the real axis, x > 1.
pub fn zeta_real(x: f64) -> Result<f64> {
    if x <= 1.0 {
        return Err(Error::Domain(alloc::format!("real zeta needs x > 1, got {x}")));
    }
    Ok(zeta_em(Complex::new(x, 0.0))?.re)
}

/// φ(s) = (2^{1−s} − 1) ζ(s) = Σ (−1)^n/n^s, by the closed form.
pub fn phi_closed(s: Complex) -> Result<Complex> {
    Ok((recip_pow(2.0, s) * 2.0 - 1.0) * zeta_em(s)?)
}

/// Alternating tail Σ_{m≥m0} (−1)^m m^{−s}, summed in closed form as a
/// difference of two Hurwitz tails over even and odd indices.
pub fn alternating_tail(s: Complex, m0: u64) -> Complex {
    // even m = 2k, k ≥ ceil(m0/2); odd m = 2k+1, k ≥ ceil((m0−1)/2)
    let k_even = m0.div_ceil(2);
    let k_odd = (m0 - 1).div_ceil(2);
    let half = recip_pow(2.0, s); // 2^{-s}
    half * (hurwitz_tail(s, k_even as f64) - hurwitz_tail(s, k_odd as f64 + 0.5))
}

/// Cutoff from which [`alternating_tail`] and [`hurwitz_tail`] are safe.
pub fn safe_tail_cutoff(s: Complex) -> u64 {
    libm::fmax(4.0 * s.im.abs(), 100.0) as u64
}
