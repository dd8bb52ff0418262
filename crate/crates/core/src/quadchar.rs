//! Real primitive quadratic characters χ mod D attached to the fundamental
//! discriminant −D, their running sums, the A₋₁/A₀/A₁ factorization, the
//! weighted divisor-decomposition identity over C-divisors, and direct
//! evaluation of L(1,χ) with a Pólya–Vinogradov tail certificate.

use alloc::vec::Vec;

use crate::error::Error;
use crate::kronecker::{is_fundamental, kronecker};
use crate::report::{anchor, CheckReport};
use crate::sieve::SieveTable;
use crate::sum::NeumaierSum;
use crate::Result;

/// Largest supported modulus (one period of values is cached).
pub const MAX_MODULUS: u64 = 100_000_000;

/// χ(n) = (−D|n) for a fundamental discriminant −D, with one period of
/// values and running sums cached; χ is periodic mod D and every full
/// period sums to zero, so all queries are O(1) for unbounded n.
#[derive(Debug)]
pub struct QuadraticCharacter {
    d: u64,
    values: Vec<i8>,  // χ(r) for r in 0..D
    prefix: Vec<i64>, // S_D(r) for r in 0..=D
}

/// The unique factorization n = a·b·m with every prime of a in A₁
/// (χ(p) = 1), of b in A₀ (χ(p) = 0), of m in A₋₁ (χ(p) = −1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbmFactorization {
    pub a: u64,
    pub b: u64,
    pub m: u64,
    /// c = a·b, the part supported on primes with χ(p) ≥ 0.
    pub c: u64,
}

/// Which ν the divisor-decomposition weight 2^ν reads: the A₁-part of
/// the divisor (the identity that holds) or the whole divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(not(test), allow(dead_code))]
pub(crate) enum NuReading {
    APart,
    FullDivisor,
}

impl QuadraticCharacter {
    /// Build χ mod D for the fundamental discriminant −D.
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 || d > MAX_MODULUS {
            return Err(Error::InvalidArgument(alloc::format!(
                "modulus {d} outside 1..={MAX_MODULUS}"
            )));
        }
        let minus_d = -(d as i64);
        if !is_fundamental(minus_d)? {
            return Err(Error::InvalidArgument(alloc::format!(
                "-{d} is not a fundamental discriminant; the character would not be primitive"
            )));
        }
        let mut values = Vec::with_capacity(d as usize);
        for r in 0..d {
            values.push(kronecker(minus_d, r as i64) as i8);
        }
        // prefix[r] = S_D(r) for r in 0..D; χ(D) = χ(0) = 0, so each full
        // period contributes prefix[D−1], which must vanish.
        let mut prefix = Vec::with_capacity(d as usize);
        prefix.push(0i64);
        for r in 1..d as usize {
            prefix.push(prefix[r - 1] + values[r] as i64);
        }
        if *prefix.last().unwrap() + values[0] as i64 != 0 {
            return Err(Error::InvariantViolation(alloc::format!(
                "character mod {d}: full-period sum is not 0"
            )));
        }
        Ok(QuadraticCharacter { d, values, prefix })
    }

    /// The modulus D (the discriminant is −D).
    pub fn modulus(&self) -> u64 {
        self.d
    }

    /// Whether D ≡ 0 (mod 4); equivalently D is even, since −D is fundamental.
    pub fn has_even_modulus(&self) -> bool {
        self.d % 4 == 0
    }

    pub fn chi(&self, n: u64) -> i64 {
        self.values[(n % self.d) as usize] as i64
    }

    /// Exact running sum S_D(x) = Σ_{n≤x} χ(n).
    pub fn char_sum(&self, x: u64) -> i64 {
        // Full periods vanish, so only the partial period contributes.
        self.prefix[(x % self.d) as usize]
    }

    /// max_{x≤X} |S_D(x)| against the Pólya–Vinogradov bound √D·log D.
    pub fn polya_vinogradov_check(&self, x_max: u64) -> Result<CheckReport> {
        if x_max == 0 {
            return Err(Error::InvalidArgument("X must be positive".into()));
        }
        // S_D has period D and vanishes at multiples of D, so scanning one
        // period (less its endpoint) sees every value.
        let scan_to = x_max.min(self.d - 1);
        let mut max_abs = 0i64;
        let mut arg_max = 0u64;
        for x in 1..=scan_to {
            let s = self.prefix[x as usize].abs();
            if s > max_abs {
                max_abs = s;
                arg_max = x;
            }
        }
        let d = self.d as f64;
        let bound = libm::sqrt(d) * libm::log(d);
        let max = max_abs as f64;
        Ok(CheckReport::asserted(
            alloc::format!("polya-vinogradov[D={}]", self.d),
            anchor::LEMMA2,
            max,
            bound,
            bound - max,
            0.0,
            max < bound,
        )
        .with_param("D", self.d)
        .with_param("X", x_max)
        .with_param("argmax", arg_max))
    }

    /// Split n = a·b·m by the character class of each prime.
    pub fn classify_abm(&self, t: &SieveTable, n: u64) -> Result<AbmFactorization> {
        let mut a = 1u64;
        let mut b = 1u64;
        let mut m = 1u64;
        for (p, e) in t.factorize(n)? {
            let mut pe = 1u64;
            for _ in 0..e {
                pe = pe.checked_mul(p).ok_or(Error::Overflow("abm split"))?;
            }
            match self.chi(p) {
                1 => a *= pe,
                0 => b *= pe,
                _ => m *= pe,
            }
        }
        Ok(AbmFactorization { a, b, m, c: a * b })
    }

    /// Membership in C = {ab : a ∈ A₁, b ∈ A₀}: no prime with χ(p) = −1.
    pub fn in_c(&self, t: &SieveTable, n: u64) -> Result<bool> {
        Ok(self.classify_abm(t, n)?.m == 1)
    }

    /// 1*χ(n) = Σ_{d|n} χ(d), via multiplicativity over prime powers.
    pub fn one_star_chi(&self, t: &SieveTable, n: u64) -> Result<i64> {
        let mut acc = 1i64;
        for (p, e) in t.factorize(n)? {
            let factor = match self.chi(p) {
                1 => e as i64 + 1,
                0 => 1,
                _ => i64::from(e % 2 == 0),
            };
            acc = acc.checked_mul(factor).ok_or(Error::Overflow("1*chi"))?;
        }
        Ok(acc)
    }

    pub(crate) fn eq1_rhs(&self, t: &SieveTable, n: u64, reading: NuReading) -> Result<i64> {
        let parts = self.classify_abm(t, n)?;
        let mut rhs = 0i64;
        for cp in t.divisors(parts.c)? {
            let lam = t.liouville_odd(cp)?;
            if lam == 0 {
                continue;
            }
            let nu = match reading {
                NuReading::APart => self.classify_a_nu(t, cp)?,
                NuReading::FullDivisor => t.nu(cp)?,
            };
            let weight = 1i64.checked_shl(nu).ok_or(Error::Overflow("2^nu"))?;
            let term = weight
                .checked_mul(lam)
                .and_then(|w| w.checked_mul(self.one_star_chi(t, n / cp).ok()?))
                .ok_or(Error::Overflow("eq1 term"))?;
            rhs = rhs.checked_add(term).ok_or(Error::Overflow("eq1 sum"))?;
        }
        Ok(rhs)
    }

    /// ν of the A₁-part of n.
    fn classify_a_nu(&self, t: &SieveTable, n: u64) -> Result<u32> {
        let mut nu = 0u32;
        for (p, _) in t.factorize(n)? {
            if self.chi(p) == 1 {
                nu += 1;
            }
        }
        Ok(nu)
    }

    /// Exact check of the divisor decomposition
    /// 1*λ_odd(n) = Σ_{c'|c} 2^{ν(a')} λ_odd(c') · 1*χ(n/c'),
    /// where c is the C-part of n and a' the A₁-part of c'. Requires even D.
    pub fn check_eq1(&self, t: &SieveTable, n: u64) -> Result<CheckReport> {
        if !self.has_even_modulus() {
            return Err(Error::InvalidArgument(alloc::format!(
                "the divisor decomposition needs 2 in A_0, i.e. even D; D = {}",
                self.d
            )));
        }
        let lhs = t.one_star_lambda_odd(n)?;
        let rhs = self.eq1_rhs(t, n, NuReading::APart)?;
        let diff = (lhs - rhs).unsigned_abs() as f64;
        Ok(CheckReport::asserted(
            alloc::format!("eq1[D={},n={}]", self.d, n),
            anchor::EQ1,
            lhs,
            rhs,
            -diff,
            0.0,
            lhs == rhs,
        )
        .with_param("D", self.d)
        .with_param("n", n))
    }

    /// Partial sum Σ_{n≤X} χ(n)/n together with a Pólya–Vinogradov tail
    /// certificate √D·log D / X; the true L(1,χ) lies within value ± tail.
    pub fn l_one(&self, x: u64) -> Result<(f64, f64)> {
        if x < self.d {
            return Err(Error::InvalidArgument(alloc::format!(
                "X = {x} < D = {}; the tail certificate needs X >= D",
                self.d
            )));
        }
        let mut acc = NeumaierSum::new();
        for n in 1..=x {
            let v = self.values[(n % self.d) as usize];
            if v != 0 {
                acc.add(v as f64 / n as f64);
            }
        }
        let d = self.d as f64;
        let tail = libm::sqrt(d) * libm::log(d) / x as f64;
        Ok((acc.value(), tail))
    }
}
