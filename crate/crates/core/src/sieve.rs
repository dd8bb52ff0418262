//! Smallest-prime-factor sieve and the multiplicative functions built on it.
//!
//! One `O(N)` linear sieve yields `O(log n)` factorization for every
//! `n ≤ N`; all arithmetic functions (λ, λ_odd, λ_q, ν, τ, τ_odd, the
//! square/twice-square indicator 1*λ_odd) are derived from it in exact
//! 64-bit integer arithmetic with overflow checked, never wrapped.

use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

/// Hard cap on the sieve limit (spf entries are 4 bytes each).
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;

const SPFT_MAGIC: &[u8; 4] = b"SPFT";
const SPFT_VERSION: u32 = 1;

/// Smallest-prime-factor table for 2..=N.
///
/// Invariants: `spf[n]` is prime and divides `n`; `spf[p] == p` exactly
/// when `p` is prime.
pub struct SieveTable {
    limit: u64,
    spf: Vec<u32>,
}

impl SieveTable {
    /// Build the table with a linear sieve.
    pub fn build(limit: u64) -> Result<Self> {
        if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::InvalidArgument(alloc::format!(
                "sieve limit {limit} outside 2..={MAX_SIEVE_LIMIT}"
            )));
        }
        let n = limit as usize;
        let mut spf = alloc::vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let spf_i = spf[i];
            for &p in &primes {
                if p > spf_i || (i as u64) * (p as u64) > limit {
                    break;
                }
                spf[i * p as usize] = p;
            }
        }
        Ok(SieveTable { limit, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit {
            return Err(Error::OutOfRange { what: "n", value: n, limit: self.limit });
        }
        Ok(())
    }

    /// Smallest prime factor of `n ≥ 2`.
    pub fn spf(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        if n == 1 {
            return Err(Error::OutOfRange { what: "n", value: 1, limit: self.limit });
        }
        Ok(self.spf[n as usize] as u64)
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.check(n)?;
        Ok(n >= 2 && self.spf[n as usize] as u64 == n)
    }

    /// Prime factorization as (prime, exponent) pairs, ascending.
    pub fn factorize(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        self.check(n)?;
        let mut out = Vec::new();
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        Ok(out)
    }

    /// All divisors of `n`, ascending.
    pub fn divisors(&self, n: u64) -> Result<Vec<u64>> {
        let factors = self.factorize(n)?;
        let mut divs = alloc::vec![1u64];
        for (p, e) in factors {
            let prev = divs.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                for i in 0..prev {
                    divs.push(divs[i] * pe);
                }
            }
        }
        divs.sort_unstable();
        Ok(divs)
    }

    /// Liouville λ(n) = (−1)^Ω(n).
    pub fn liouville(&self, n: u64) -> Result<i64> {
        self.check(n)?;
        let mut m = n as usize;
        let mut sign = 1i64;
        while m > 1 {
            sign = -sign;
            m /= self.spf[m] as usize;
        }
        Ok(sign)
    }

    /// λ_odd(n): 0 for even n, λ(n) for odd n.
    pub fn liouville_odd(&self, n: u64) -> Result<i64> {
        self.check(n)?;
        if n % 2 == 0 {
            return Ok(0);
        }
        self.liouville(n)
    }

    /// λ_q(n): 0 when q | n, λ(n) otherwise. `q` must be prime.
    pub fn liouville_q(&self, q: u64, n: u64) -> Result<i64> {
        require_prime(q)?;
        self.check(n)?;
        if n % q == 0 {
            return Ok(0);
        }
        self.liouville(n)
    }

    /// ν(n): number of distinct prime divisors.
    pub fn nu(&self, n: u64) -> Result<u32> {
        Ok(self.factorize(n)?.len() as u32)
    }

    /// τ(n): number of divisors.
    pub fn tau(&self, n: u64) -> Result<i64> {
        let mut t: i64 = 1;
        for (_, e) in self.factorize(n)? {
            t = t
                .checked_mul(e as i64 + 1)
                .ok_or(Error::Overflow("tau"))?;
        }
        Ok(t)
    }

    /// τ_odd(n): number of odd divisors, i.e. τ of the odd part.
    pub fn tau_odd(&self, n: u64) -> Result<i64> {
        self.check(n)?;
        let mut m = n;
        while m % 2 == 0 {
            m /= 2;
        }
        self.tau(m)
    }

    /// The convolution 1*λ_odd(n): 1 when n = m² or n = 2m², else 0.
    ///
    /// Computed two independent ways — literal divisor sum of λ_odd and
    /// the square/twice-square predicate — which must agree.
    pub fn one_star_lambda_odd(&self, n: u64) -> Result<i64> {
        self.check(n)?;
        let mut by_divisors: i64 = 0;
        for d in self.divisors(n)? {
            by_divisors = by_divisors
                .checked_add(self.liouville_odd(d)?)
                .ok_or(Error::Overflow("1*lambda_odd"))?;
        }
        let by_predicate = i64::from(is_square(n) || (n % 2 == 0 && is_square(n / 2)));
        if by_divisors != by_predicate {
            return Err(Error::InvariantViolation(alloc::format!(
                "1*lambda_odd({n}): divisor sum {by_divisors} != indicator {by_predicate}"
            )));
        }
        Ok(by_predicate)
    }

    /// 1*λ_q(n): 1 exactly when n = q^k·m² with q ∤ m, else 0.
    pub fn one_star_lambda_q(&self, q: u64, n: u64) -> Result<i64> {
        require_prime(q)?;
        self.check(n)?;
        let mut m = n;
        while m % q == 0 {
            m /= q;
        }
        Ok(i64::from(is_square(m)))
    }

    /// Serialize as an SPFT blob: 16-byte header (magic, version, limit as
    /// little-endian u64) followed by little-endian u32 spf entries for 2..=N.
    pub fn to_spft_bytes(&self) -> Vec<u8> {
        let n = self.limit as usize;
        let mut out = Vec::with_capacity(16 + 4 * (n - 1));
        out.extend_from_slice(SPFT_MAGIC);
        out.extend_from_slice(&SPFT_VERSION.to_le_bytes());
        out.extend_from_slice(&self.limit.to_le_bytes());
        for i in 2..=n {
            out.extend_from_slice(&self.spf[i].to_le_bytes());
        }
        out
    }

    /// Deserialize an SPFT blob, validating the header and every entry.
    pub fn from_spft_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 16 || &bytes[0..4] != SPFT_MAGIC {
            return Err(Error::InvalidArgument("not an SPFT blob".into()));
        }
        let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        if version != SPFT_VERSION {
            return Err(Error::InvalidArgument(alloc::format!(
                "unsupported SPFT version {version}"
            )));
        }
        let limit = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::InvalidArgument(alloc::format!("bad SPFT limit {limit}")));
        }
        let n = limit as usize;
        if bytes.len() != 16 + 4 * (n - 1) {
            return Err(Error::InvalidArgument("SPFT blob length mismatch".into()));
        }
        let mut spf = alloc::vec![0u32; n + 1];
        for i in 2..=n {
            let off = 16 + 4 * (i - 2);
            let p = u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap());
            if p < 2 || (i as u64) % (p as u64) != 0 {
                return Err(Error::InvalidArgument(alloc::format!(
                    "corrupt SPFT entry at n = {i}"
                )));
            }
            spf[i] = p;
        }
        // spf[p] = p must mark exactly the primes; entries below were only
        // checked for divisibility, so verify minimality via the table itself.
        for i in 2..=n {
            let p = spf[i] as usize;
            if spf[p] != spf[i] {
                return Err(Error::InvalidArgument(alloc::format!(
                    "corrupt SPFT entry at n = {i}: {p} is not prime"
                )));
            }
            if i % 2 == 0 && p != 2 {
                return Err(Error::InvalidArgument(alloc::format!(
                    "corrupt SPFT entry at n = {i}: smallest factor must be 2"
                )));
            }
        }
        Ok(SieveTable { limit, spf })
    }
}

/// Ramanujan sum c_q(n) for prime q: q−1 when q | n, −1 otherwise.
pub fn ramanujan_c(q: u64, n: u64) -> Result<i64> {
    require_prime(q)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(if n % q == 0 { q as i64 - 1 } else { -1 })
}

/// Trial-division primality, for validating small moduli like q.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

fn require_prime(q: u64) -> Result<()> {
    if !is_prime_u64(q) {
        return Err(Error::InvalidArgument(alloc::format!("q = {q} is not prime")));
    }
    Ok(())
}

/// Exact integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = libm::sqrt(n as f64) as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    fn sieve(n: u64) -> SieveTable {
        SieveTable::build(n).unwrap()
    }

    #[test]
    fn spf_small_table() {
        let t = sieve(10);
        let got: Vec<u64> = (2..=10).map(|n| t.spf(n).unwrap()).collect();
        assert_eq!(got, [2, 3, 2, 5, 2, 7, 2, 3, 2]);
    }

    #[test]
    fn spf_smallest_case() {
        let t = sieve(2);
        assert_eq!(t.spf(2).unwrap(), 2);
        assert!(t.is_prime(2).unwrap());
    }

    #[test]
    fn spf_matches_trial_division_oracle() {
        let t = sieve(1_000_000);
        assert_eq!(t.spf(999_983).unwrap(), 999_983);
        assert!(is_prime_u64(999_983));
        for n in 2..3000u64 {
            let oracle = (2..=n).find(|d| n % d == 0).unwrap();
            assert_eq!(t.spf(n).unwrap(), oracle, "spf({n})");
        }
    }

    #[test]
    fn bounds_are_checked() {
        let t = sieve(100);
        assert!(matches!(t.liouville(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(t.liouville(101), Err(Error::OutOfRange { .. })));
        assert!(matches!(SieveTable::build(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            SieveTable::build(MAX_SIEVE_LIMIT + 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn liouville_examples() {
        let t = sieve(100);
        assert_eq!(t.liouville(1).unwrap(), 1);
        assert_eq!(t.liouville(2).unwrap(), -1);
        // 12 = 2²·3 has Ω = 3
        assert_eq!(t.liouville(12).unwrap(), -1);
    }

    #[test]
    fn liouville_matches_omega_oracle() {
        let t = sieve(5000);
        for n in 1..=5000u64 {
            let omega: u32 = t.factorize(n).unwrap().iter().map(|&(_, e)| e).sum();
            assert_eq!(t.liouville(n).unwrap(), if omega % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn liouville_odd_examples() {
        let t = sieve(100);
        assert_eq!(t.liouville_odd(6).unwrap(), 0);
        assert_eq!(t.liouville_odd(9).unwrap(), 1);
        assert_eq!(t.liouville_odd(15).unwrap(), 1);
    }

    #[test]
    fn liouville_q_examples() {
        let t = sieve(100);
        assert_eq!(t.liouville_q(2, 6).unwrap(), 0);
        assert_eq!(t.liouville_q(3, 9).unwrap(), 0);
        assert_eq!(t.liouville_q(3, 10).unwrap(), 1); // λ(10) = (−1)²
        assert!(matches!(t.liouville_q(4, 5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn divisor_function_examples() {
        let t = sieve(100);
        assert_eq!(t.nu(12).unwrap(), 2);
        assert_eq!(t.tau(12).unwrap(), 6);
        assert_eq!(t.tau_odd(12).unwrap(), 2);
        assert_eq!(t.nu(1).unwrap(), 0);
        assert_eq!(t.tau(1).unwrap(), 1);
        assert_eq!(t.tau_odd(1).unwrap(), 1);
        assert_eq!(t.nu(16).unwrap(), 1);
        assert_eq!(t.tau(16).unwrap(), 5);
        assert_eq!(t.tau_odd(16).unwrap(), 1);
    }

    #[test]
    fn divisor_functions_match_enumeration_oracle() {
        let t = sieve(2000);
        for n in 1..=2000u64 {
            let divs: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(t.divisors(n).unwrap(), divs);
            assert_eq!(t.tau(n).unwrap(), divs.len() as i64);
            assert_eq!(
                t.tau_odd(n).unwrap(),
                divs.iter().filter(|d| *d % 2 == 1).count() as i64
            );
        }
    }

    #[test]
    fn one_star_lambda_odd_examples() {
        let t = sieve(200);
        assert_eq!(t.one_star_lambda_odd(16).unwrap(), 1); // 4²
        assert_eq!(t.one_star_lambda_odd(18).unwrap(), 1); // 2·3²
        assert_eq!(t.one_star_lambda_odd(12).unwrap(), 0);
    }

    #[test]
    fn one_star_lambda_q_matches_divisor_sums() {
        let t = sieve(2000);
        for q in [2u64, 3, 5, 7] {
            for n in 1..=2000u64 {
                let literal: i64 = t
                    .divisors(n)
                    .unwrap()
                    .iter()
                    .map(|&d| t.liouville_q(q, d).unwrap())
                    .sum();
                assert_eq!(t.one_star_lambda_q(q, n).unwrap(), literal, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_c(3, 6).unwrap(), 2);
        assert_eq!(ramanujan_c(3, 5).unwrap(), -1);
        assert_eq!(ramanujan_c(2, 7).unwrap(), -1); // c_2(n) = (−1)^n
        assert!(matches!(ramanujan_c(6, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(ramanujan_c(3, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn ramanujan_partial_sums_stay_below_q() {
        for q in [2u64, 3, 5, 7] {
            let mut s = 0i64;
            for x in 1..=1000u64 {
                s += ramanujan_c(q, x).unwrap();
                assert!(s.unsigned_abs() < q, "q={q} x={x} sum={s}");
            }
        }
    }

    #[test]
    fn ramanujan_invariant_under_coprime_scaling() {
        for q in [2u64, 3, 5, 7] {
            for n in 1..=1000u64 {
                for d in [1u64, 2, 3, 4, 5, 9, 11] {
                    if d % q != 0 {
                        assert_eq!(ramanujan_c(q, d * n).unwrap(), ramanujan_c(q, n).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn spft_round_trip_and_corruption() {
        let t = sieve(5000);
        let bytes = t.to_spft_bytes();
        assert_eq!(bytes.len(), 16 + 4 * 4999);
        let back = SieveTable::from_spft_bytes(&bytes).unwrap();
        assert_eq!(back.limit(), 5000);
        for n in 2..=5000u64 {
            assert_eq!(back.spf(n).unwrap(), t.spf(n).unwrap());
        }
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(SieveTable::from_spft_bytes(&bad).is_err());
        let mut bad = bytes.clone();
        bad[20] ^= 0xff;
        assert!(SieveTable::from_spft_bytes(&bad).is_err());
        assert!(SieveTable::from_spft_bytes(&bytes[..40]).is_err());
    }

    #[test]
    fn isqrt_is_exact() {
        for n in 0..5000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n}) = {r}");
        }
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
        assert!(is_square(1 << 62));
        assert!(!is_square((1 << 62) + 1));
    }
}
