//! Integer-valued function tables indexed 1..=N, plus Dirichlet convolution.

use alloc::vec::Vec;

use crate::error::Error;
use crate::sieve::SieveTable;
use crate::Result;

/// Values of an arithmetic function at 1..=N, in exact i64 arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FunctionTable {
    values: Vec<i64>, // index 0 unused
}

impl FunctionTable {
    pub fn from_fn(limit: u64, mut f: impl FnMut(u64) -> Result<i64>) -> Result<Self> {
        let mut values = alloc::vec![0i64; limit as usize + 1];
        for n in 1..=limit {
            values[n as usize] = f(n)?;
        }
        Ok(FunctionTable { values })
    }

    pub fn limit(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Result<i64> {
        if n == 0 || n > self.limit() {
            return Err(Error::OutOfRange { what: "n", value: n, limit: self.limit() });
        }
        Ok(self.values[n as usize])
    }

    /// The constant function 1.
    pub fn ones(limit: u64) -> Self {
        let mut values = alloc::vec![1i64; limit as usize + 1];
        values[0] = 0;
        FunctionTable { values }
    }

    /// (−1)^n.
    pub fn alternating(limit: u64) -> Self {
        FunctionTable::from_fn(limit, |n| Ok(if n % 2 == 0 { 1 } else { -1 })).unwrap()
    }

    pub fn mobius(t: &SieveTable) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| {
            let f = t.factorize(n)?;
            if f.iter().any(|&(_, e)| e > 1) {
                Ok(0)
            } else if f.len() % 2 == 0 {
                Ok(1)
            } else {
                Ok(-1)
            }
        })
    }

    pub fn liouville(t: &SieveTable) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| t.liouville(n))
    }

    pub fn liouville_odd(t: &SieveTable) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| t.liouville_odd(n))
    }

    pub fn liouville_q(t: &SieveTable, q: u64) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| t.liouville_q(q, n))
    }

    pub fn nu_pow2(t: &SieveTable) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| {
            let nu = t.nu(n)?;
            1i64.checked_shl(nu).ok_or(Error::Overflow("2^nu"))
        })
    }

    pub fn tau(t: &SieveTable) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| t.tau(n))
    }

    pub fn tau_odd(t: &SieveTable) -> Result<Self> {
        FunctionTable::from_fn(t.limit(), |n| t.tau_odd(n))
    }

    /// Pointwise product (f·g)(n) = f(n)g(n).
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        if self.limit() != other.limit() {
            return Err(Error::LengthMismatch { left: self.limit(), right: other.limit() });
        }
        FunctionTable::from_fn(self.limit(), |n| {
            self.values[n as usize]
                .checked_mul(other.values[n as usize])
                .ok_or(Error::Overflow("pointwise product"))
        })
    }
}

/// Dirichlet convolution (f*g)(n) = Σ_{d|n} f(d) g(n/d) for all n ≤ N.
pub fn dirichlet_convolve(f: &FunctionTable, g: &FunctionTable) -> Result<FunctionTable> {
    let n = f.limit();
    if n != g.limit() {
        return Err(Error::LengthMismatch { left: n, right: g.limit() });
    }
    let mut out = alloc::vec![0i64; n as usize + 1];
    for d in 1..=n {
        let fd = f.values[d as usize];
        if fd == 0 {
            continue;
        }
        let mut m = d;
        let mut k = 1u64;
        while m <= n {
            let term = fd
                .checked_mul(g.values[k as usize])
                .ok_or(Error::Overflow("dirichlet convolution"))?;
            let slot = &mut out[m as usize];
            *slot = slot.checked_add(term).ok_or(Error::Overflow("dirichlet convolution"))?;
            m += d;
            k += 1;
        }
    }
    Ok(FunctionTable { values: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::is_square;

    #[test]
    fn mobius_inversion_identity() {
        let t = SieveTable::build(500).unwrap();
        let e = dirichlet_convolve(&FunctionTable::ones(500), &FunctionTable::mobius(&t).unwrap())
            .unwrap();
        assert_eq!(e.get(1).unwrap(), 1);
        for n in 2..=500 {
            assert_eq!(e.get(n).unwrap(), 0, "1*mu({n})");
        }
    }

    #[test]
    fn one_star_liouville_is_square_indicator() {
        let t = SieveTable::build(500).unwrap();
        let sq =
            dirichlet_convolve(&FunctionTable::ones(500), &FunctionTable::liouville(&t).unwrap())
                .unwrap();
        assert_eq!(sq.get(9).unwrap(), 1);
        assert_eq!(sq.get(8).unwrap(), 0);
        for n in 1..=500 {
            assert_eq!(sq.get(n).unwrap(), i64::from(is_square(n)), "1*lambda({n})");
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let a = FunctionTable::ones(10);
        let b = FunctionTable::ones(11);
        assert!(matches!(
            dirichlet_convolve(&a, &b),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(a.pointwise_mul(&b).is_err());
    }

    #[test]
    fn convolution_overflow_is_detected() {
        let big = FunctionTable::from_fn(8, |_| Ok(i64::MAX / 2)).unwrap();
        assert!(matches!(
            dirichlet_convolve(&big, &big),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn nu_pow2_bounded_by_tau() {
        let t = SieveTable::build(10_000).unwrap();
        let pow = FunctionTable::nu_pow2(&t).unwrap();
        let tau = FunctionTable::tau(&t).unwrap();
        let tau_odd = FunctionTable::tau_odd(&t).unwrap();
        for n in 1..=10_000 {
            assert!(pow.get(n).unwrap() <= tau.get(n).unwrap(), "2^nu <= tau at {n}");
            assert!(tau_odd.get(n).unwrap() <= tau.get(n).unwrap(), "tau_odd <= tau at {n}");
        }
    }
}
