//! Kronecker symbol via reciprocity reduction, and the fundamental
//! discriminant criterion.

use crate::error::Error;
use crate::Result;

/// Kronecker symbol (a|b), total on integer pairs.
///
/// Extends the Jacobi symbol by (a|2) = 0, ±1 according to a mod 8,
/// (a|−1) = sign of a, and (a|0) = [|a| = 1].
pub fn kronecker(a: i64, b: i64) -> i32 {
    let mut a = a as i128;
    let mut b = b as i128;
    if b == 0 {
        return i32::from(a == 1 || a == -1);
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut k = 1i32;
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    let mut v = 0u32;
    while b % 2 == 0 {
        b /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        k *= two_symbol(a);
    }
    // b is now odd and positive; standard Jacobi reduction.
    loop {
        a = a.rem_euclid(b);
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let mut v = 0u32;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            k *= two_symbol(b);
        }
        if a % 4 == 3 && b % 4 == 3 {
            k = -k;
        }
        core::mem::swap(&mut a, &mut b);
    }
}

/// (2|x) for odd x: +1 when x ≡ ±1 (mod 8), −1 when x ≡ ±3 (mod 8).
fn two_symbol(x: i128) -> i32 {
    match x.rem_euclid(8) {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => unreachable!("two_symbol on even argument"),
    }
}

/// Whether a negative integer is a fundamental discriminant: either
/// ≡ 1 (mod 4) and squarefree, or 4k with k ≡ 2, 3 (mod 4) and k squarefree.
pub fn is_fundamental(minus_d: i64) -> Result<bool> {
    if minus_d >= 0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "{minus_d} is not negative; only negative discriminants are supported"
        )));
    }
    match minus_d.rem_euclid(4) {
        1 => Ok(is_squarefree(minus_d.unsigned_abs())),
        0 => {
            let k = minus_d / 4;
            let r = k.rem_euclid(4);
            Ok((r == 2 || r == 3) && is_squarefree(k.unsigned_abs()))
        }
        _ => Ok(false),
    }
}

fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}
