//! Primitive-word counting and the maximal complexity of binary
//! word-generated permutations.
//!
//! `ψ(t) = Σ_{d|t} μ(t/d)·2^d` counts primitive binary words of length
//! `t`, and `p(n+1) = Σ_{t=1}^{n} ψ(t)·2^{n−t}` is the largest factor
//! complexity a permutation generated by a binary word can have. An
//! enumeration oracle backs the Möbius formula at desk scale.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Möbius function by trial-division factorization.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("mobius is defined for n >= 1".into()));
    }
    let mut n = n;
    let mut factors = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors.is_multiple_of(2) { 1 } else { -1 })
}

/// `ψ(t) = Σ_{d|t} μ(t/d)·2^d`: the number of primitive binary words of
/// length `t`.
pub fn psi(t: u64) -> Result<BigInt> {
    if t == 0 {
        return Err(Error::InvalidArgument("psi is defined for t >= 1".into()));
    }
    let mut sum = BigInt::zero();
    for d in 1..=t {
        if t.is_multiple_of(d) {
            let mu = mobius(t / d)?;
            sum += BigInt::from(mu) * (BigInt::one() << d);
        }
    }
    Ok(sum)
}

/// `p(n+1) = Σ_{t=1}^{n} ψ(t)·2^{n−t}`: the maximal factor complexity at
/// length `n+1` of a permutation generated by a binary word.
pub fn max_complexity(n_plus_1: u64) -> Result<BigInt> {
    if n_plus_1 < 2 {
        return Err(Error::InvalidArgument("complexity lengths start at 2".into()));
    }
    let n = n_plus_1 - 1;
    let mut sum = BigInt::zero();
    for t in 1..=n {
        sum += psi(t)? * (BigInt::one() << (n - t));
    }
    Ok(sum)
}

/// Budget for the enumeration oracle.
pub const PRIMITIVE_ENUM_MAX_T: u64 = 20;

/// Counts primitive binary words of length `t ≤ 20` by enumeration: a
/// word is primitive when it is not a power of its length-`d` prefix for
/// any proper divisor `d`.
pub fn count_primitive_words(t: u64) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidArgument("word length must be >= 1".into()));
    }
    if t > PRIMITIVE_ENUM_MAX_T {
        return Err(Error::BudgetExceeded { budget: PRIMITIVE_ENUM_MAX_T, found: 0 });
    }
    let mut count = 0u64;
    'words: for w in 0u64..(1u64 << t) {
        for d in 1..t {
            if t.is_multiple_of(d) {
                let mask = (1u64 << d) - 1;
                let block = w & mask;
                let mut repeated = 0u64;
                let mut i = 0;
                while i < t {
                    repeated |= block << i;
                    i += d;
                }
                if repeated == w {
                    continue 'words;
                }
            }
        }
        count += 1;
    }
    Ok(count)
}

/// One row of the reference table: `ψ(t)`, the enumeration oracle where
/// it fits the budget, and `p(t+1)`. The big integers serialize as
/// decimal strings; JSON numbers would silently lose precision.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub t: u64,
    #[serde(serialize_with = "bigint_as_string")]
    pub psi: BigInt,
    pub oracle: Option<u64>,
    #[serde(serialize_with = "bigint_as_string")]
    pub max_complexity: BigInt,
}

fn bigint_as_string<S: serde::Serializer>(
    v: &BigInt,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&v.to_string())
}

/// The table for `t = 1..=max_n`. The asymptotic reference shape,
/// `p(n+1) = 2^n (n − c + O(n·2^{−n/2}))`, is display-only; `c` is not
/// computed here.
pub fn table(max_n: u64) -> Result<Vec<TableRow>> {
    (1..=max_n)
        .map(|t| {
            Ok(TableRow {
                t,
                psi: psi(t)?,
                oracle: if t <= PRIMITIVE_ENUM_MAX_T {
                    Some(count_primitive_words(t)?)
                } else {
                    None
                },
                max_complexity: max_complexity(t + 1)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn psi_small_values() {
        assert_eq!(psi(1).unwrap(), BigInt::from(2));
        assert_eq!(psi(2).unwrap(), BigInt::from(2));
        assert_eq!(psi(3).unwrap(), BigInt::from(6));
        // 16 words minus 0000, 1111, 0101, 1010
        assert_eq!(psi(4).unwrap(), BigInt::from(12));
        assert_eq!(psi(6).unwrap(), BigInt::from(54));
    }

    #[test]
    fn max_complexity_values() {
        assert_eq!(max_complexity(2).unwrap(), BigInt::from(2));
        assert_eq!(max_complexity(3).unwrap(), BigInt::from(6));
        assert_eq!(max_complexity(4).unwrap(), BigInt::from(18));
        // 16 + 8 + 12 + 12
        assert_eq!(max_complexity(5).unwrap(), BigInt::from(48));
        assert!(max_complexity(1).is_err());
    }

    #[test]
    fn oracle_small_values() {
        assert_eq!(count_primitive_words(1).unwrap(), 2);
        assert_eq!(count_primitive_words(3).unwrap(), 6);
        assert_eq!(count_primitive_words(6).unwrap(), 54);
        assert!(count_primitive_words(21).is_err());
    }

    #[test]
    fn mobius_inversion_identity() {
        // Σ_{d|t} ψ(d) = 2^t
        for t in 1u64..=18 {
            let mut sum = BigInt::zero();
            for d in 1..=t {
                if t % d == 0 {
                    sum += psi(d).unwrap();
                }
            }
            assert_eq!(sum, BigInt::one() << t, "inversion fails at t={t}");
        }
    }

    #[test]
    fn max_complexity_is_monotone() {
        let mut prev = BigInt::zero();
        for n1 in 2u64..=16 {
            let p = max_complexity(n1).unwrap();
            assert!(p > prev, "p({n1}) did not grow");
            prev = p;
        }
    }
}
