//! Rosser–Iwaniec linear sieve weights (β = 2).
//!
//! A squarefree `d = p1 p2 ... pr` with `p1 > p2 > ... > pr`, all primes in
//! `(P, Q]`, lies in the upper support when `p1...pm * pm^2 <= y` for every odd
//! `m <= r`, and in the lower support when the same holds for every even
//! `m <= r`. On the support `λ_d = μ(d)`. Both sets are closed under dropping
//! the smallest prime, and a chain leaves the set only at an odd (upper) or
//! even (lower) step, which is what makes the divisor sums sandwich the
//! indicator of `(m, P(P,Q)) = 1`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::sieve::for_each_prime;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SieveSign {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveCoefficients {
    pub p: f64,
    pub q: f64,
    pub y: f64,
    pub sign: SieveSign,
    /// Primes in `(P, Q]`, ascending.
    pub primes: Vec<u64>,
    /// `d -> λ_d` on the support (values ±1).
    pub weights: BTreeMap<u64, i8>,
}

/// Primes `p` with `lo < p <= hi` for real bounds.
pub(crate) fn primes_in_window(lo: f64, hi: f64) -> Vec<u64> {
    let mut out = Vec::new();
    if hi < 2.0 {
        return out;
    }
    let start = if lo < 2.0 { 2 } else { lo.floor() as u64 + 1 };
    for_each_prime(start, hi.floor() as u64, |p| out.push(p));
    out
}

pub fn beta_sieve_coefficients(p: f64, q: f64, y: f64, sign: SieveSign) -> Result<SieveCoefficients> {
    if !(y >= 1.0) {
        return Err(Error::param("y", format!("sieve level must be >= 1, got {y}")));
    }
    if !(p >= 2.0 && p < q) || !q.is_finite() {
        return Err(Error::param("P", format!("need 2 <= P < Q, got ({p}, {q}]")));
    }
    let primes = primes_in_window(p, q);
    let mut weights = BTreeMap::new();
    weights.insert(1, 1);
    // walk chains p1 > p2 > ... choosing each next prime below the last one
    let mut stack: Vec<(usize, u128, u32)> = Vec::new();
    for (i, &p1) in primes.iter().enumerate().rev() {
        stack.push((i, p1 as u128, 1));
    }
    while let Some((last, d, m)) = stack.pop() {
        let pm = primes[last] as u128;
        let checked = match sign {
            SieveSign::Upper => m % 2 == 1,
            SieveSign::Lower => m % 2 == 0,
        };
        if checked && (d * pm * pm) as f64 > y {
            continue;
        }
        weights.insert(d as u64, if m % 2 == 1 { -1 } else { 1 });
        for j in (0..last).rev() {
            stack.push((j, d * primes[j] as u128, m + 1));
        }
    }
    Ok(SieveCoefficients {
        p,
        q,
        y,
        sign,
        primes,
        weights,
    })
}

impl SieveCoefficients {
    pub fn weight(&self, d: u64) -> i8 {
        self.weights.get(&d).copied().unwrap_or(0)
    }

    pub fn in_window(&self, prime: u64) -> bool {
        (prime as f64) > self.p && (prime as f64) <= self.q
    }

    /// `Σ_{d | g} λ_d` where `g` is the product of the distinct `primes`.
    pub fn divisor_sum(&self, primes: &[u64]) -> i64 {
        let k = primes.len();
        let mut total = 0i64;
        for mask in 0u32..(1 << k) {
            let mut d = 1u128;
            for (b, &p) in primes.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    d *= p as u128;
                }
            }
            if d <= u64::MAX as u128 {
                total += self.weight(d as u64) as i64;
            }
        }
        total
    }

    /// Checks `λ⁻-sum <= 1_{(m,P)=1} <= λ⁺-sum` for the window primes dividing
    /// `m`, given this set and its partner of the other sign.
    pub fn sandwich_holds(upper: &Self, lower: &Self, window_primes: &[u64]) -> bool {
        let indicator = i64::from(window_primes.is_empty());
        lower.divisor_sum(window_primes) <= indicator && indicator <= upper.divisor_sum(window_primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn distinct_window_primes(mut m: u64, lo: u64, hi: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                if d > lo && d <= hi {
                    out.push(d);
                }
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 && m > lo && m <= hi {
            out.push(m);
        }
        out
    }

    #[test]
    fn empty_prime_window() {
        for sign in [SieveSign::Upper, SieveSign::Lower] {
            let c = beta_sieve_coefficients(24.0, 28.0, 1e6, sign).unwrap();
            assert!(c.primes.is_empty());
            assert_eq!(c.weights, BTreeMap::from([(1, 1)]));
        }
        // 11 itself lies in (10, 11]
        let c = beta_sieve_coefficients(10.0, 11.0, 1.0, SieveSign::Upper).unwrap();
        assert_eq!(c.primes, vec![11]);
        assert_eq!(c.weights, BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn rejects_bad_level() {
        assert!(beta_sieve_coefficients(3.0, 30.0, 0.5, SieveSign::Upper).is_err());
        assert!(beta_sieve_coefficients(3.0, 30.0, f64::NAN, SieveSign::Upper).is_err());
        assert!(beta_sieve_coefficients(30.0, 3.0, 10.0, SieveSign::Upper).is_err());
    }

    #[test]
    fn support_matches_definition() {
        // brute force over squarefree d built from primes in (3, 30]
        let primes: Vec<u64> = vec![5, 7, 11, 13, 17, 19, 23, 29];
        let y = 1e4;
        for sign in [SieveSign::Upper, SieveSign::Lower] {
            let c = beta_sieve_coefficients(3.0, 30.0, y, sign).unwrap();
            for mask in 1u32..(1 << primes.len()) {
                let mut ps: Vec<u64> = (0..primes.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| primes[b])
                    .collect();
                ps.reverse();
                let ok = (1..=ps.len()).all(|m| {
                    let checked = match sign {
                        SieveSign::Upper => m % 2 == 1,
                        SieveSign::Lower => m % 2 == 0,
                    };
                    let prod: u64 = ps[..m].iter().product();
                    !checked || (prod * ps[m - 1] * ps[m - 1]) as f64 <= y
                });
                let d: u64 = ps.iter().product();
                let expect = if ok { if ps.len() % 2 == 1 { -1 } else { 1 } } else { 0 };
                assert_eq!(c.weight(d), expect, "d = {d}, {sign:?}");
            }
            assert_eq!(c.weight(1), 1);
        }
    }

    #[test]
    fn sandwich_small_window() {
        let up = beta_sieve_coefficients(3.0, 30.0, 1e4, SieveSign::Upper).unwrap();
        let lo = beta_sieve_coefficients(3.0, 30.0, 1e4, SieveSign::Lower).unwrap();
        assert_eq!(up.divisor_sum(&[]), 1);
        for m in 1..=100_000u64 {
            let ps = distinct_window_primes(m, 3, 30);
            assert!(SieveCoefficients::sandwich_holds(&up, &lo, &ps), "m = {m}");
        }
    }
}
