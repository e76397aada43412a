//! Complete factorization of every integer in a window `(x, x+H]`.
//!
//! Each segment is sieved by the base primes up to `sqrt(x+H)`. Division by a
//! sieving prime `p` is done with the multiplicative inverse of `p` modulo
//! 2^64 (exact for multiples of `p`), so the inner loop has no hardware
//! divisions. Factors are collected as (index, prime power) events in prime
//! order and then bucketed per integer with a counting sort, which leaves
//! every entry's primes ascending.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

use super::primes::{base_primes, isqrt};
use crate::{Error, Result};

/// Upper limit (exclusive) for `x + H`.
pub const WINDOW_LIMIT: u64 = 1 << 62;

pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

/// A half-open window `(x, x+H]` of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    x: u64,
    h: u64,
}

impl Interval {
    pub fn new(x: u64, h: u64) -> Result<Self> {
        if x < 1 {
            return Err(Error::InvalidInterval("x must be >= 1".into()));
        }
        if h < 1 {
            return Err(Error::InvalidInterval("H must be >= 1".into()));
        }
        match x.checked_add(h) {
            Some(end) if end < WINDOW_LIMIT => Ok(Self { x, h }),
            _ => Err(Error::InvalidInterval(format!(
                "x + H must be below 2^62 (x = {x}, H = {h})"
            ))),
        }
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// First integer in the window, `x + 1`.
    pub fn first(&self) -> u64 {
        self.x + 1
    }

    /// Last integer in the window, `x + H`.
    pub fn last(&self) -> u64 {
        self.x + self.h
    }

    pub fn contains(&self, n: u64) -> bool {
        n > self.x && n <= self.last()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u32,
    pub e: u8,
}

impl PrimePower {
    pub fn prime(&self) -> u64 {
        self.p as u64
    }

    pub fn exponent(&self) -> u32 {
        self.e as u32
    }

    pub fn value(&self) -> u64 {
        (self.p as u64).pow(self.e as u32)
    }
}

/// Factorization of one integer `n`: sieved prime powers (ascending) and a
/// cofactor that is either 1 or a prime larger than every sieving prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorEntry<'a> {
    pub n: u64,
    pub prime_powers: &'a [PrimePower],
    pub cofactor: u64,
}

impl FactorEntry<'_> {
    /// All `(p, e)` pairs of the factorization, including the cofactor.
    pub fn factors(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.prime_powers
            .iter()
            .map(|pp| (pp.prime(), pp.exponent()))
            .chain((self.cofactor > 1).then_some((self.cofactor, 1)))
    }

    pub fn omega(&self) -> u32 {
        self.prime_powers.len() as u32 + u32::from(self.cofactor > 1)
    }

    pub fn big_omega(&self) -> u32 {
        self.prime_powers.iter().map(|pp| pp.e as u32).sum::<u32>() + u32::from(self.cofactor > 1)
    }

    pub fn is_squarefree(&self) -> bool {
        self.prime_powers.iter().all(|pp| pp.e == 1)
    }

    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            return 0;
        }
        if self.omega() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.prime_powers
            .first()
            .map(|pp| pp.prime())
            .or((self.cofactor > 1).then_some(self.cofactor))
    }

    /// `n` is a sum of two squares iff every prime `p ≡ 3 (mod 4)` divides it
    /// to an even power.
    pub fn is_sum_of_two_squares(&self) -> bool {
        self.factors().all(|(p, e)| p % 4 != 3 || e % 2 == 0)
    }

    pub fn is_e2(&self) -> bool {
        self.big_omega() == 2
    }

    /// Λ(n): `log p` if `n` is a power of the prime `p`, else 0.
    pub fn von_mangoldt(&self) -> f64 {
        match (self.prime_powers, self.cofactor) {
            ([pp], 1) => (pp.p as f64).ln(),
            ([], c) if c > 1 => (c as f64).ln(),
            _ => 0.0,
        }
    }

    /// Number of distinct prime divisors in `(lo, hi]`.
    pub fn omega_in(&self, lo: f64, hi: f64) -> u32 {
        self.factors()
            .filter(|&(p, _)| (p as f64) > lo && (p as f64) <= hi)
            .count() as u32
    }

    /// τ_k(n) for real `k`: the product over `p^e ∥ n` of the generalized
    /// binomial coefficient C(k+e-1, e).
    pub fn divisor_k(&self, k: f64) -> f64 {
        self.factors().map(|(_, e)| divisor_k_prime_power(k, e)).product()
    }

    /// τ_k(n) for integer `k`, exact.
    pub fn divisor_k_exact(&self, k: u32) -> u128 {
        self.factors()
            .map(|(_, e)| binomial_u128(k as u128 + e as u128 - 1, e as u128))
            .product()
    }
}

/// C(k+e-1, e) = prod_{j<e} (k+j)/(j+1), valid for real `k`.
pub fn divisor_k_prime_power(k: f64, e: u32) -> f64 {
    (0..e).fold(1.0, |acc, j| acc * (k + j as f64) / (j as f64 + 1.0))
}

fn binomial_u128(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc = 1u128;
    for j in 0..r {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Factorizations of every integer in an interval, stored flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTable {
    interval: Interval,
    offsets: Vec<usize>,
    powers: Vec<PrimePower>,
    cofactors: Vec<u64>,
}

impl FactorTable {
    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.cofactors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cofactors.is_empty()
    }

    pub fn entry(&self, i: usize) -> FactorEntry<'_> {
        FactorEntry {
            n: self.interval.first() + i as u64,
            prime_powers: &self.powers[self.offsets[i]..self.offsets[i + 1]],
            cofactor: self.cofactors[i],
        }
    }

    /// Entry for `n`, if `n` lies in the window.
    pub fn get(&self, n: u64) -> Option<FactorEntry<'_>> {
        self.interval
            .contains(n)
            .then(|| self.entry((n - self.interval.first()) as usize))
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = FactorEntry<'_>> + '_ {
        (0..self.len()).map(move |i| self.entry(i))
    }

    fn concat(interval: Interval, parts: Vec<FactorTable>) -> FactorTable {
        let total_powers = parts.iter().map(|t| t.powers.len()).sum();
        let mut offsets = Vec::with_capacity(interval.h() as usize + 1);
        let mut powers = Vec::with_capacity(total_powers);
        let mut cofactors = Vec::with_capacity(interval.h() as usize);
        offsets.push(0);
        for part in parts {
            let base = powers.len();
            offsets.extend(part.offsets[1..].iter().map(|o| o + base));
            powers.extend_from_slice(&part.powers);
            cofactors.extend_from_slice(&part.cofactors);
        }
        FactorTable {
            interval,
            offsets,
            powers,
            cofactors,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveConfig {
    pub segment_len: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            segment_len: DEFAULT_SEGMENT_LEN,
        }
    }
}

/// A factorization sieve able to handle any window ending at or below
/// `limit`. The base primes are shared immutable data.
#[derive(Clone, Debug)]
pub struct Sieve {
    limit: u64,
    primes: Arc<[u32]>,
    inverses: Arc<[u64]>,
    config: SieveConfig,
}

impl Sieve {
    pub fn new(limit: u64, config: SieveConfig) -> Result<Self> {
        if limit >= WINDOW_LIMIT {
            return Err(Error::InvalidInterval(format!(
                "sieve limit {limit} is not below 2^62"
            )));
        }
        if config.segment_len == 0 {
            return Err(Error::param("segment_len", "must be positive"));
        }
        let primes: Vec<u32> = base_primes(isqrt(limit))
            .into_iter()
            .map(|p| p as u32)
            .collect();
        Self::from_base_primes(limit, primes, config)
    }

    /// Builds a sieve from a precomputed list of base primes (for example one
    /// loaded from a prime cache). The list must cover `sqrt(limit)`.
    pub fn from_base_primes(limit: u64, primes: Vec<u32>, config: SieveConfig) -> Result<Self> {
        let need = isqrt(limit);
        if need >= 2 && primes.last().map_or(true, |&p| (p as u64) < prime_cover(need)) {
            return Err(Error::param(
                "base primes",
                format!("do not reach sqrt(limit) = {need}"),
            ));
        }
        let primes: Vec<u32> = primes.into_iter().filter(|&p| p as u64 <= need).collect();
        let inverses = primes.iter().map(|&p| inverse_mod_2_64(p as u64)).collect();
        Ok(Self {
            limit,
            primes: primes.into(),
            inverses,
            config,
        })
    }

    pub fn for_interval(interval: &Interval) -> Result<Self> {
        Self::new(interval.last(), SieveConfig::default())
    }

    pub fn with_config(mut self, config: SieveConfig) -> Self {
        self.config = config;
        self
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn base_primes(&self) -> &[u32] {
        &self.primes
    }

    fn check(&self, interval: &Interval) -> Result<()> {
        if interval.last() > self.limit {
            return Err(Error::InvalidInterval(format!(
                "window end {} exceeds sieve limit {}",
                interval.last(),
                self.limit
            )));
        }
        Ok(())
    }

    fn segments(&self, interval: &Interval) -> Vec<Interval> {
        let len = self.config.segment_len as u64;
        let mut out = Vec::with_capacity((interval.h() / len + 1) as usize);
        let mut x = interval.x();
        while x < interval.last() {
            let h = len.min(interval.last() - x);
            out.push(Interval { x, h });
            x += h;
        }
        out
    }

    /// Factors the whole window into one table.
    pub fn factor(&self, interval: &Interval) -> Result<FactorTable> {
        self.check(interval)?;
        let root = isqrt(interval.last());
        let segments = self.segments(interval);
        if segments.len() == 1 {
            return Ok(self.factor_segment(interval, root));
        }
        let parts: Vec<FactorTable> = segments
            .par_iter()
            .map(|seg| self.factor_segment(seg, root))
            .collect();
        Ok(FactorTable::concat(*interval, parts))
    }

    /// Applies `f` to the table of every segment and returns the results in
    /// window order. Results do not depend on scheduling.
    pub fn map_segments<T, F>(&self, interval: &Interval, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&FactorTable) -> T + Sync,
    {
        self.check(interval)?;
        let root = isqrt(interval.last());
        Ok(self
            .segments(interval)
            .par_iter()
            .map(|seg| f(&self.factor_segment(seg, root)))
            .collect())
    }

    /// Sieves one segment by the base primes up to `root`, which is the
    /// square root of the end of the enclosing window so that the split
    /// between prime powers and cofactor does not depend on segmentation.
    fn factor_segment(&self, seg: &Interval, root: u64) -> FactorTable {
        let first = seg.first();
        let last = seg.last();
        let len = seg.h() as usize;
        let mut rem: Vec<u64> = (first..=last).collect();
        let mut ev_idx: Vec<u32> = Vec::with_capacity(3 * len);
        let mut ev_pp: Vec<PrimePower> = Vec::with_capacity(3 * len);

        for (&p, &inv) in self.primes.iter().zip(self.inverses.iter()) {
            let p64 = p as u64;
            if p64 > root {
                break;
            }
            let r = first % p64;
            let mut i = if r == 0 { 0 } else { (p64 - r) as usize };
            if p == 2 {
                while i < len {
                    let tz = rem[i].trailing_zeros();
                    rem[i] >>= tz;
                    ev_idx.push(i as u32);
                    ev_pp.push(PrimePower { p, e: tz as u8 });
                    i += 2;
                }
                continue;
            }
            let lim = u64::MAX / p64;
            while i < len {
                let mut q = rem[i].wrapping_mul(inv);
                let mut e = 1u8;
                loop {
                    let t = q.wrapping_mul(inv);
                    if t > lim {
                        break;
                    }
                    q = t;
                    e += 1;
                }
                rem[i] = q;
                ev_idx.push(i as u32);
                ev_pp.push(PrimePower { p, e });
                i += p as usize;
            }
        }

        let mut offsets = vec![0usize; len + 1];
        for &i in &ev_idx {
            offsets[i as usize + 1] += 1;
        }
        for i in 0..len {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut powers = vec![PrimePower { p: 0, e: 0 }; ev_pp.len()];
        for (&i, &pp) in ev_idx.iter().zip(ev_pp.iter()) {
            let c = &mut cursor[i as usize];
            powers[*c] = pp;
            *c += 1;
        }
        FactorTable {
            interval: *seg,
            offsets,
            powers,
            cofactors: rem,
        }
    }
}

/// Smallest value the largest base prime must reach: the largest prime `<= need`.
fn prime_cover(need: u64) -> u64 {
    let mut n = need;
    while n >= 2 && !super::primes::is_prime(n) {
        n -= 1;
    }
    n
}

fn inverse_mod_2_64(p: u64) -> u64 {
    if p % 2 == 0 {
        return 0;
    }
    // Newton iteration doubles the number of correct low bits each step.
    let mut inv = p;
    for _ in 0..6 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
    }
    inv
}

/// Factors a window with default settings.
pub fn factor_interval(interval: Interval) -> Result<FactorTable> {
    Sieve::for_interval(&interval)?.factor(&interval)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                let mut e = 0;
                while n % d == 0 {
                    n /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(0, 5).is_err());
        assert!(Interval::new(5, 0).is_err());
        assert!(Interval::new(WINDOW_LIMIT - 10, 10).is_err());
        assert!(Interval::new(WINDOW_LIMIT - 11, 10).is_ok());
        assert!(Interval::new(u64::MAX, 10).is_err());
    }

    #[test]
    fn small_window_example() {
        let t = factor_interval(Interval::new(10, 4).unwrap()).unwrap();
        let f: Vec<Vec<(u64, u32)>> = t.entries().map(|e| e.factors().collect()).collect();
        assert_eq!(
            f,
            vec![
                vec![(11, 1)],
                vec![(2, 2), (3, 1)],
                vec![(13, 1)],
                vec![(2, 1), (7, 1)]
            ]
        );
        assert_eq!(t.entry(0).cofactor, 11);
        assert!(t.entry(0).prime_powers.is_empty());
    }

    #[test]
    fn single_entry_window() {
        let t = factor_interval(Interval::new(1, 1).unwrap()).unwrap();
        assert_eq!(t.len(), 1);
        let e = t.entry(0);
        assert_eq!(e.n, 2);
        assert_eq!(e.factors().collect::<Vec<_>>(), vec![(2, 1)]);
        // sqrt(2) < 2, so 2 is left as the cofactor
        assert_eq!(e.cofactor, 2);
    }

    #[test]
    fn matches_trial_division_and_reconstructs() {
        let iv = Interval::new(1, 20_000).unwrap();
        let t = factor_interval(iv).unwrap();
        let bound = isqrt(iv.last());
        for e in t.entries() {
            assert_eq!(e.factors().collect::<Vec<_>>(), trial_factor(e.n), "n = {}", e.n);
            let prod: u64 = e.prime_powers.iter().map(|pp| pp.value()).product::<u64>() * e.cofactor;
            assert_eq!(prod, e.n);
            assert!(e.cofactor == 1 || e.cofactor > bound);
            assert!(e.prime_powers.windows(2).all(|w| w[0].p < w[1].p));
        }
    }

    #[test]
    fn large_window_near_limit() {
        let iv = Interval::new(WINDOW_LIMIT - 1_001, 1_000).unwrap();
        let t = factor_interval(iv).unwrap();
        let root = isqrt(iv.last());
        for e in t.entries() {
            let prod = e.prime_powers.iter().map(|pp| pp.value()).product::<u64>() * e.cofactor;
            assert_eq!(prod, e.n);
            assert!(e.cofactor == 1 || (e.cofactor > root && crate::sieve::primes::is_prime(e.cofactor)));
        }
    }

    #[test]
    fn segmentation_does_not_change_result() {
        let iv = Interval::new(999_999_000_000, 10_000).unwrap();
        let a = Sieve::new(iv.last(), SieveConfig { segment_len: 10_000 })
            .unwrap()
            .factor(&iv)
            .unwrap();
        let b = Sieve::new(iv.last(), SieveConfig { segment_len: 777 })
            .unwrap()
            .factor(&iv)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exact_inverse() {
        for p in [3u64, 5, 7, 65_537, 2_147_483_647] {
            assert_eq!(p.wrapping_mul(inverse_mod_2_64(p)), 1);
        }
    }

    #[test]
    fn insufficient_base_primes_rejected() {
        assert!(Sieve::from_base_primes(10_000, vec![2, 3, 5], SieveConfig::default()).is_err());
        assert!(Sieve::from_base_primes(10_000, base_primes(100).into_iter().map(|p| p as u32).collect(), SieveConfig::default()).is_ok());
    }

    #[test]
    fn window_beyond_limit_rejected() {
        let s = Sieve::new(1000, SieveConfig::default()).unwrap();
        assert!(s.factor(&Interval::new(990, 20).unwrap()).is_err());
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(divisor_k_prime_power(2.0, 3), 4.0);
        assert_eq!(divisor_k_prime_power(3.0, 2), 6.0);
        assert!((divisor_k_prime_power(0.5, 2) - 0.375).abs() < 1e-15);
        assert_eq!(binomial_u128(5, 2), 10);
    }
}
