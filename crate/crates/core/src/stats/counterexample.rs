//! Two multiplicative functions that agree with μ except at prime powers
//! `p^k >= H` whose (unique) multiple `m p^k` lies in the window, where
//! `f_j(p^k) = (-1)^j μ(m)`. Their short sums differ by `≫ H / log x`.

use serde::{Deserialize, Serialize};

use super::window::window_length;
use crate::sieve::{prime_count_between, FactorEntry, Interval, Sieve};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub interval: Interval,
    /// `Σ (f_2(n) - f_1(n))`.
    pub d: i64,
    /// Contribution of prime `n` (`m = 1`), tallied separately.
    pub prime_term: i64,
    /// `2 (π(x+H) - π(x))` from an independent prime count.
    pub prime_count_term: i64,
    /// `Σ (f_2 - f_1)` over `n` with no prime-power component `>= H`.
    pub untouched_sum: i64,
    /// `H / (2 log x)`.
    pub lower_bound: f64,
}

fn mu_of_power(e: u32) -> i64 {
    if e == 1 {
        -1
    } else {
        0
    }
}

fn multiples_in(interval: &Interval, q: u64) -> u64 {
    interval.last() / q - interval.x() / q
}

/// `(f_1(n), f_2(n), n has a component >= H)`.
fn pair_values(entry: &FactorEntry<'_>, interval: &Interval) -> Result<(i64, i64, bool)> {
    let h = interval.h();
    let (mut f1, mut f2) = (1i64, 1i64);
    let mut touched = false;
    for (p, e) in entry.factors() {
        let pk = p.pow(e);
        if pk >= h {
            if multiples_in(interval, pk) != 1 {
                return Err(Error::Consistency(format!(
                    "{p}^{e} >= H has {} multiples in the window",
                    multiples_in(interval, pk)
                )));
            }
            // the unique multiple is n itself
            let m = entry.n / pk;
            let mu_m = mobius_cofactor(entry, p);
            debug_assert_eq!(m * pk, entry.n);
            f1 *= -mu_m;
            f2 *= mu_m;
            touched = true;
        } else {
            let v = mu_of_power(e);
            f1 *= v;
            f2 *= v;
        }
    }
    Ok((f1, f2, touched))
}

/// μ(n / p^k) where `p^k ∥ n`.
fn mobius_cofactor(entry: &FactorEntry<'_>, p: u64) -> i64 {
    entry
        .factors()
        .filter(|&(q, _)| q != p)
        .map(|(_, e)| mu_of_power(e))
        .product()
}

pub fn counterexample_pair_report(x: u64, theta: f64) -> Result<CounterexampleReport> {
    let h = window_length(x, theta)?;
    let interval = Interval::new(x, h)?;
    let sieve = Sieve::for_interval(&interval)?;
    let parts = sieve.map_segments(&interval, |table| -> Result<(i64, i64, i64)> {
        let (mut d, mut primes, mut untouched) = (0, 0, 0);
        for entry in table.entries() {
            let (f1, f2, touched) = pair_values(&entry, &interval)?;
            if touched {
                d += f2 - f1;
                if entry.omega() == 1 && entry.big_omega() == 1 {
                    primes += f2 - f1;
                }
            } else {
                untouched += f2 - f1;
            }
        }
        Ok((d, primes, untouched))
    })?;
    let mut total = (0, 0, 0);
    for part in parts {
        let (d, p, u) = part?;
        total = (total.0 + d + u, total.1 + p, total.2 + u);
    }
    Ok(CounterexampleReport {
        interval,
        d: total.0,
        prime_term: total.1,
        prime_count_term: 2 * prime_count_between(x, x + h) as i64,
        untouched_sum: total.2,
        lower_bound: h as f64 / (2.0 * (x as f64).ln()),
    })
}
