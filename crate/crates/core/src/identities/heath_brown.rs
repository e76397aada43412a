//! Heath-Brown's identity
//! `μ(n) = Σ_{1<=j<=k} (-1)^{j-1} C(k,j) (1^{*(j-1)} * (μ 1_{[1,X]})^{*j})(n)`
//! for `n <= X^k`, and a generator of the dyadic cases it produces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::DyadicCase;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// The constant function 1.
    SmoothOne,
    /// `μ(n) 1_{n <= X}`.
    MuTruncated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeathBrownTerm {
    pub j: u32,
    pub coefficient: i64,
    pub factors: Vec<FactorKind>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeathBrownDecomposition {
    pub k: u32,
    pub truncation: f64,
    pub terms: Vec<HeathBrownTerm>,
}

pub fn binomial(n: u32, r: u32) -> i64 {
    if r > n {
        return 0;
    }
    (0..r.min(n - r)).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// The `k` signed convolution terms at truncation `X`.
pub fn heath_brown_decomposition(k: u32, truncation: f64) -> Result<HeathBrownDecomposition> {
    if k == 0 {
        return Err(Error::param("k", "must be >= 1"));
    }
    if !(truncation >= 1.0) {
        return Err(Error::param("X", format!("truncation must be >= 1, got {truncation}")));
    }
    let terms = (1..=k)
        .map(|j| {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let mut factors = vec![FactorKind::SmoothOne; (j - 1) as usize];
            factors.extend(std::iter::repeat(FactorKind::MuTruncated).take(j as usize));
            HeathBrownTerm {
                j,
                coefficient: sign * binomial(k, j),
                factors,
            }
        })
        .collect();
    Ok(HeathBrownDecomposition { k, truncation, terms })
}

/// `X = (2x)^{1/k}`.
pub fn truncation_for(x: f64, k: u32) -> f64 {
    (2.0 * x).powf(1.0 / k as f64)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Divisors of `n` (ascending) together with their Möbius values.
fn divisors_with_mobius(n: u64) -> Vec<(u64, i64)> {
    let mut divs = vec![(1u64, 1i64)];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for a in 1..=e {
            pk *= p;
            for i in 0..len {
                let (d, mu) = divs[i];
                divs.push((d * pk, if a == 1 { -mu } else { 0 }));
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Dirichlet convolution restricted to the divisors of `n`.
fn convolve(divs: &[(u64, i64)], f: &[i128], g: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; divs.len()];
    for (i, &(a, _)) in divs.iter().enumerate() {
        if f[i] == 0 {
            continue;
        }
        for (j, &(b, _)) in divs.iter().enumerate() {
            if g[j] == 0 {
                continue;
            }
            let Some(c) = a.checked_mul(b) else { break };
            if let Ok(idx) = divs.binary_search_by_key(&c, |&(d, _)| d) {
                out[idx] += f[i] * g[j];
            }
        }
    }
    out
}

/// Right-hand side of the identity at `n`, by exact integer convolution.
pub fn heath_brown_eval(n: u64, k: u32, truncation: f64) -> Result<i64> {
    let dec = heath_brown_decomposition(k, truncation)?;
    if n == 0 {
        return Err(Error::param("n", "must be >= 1"));
    }
    let limit = truncation.powi(k as i32);
    if n as f64 > limit {
        return Err(Error::OutOfValidity { n, limit });
    }
    let divs = divisors_with_mobius(n);
    let mu_trunc: Vec<i128> = divs
        .iter()
        .map(|&(d, mu)| if d as f64 <= truncation { mu as i128 } else { 0 })
        .collect();
    let ones = vec![1i128; divs.len()];
    let mut delta = vec![0i128; divs.len()];
    delta[0] = 1;

    let mut smooth_pow = delta;
    let mut mu_pow = mu_trunc.clone();
    let mut total = 0i128;
    for term in &dec.terms {
        let value = convolve(&divs, &smooth_pow, &mu_pow)[divs.len() - 1];
        total += term.coefficient as i128 * value;
        if term.j < k {
            smooth_pow = convolve(&divs, &smooth_pow, &ones);
            mu_pow = convolve(&divs, &mu_pow, &mu_trunc);
        }
    }
    Ok(total as i64)
}

/// Builds the exponent form of one dyadic case: slots `0..k-1` hold the
/// smooth variables `N_1..N_{k-1}`, slots `k-1..2k-1` the truncated Möbius
/// variables `N_k..N_{2k-1}`.
fn case_from_slots(
    log_x: f64,
    k: usize,
    eps: f64,
    p1: f64,
    smooth: &[f64],
    mu: &[f64],
) -> Result<DyadicCase> {
    let mut n = vec![0.0; 2 * k - 1];
    n[..smooth.len()].copy_from_slice(smooth);
    n[k - 1..k - 1 + mu.len()].copy_from_slice(mu);
    DyadicCase::new(log_x, p1, 0.0, n, k, eps)
}

/// Symbolic size of `x` used by the generators: the ≍ slack `2^{2k+2}` and
/// the factor 2 in `(2x)^{1/k}` are negligible on the exponent grid.
pub const GENERATOR_LOG_X: f64 = 1.0e4;

/// Seeded random dyadic cases with exponents on a grid of the given step.
/// The Möbius variables are capped at `1/k`, the small prime takes exponent
/// 0 or one grid step, and the smooth and Möbius slots receive random skewed
/// shares of the remaining mass.
pub fn sample_dyadic_cases(k: usize, eps: f64, step: f64, count: usize, seed: u64) -> Result<Vec<DyadicCase>> {
    if k < 2 {
        return Err(Error::param("k", "must be >= 2"));
    }
    let units_total = (1.0 / step).round() as usize;
    let mu_cap = ((1.0 / k as f64) / step + 1e-9).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p1_units = rng.gen_range(0..=((eps / step + 1e-9).floor() as usize).min(1));
        let units = units_total - p1_units;
        let n_smooth = rng.gen_range(0..k);
        let n_mu = rng.gen_range(0..=k);
        if n_smooth == 0 && n_mu * mu_cap < units {
            continue;
        }
        let slots = n_smooth + n_mu;
        let gamma: f64 = rng.gen_range(1.0..5.0);
        let weights: Vec<f64> = (0..slots).map(|_| rng.gen::<f64>().powf(gamma) + 1e-6).collect();
        let wsum: f64 = weights.iter().sum();
        let cap = |i: usize| if i < n_smooth { units } else { mu_cap };
        let mut alloc: Vec<usize> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| ((units as f64 * w / wsum).floor() as usize).min(cap(i)))
            .collect();
        let mut left = units - alloc.iter().sum::<usize>();
        while left > 0 {
            let open: Vec<usize> = (0..slots).filter(|&i| alloc[i] < cap(i)).collect();
            let i = open[rng.gen_range(0..open.len())];
            alloc[i] += 1;
            left -= 1;
        }
        let smooth: Vec<f64> = alloc[..n_smooth].iter().map(|&u| u as f64 * step).collect();
        let mu: Vec<f64> = alloc[n_smooth..].iter().map(|&u| u as f64 * step).collect();
        out.push(case_from_slots(GENERATOR_LOG_X, k, eps, p1_units as f64 * step, &smooth, &mu)?);
    }
    Ok(out)
}

fn partitions(n: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=max_part.min(n)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// Every dyadic case whose exponents are multiples of `1/units`, up to the
/// order of the variables inside each class.
pub fn all_dyadic_cases(k: usize, eps: f64, units: usize) -> Result<Vec<DyadicCase>> {
    if k < 2 {
        return Err(Error::param("k", "must be >= 2"));
    }
    let step = 1.0 / units as f64;
    let mu_cap = ((1.0 / k as f64) / step + 1e-9).floor() as usize;
    let mut parts = Vec::new();
    partitions(units, units, &mut Vec::new(), &mut parts);
    let mut out = Vec::new();
    for p in parts {
        if p.len() > 2 * k - 1 {
            continue;
        }
        // parts small enough to be Möbius variables, by size
        let eligible: Vec<(usize, usize)> = (1..=mu_cap)
            .map(|s| (s, p.iter().filter(|&&v| v == s).count()))
            .filter(|&(_, c)| c > 0)
            .collect();
        let mut counts = vec![0usize; eligible.len()];
        loop {
            let n_mu: usize = counts.iter().sum();
            let n_smooth = p.len() - n_mu;
            if n_mu <= k && n_smooth < k {
                let mut mu = Vec::new();
                let mut taken = vec![0usize; eligible.len()];
                let mut smooth = Vec::new();
                for &v in &p {
                    match eligible.iter().position(|&(s, _)| s == v) {
                        Some(e) if taken[e] < counts[e] => {
                            taken[e] += 1;
                            mu.push(v as f64 * step);
                        }
                        _ => smooth.push(v as f64 * step),
                    }
                }
                out.push(case_from_slots(GENERATOR_LOG_X, k, eps, 0.0, &smooth, &mu)?);
            }
            let mut pos = 0;
            while pos < counts.len() {
                if counts[pos] < eligible[pos].1 {
                    counts[pos] += 1;
                    break;
                }
                counts[pos] = 0;
                pos += 1;
            }
            if pos == counts.len() {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Full-array oracle: convolution powers over all integers up to `n_max`.
    fn oracle(n_max: usize, k: u32, truncation: f64) -> Vec<i64> {
        let mut mu = vec![1i64; n_max + 1];
        let mut is_comp = vec![false; n_max + 1];
        for p in 2..=n_max {
            if !is_comp[p] {
                for m in (p..=n_max).step_by(p) {
                    if m > p {
                        is_comp[m] = true;
                    }
                    mu[m] = -mu[m];
                }
                let p2 = p * p;
                for m in (p2..=n_max).step_by(p2) {
                    mu[m] = 0;
                }
            }
        }
        let conv = |f: &[i64], g: &[i64]| {
            let mut h = vec![0i64; n_max + 1];
            for a in 1..=n_max {
                if f[a] == 0 {
                    continue;
                }
                for b in 1..=n_max / a {
                    h[a * b] += f[a] * g[b];
                }
            }
            h
        };
        let g: Vec<i64> = (0..=n_max)
            .map(|n| if n >= 1 && n as f64 <= truncation { mu[n] } else { 0 })
            .collect();
        let mut ones = vec![1i64; n_max + 1];
        ones[0] = 0;
        let mut delta = vec![0i64; n_max + 1];
        delta[1] = 1;
        let mut total = vec![0i64; n_max + 1];
        let mut smooth_pow = delta;
        let mut mu_pow = g.clone();
        for j in 1..=k {
            let t = conv(&smooth_pow, &mu_pow);
            let c = if j % 2 == 1 { 1 } else { -1 } * binomial(k, j);
            for n in 1..=n_max {
                total[n] += c * t[n];
            }
            smooth_pow = conv(&smooth_pow, &ones);
            mu_pow = conv(&mu_pow, &g);
        }
        assert_eq!(total[1..], mu[1..], "the oracle itself must reproduce mu");
        total
    }

    #[test]
    fn decomposition_shape() {
        let d = heath_brown_decomposition(4, 10.0).unwrap();
        let coeffs: Vec<i64> = d.terms.iter().map(|t| t.coefficient).collect();
        assert_eq!(coeffs, vec![4, -6, 4, -1]);
        assert_eq!(d.terms[2].factors.len(), 5);
        assert!(heath_brown_decomposition(0, 10.0).is_err());
        assert!(heath_brown_decomposition(2, 0.5).is_err());
    }

    #[test]
    fn n_one() {
        for k in 1..=6 {
            assert_eq!(heath_brown_eval(1, k, 2.0).unwrap(), 1);
        }
    }

    #[test]
    fn prime_k2() {
        for p in [2u64, 3, 5, 7] {
            assert_eq!(heath_brown_eval(p, 2, 8.0).unwrap(), -1);
        }
    }

    #[test]
    fn matches_oracle() {
        let n_max = 3000usize;
        for k in [2u32, 3, 4] {
            let x = (n_max as f64).powf(1.0 / k as f64).ceil() + 1.0;
            let expect = oracle(n_max, k, x);
            for n in 1..=n_max as u64 {
                assert_eq!(heath_brown_eval(n, k, x).unwrap(), expect[n as usize], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn out_of_validity() {
        assert!(matches!(heath_brown_eval(101, 2, 10.0), Err(Error::OutOfValidity { .. })));
        assert!(heath_brown_eval(100, 2, 10.0).is_ok());
    }

    #[test]
    fn generators_produce_valid_cases() {
        let s = sample_dyadic_cases(20, 0.01, 0.01, 200, 7).unwrap();
        assert_eq!(s.len(), 200);
        let again = sample_dyadic_cases(20, 0.01, 0.01, 200, 7).unwrap();
        assert_eq!(s, again);
        let all = all_dyadic_cases(20, 0.01, 20).unwrap();
        assert!(all.len() > 627);
    }
}
