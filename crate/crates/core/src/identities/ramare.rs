//! Ramaré's identity and the extraction coefficients
//! `a_r = (λ⁺f * wf)(r)`, `w(r) = 1_{r <= x^{ε/4}} 1_{p | r => p in (P,Q]} / (ω_{(P,Q]}(r) + 1)`.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

use super::beta::{beta_sieve_coefficients, SieveCoefficients, SieveSign};
use crate::sieve::{factor_interval, FactorEntry, Interval, PeriodicMultiplicativeFunction};
use crate::{Error, Result};

/// Exact complex rational.
pub type Exact = Complex<BigRational>;

fn exact_int(v: i64) -> Exact {
    Complex::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
}

pub fn exact_to_c64(z: &Exact) -> Complex64 {
    Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// The multiplicative function fed through the identity.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityFunction {
    Mobius,
    Periodic(PeriodicMultiplicativeFunction),
}

impl IdentityFunction {
    pub fn at_prime_power(&self, p: u64, e: u32) -> Result<Exact> {
        match self {
            Self::Mobius => Ok(exact_int(match e {
                0 => 1,
                1 => -1,
                _ => 0,
            })),
            Self::Periodic(spec) => {
                let v = spec.at_prime_power(p, e)?;
                let conv = |t: f64| {
                    BigRational::from_float(t).ok_or_else(|| Error::param("f", format!("non-finite value at {p}^{e}")))
                };
                Ok(Complex::new(conv(v.re)?, conv(v.im)?))
            }
        }
    }

    pub fn eval<I: IntoIterator<Item = (u64, u32)>>(&self, factors: I) -> Result<Exact> {
        let mut acc = exact_int(1);
        for (p, e) in factors {
            if e == 0 {
                continue;
            }
            acc = acc * self.at_prime_power(p, e)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Mobius => Ok(()),
            Self::Periodic(spec) => spec.validate(),
        }
    }
}

fn mobius_of(factors: &[(u64, u32)]) -> i64 {
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.iter().filter(|&&(_, e)| e == 1).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn in_window(p: u64, lo: f64, hi: f64) -> bool {
    (p as f64) > lo && (p as f64) <= hi
}

/// Both sides of Ramaré's identity at `n`:
/// `lhs = μ(n) 1_{(n, P(P,Q)) > 1}` and
/// `rhs = Σ_{p | n, P < p <= Q} μ(p) μ(n/p) / (ω_{(P,Q]}(n/p) + 1)`.
/// They agree whenever no `p in (P, Q]` has `p^2 | n`.
pub fn ramare_identity_eval(entry: &FactorEntry<'_>, p: f64, q: f64) -> (Rational64, Rational64) {
    let factors: Vec<(u64, u32)> = entry.factors().collect();
    let hits = factors.iter().any(|&(pr, _)| in_window(pr, p, q));
    let lhs = Rational64::from_integer(if hits { mobius_of(&factors) } else { 0 });
    let mut rhs = Rational64::zero();
    for (i, &(pr, _)) in factors.iter().enumerate() {
        if !in_window(pr, p, q) {
            continue;
        }
        let mut m = factors.clone();
        m[i].1 -= 1;
        let omega_m = m
            .iter()
            .filter(|&&(r, e)| e > 0 && in_window(r, p, q))
            .count() as i64;
        rhs += Rational64::new(-mobius_of(&m), omega_m + 1);
    }
    (lhs, rhs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamareParams {
    pub x: f64,
    pub eps: f64,
    pub p: f64,
    pub q: f64,
    /// Sieve level; `x^{ε/4}` when absent.
    pub y: Option<f64>,
}

impl RamareParams {
    pub fn new(x: f64, eps: f64, p: f64, q: f64) -> Self {
        Self { x, eps, p, q, y: None }
    }

    pub fn level(&self) -> f64 {
        self.y.unwrap_or_else(|| self.w_limit())
    }

    /// Largest `r` in the support of `w`.
    pub fn w_limit(&self) -> f64 {
        self.x.powf(self.eps / 4.0)
    }

    pub fn support_bound(&self) -> f64 {
        self.x.powf(self.eps / 2.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.x >= 2.0) || !self.x.is_finite() {
            return Err(Error::param("x", format!("must be finite and >= 2, got {}", self.x)));
        }
        if !(self.eps > 0.0 && self.eps <= 1.0) {
            return Err(Error::param("eps", format!("must lie in (0, 1], got {}", self.eps)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamareDecomposition {
    pub params: RamareParams,
    pub function: IdentityFunction,
    pub coefficients: BTreeMap<u64, Exact>,
}

/// `(λ⁺f * wf)(r)` for every `r`, without any check on the support.
pub fn convolution_coefficients(
    lambda: &SieveCoefficients,
    w_limit: f64,
    f: &IdentityFunction,
) -> Result<BTreeMap<u64, Exact>> {
    // w f on (P,Q]-smooth m <= w_limit, generated with its factorization
    let mut wf: Vec<(u64, Exact)> = Vec::new();
    let mut stack: Vec<(usize, u64, Vec<(u64, u32)>)> = vec![(0, 1, Vec::new())];
    while let Some((start, m, fac)) = stack.pop() {
        let fm = f.eval(fac.iter().copied())?;
        if !fm.is_zero() {
            let weight = BigRational::new(BigInt::one(), BigInt::from(fac.len() as u64 + 1));
            wf.push((m, fm.scale(weight)));
        }
        for (i, &p) in lambda.primes.iter().enumerate().skip(start) {
            let mut mm = m;
            let mut e = 0;
            loop {
                match mm.checked_mul(p) {
                    Some(v) if (v as f64) <= w_limit => mm = v,
                    _ => break,
                }
                e += 1;
                let mut f2 = fac.clone();
                f2.push((p, e));
                stack.push((i + 1, mm, f2));
            }
            if e == 0 {
                break;
            }
        }
    }

    let mut out: BTreeMap<u64, Exact> = BTreeMap::new();
    for (&d, &lam) in &lambda.weights {
        let d_factors = lambda.primes.iter().filter(|&&p| d % p == 0).map(|&p| (p, 1));
        let fd = f.eval(d_factors)?;
        if fd.is_zero() {
            continue;
        }
        let ld = fd * exact_int(lam as i64);
        for (m, v) in &wf {
            let r = d.checked_mul(*m).ok_or_else(|| {
                Error::Consistency(format!("product {d} * {m} overflows"))
            })?;
            let entry = out.entry(r).or_insert_with(|| exact_int(0));
            *entry = entry.clone() + ld.clone() * v.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn tau_over(r: u64, primes: &[u64]) -> u64 {
    let mut rem = r;
    let mut tau = 1;
    for &p in primes {
        let mut e = 0;
        while rem % p == 0 {
            rem /= p;
            e += 1;
        }
        tau *= e + 1;
    }
    debug_assert_eq!(rem, 1);
    tau
}

/// Checks `|a_r| <= τ(r)` for every coefficient, exactly.
pub fn tau_bound_violations(coefficients: &BTreeMap<u64, Exact>, window_primes: &[u64]) -> Vec<u64> {
    coefficients
        .iter()
        .filter(|(&r, a)| {
            let tau = BigRational::from_integer(BigInt::from(tau_over(r, window_primes)));
            let norm_sq = a.re.clone() * a.re.clone() + a.im.clone() * a.im.clone();
            norm_sq > tau.clone() * tau
        })
        .map(|(&r, _)| r)
        .collect()
}

pub fn ramare_coefficients(params: RamareParams, f: IdentityFunction) -> Result<RamareDecomposition> {
    params.validate()?;
    f.validate()?;
    let lambda = beta_sieve_coefficients(params.p, params.q, params.level(), SieveSign::Upper)?;
    let coefficients = convolution_coefficients(&lambda, params.w_limit(), &f)?;
    let bound = params.support_bound();
    if let Some((&r, _)) = coefficients.iter().rev().find(|(&r, _)| r as f64 > bound) {
        return Err(Error::SupportOverflow { r, bound });
    }
    if f == IdentityFunction::Mobius {
        if let Some(&r) = tau_bound_violations(&coefficients, &lambda.primes).first() {
            return Err(Error::Consistency(format!("|a_{r}| exceeds tau({r})")));
        }
    }
    Ok(RamareDecomposition {
        params,
        function: f,
        coefficients,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionDefect {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub defect: Complex64,
    /// Number of `(p, r, n)` triples with `x < prn <= x+H` and `a_r != 0`.
    pub terms: u64,
}

/// Compares `Σ_{x<n<=x+H} f(n)` with `Σ_{x<prn<=x+H, P<p<=Q} f(p) a_r f(n)`.
/// For `f = μ` the right side is `-Σ a_r μ(n)`.
pub fn extraction_defect(x: u64, h: u64, params: RamareParams, f: IdentityFunction) -> Result<ExtractionDefect> {
    let dec = ramare_coefficients(params, f)?;
    let table = factor_interval(Interval::new(x, h)?)?;
    let f = &dec.function;
    let mut lhs = exact_int(0);
    let mut rhs = exact_int(0);
    let mut terms = 0u64;
    for entry in table.entries() {
        let factors: Vec<(u64, u32)> = entry.factors().collect();
        lhs = lhs + f.eval(factors.iter().copied())?;
        for (i, &(p, _)) in factors.iter().enumerate() {
            if !in_window(p, params.p, params.q) {
                continue;
            }
            let fp = f.at_prime_power(p, 1)?;
            let mut rest = factors.clone();
            rest[i].1 -= 1;
            // r runs over divisors of the (P,Q]-part of n/p
            let smooth: Vec<(usize, u32)> = rest
                .iter()
                .enumerate()
                .filter(|(_, &(pr, e))| e > 0 && in_window(pr, params.p, params.q))
                .map(|(j, &(_, e))| (j, e))
                .collect();
            let mut exps = vec![0u32; smooth.len()];
            loop {
                let r: u64 = smooth
                    .iter()
                    .zip(&exps)
                    .map(|(&(j, _), &a)| rest[j].0.pow(a))
                    .product();
                if let Some(a_r) = dec.coefficients.get(&r) {
                    let mut n_fac = rest.clone();
                    for (&(j, _), &a) in smooth.iter().zip(&exps) {
                        n_fac[j].1 -= a;
                    }
                    let fn_ = f.eval(n_fac.into_iter())?;
                    rhs = rhs + fp.clone() * a_r.clone() * fn_;
                    terms += 1;
                }
                // odometer over exponent vectors
                let mut pos = 0;
                while pos < exps.len() {
                    if exps[pos] < smooth[pos].1 {
                        exps[pos] += 1;
                        break;
                    }
                    exps[pos] = 0;
                    pos += 1;
                }
                if pos == exps.len() {
                    break;
                }
            }
        }
    }
    let defect = lhs.clone() - rhs.clone();
    Ok(ExtractionDefect {
        lhs: exact_to_c64(&lhs),
        rhs: exact_to_c64(&rhs),
        defect: exact_to_c64(&defect),
        terms,
    })
}

/// `(Σ μ(n), Σ μ(n) 1_{(n,P)>1}, Σ μ(n) 1_{(n,P)=1})` over the window.
pub fn presieve_split(x: u64, h: u64, p: f64, q: f64) -> Result<(i64, i64, i64)> {
    let table = factor_interval(Interval::new(x, h)?)?;
    let (mut total, mut hit, mut coprime) = (0i64, 0i64, 0i64);
    for e in table.entries() {
        let mu = e.mobius() as i64;
        total += mu;
        if e.factors().any(|(pr, _)| in_window(pr, p, q)) {
            hit += mu;
        } else {
            coprime += mu;
        }
    }
    Ok((total, hit, coprime))
}
