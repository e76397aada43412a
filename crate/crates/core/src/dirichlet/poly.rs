use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::sieve::{factor_interval, for_each_prime, Interval};
use crate::sum::ComplexSum;
use crate::{Error, Result};

/// Terms beyond this count are summed with compensation.
pub const COMPENSATED_ABOVE: usize = 100_000;

/// Coefficient family of a Dirichlet polynomial on `(N, 2N]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolySupport {
    /// `a(n) = 1`.
    ZetaPartial { n: u64 },
    /// `a(n) = log n`.
    ZetaLogPartial { n: u64 },
    /// `a(p) = 1` on primes `p in (P1, 2P1]` with `p <= cap`.
    Primes { p1: u64, cap: Option<u64> },
    /// `a(n) = μ(n) 1_{n <= X}`.
    MuTruncated { n: u64, x: u64 },
    /// Explicit `a(N+1), ..., a(2N)`.
    Coeffs { n: u64, coeffs: Vec<f64> },
}

/// Nonzero terms `a(n) n^{-s}` kept as `(n, a(n), log n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletPolynomial {
    pub support: PolySupport,
    pub ns: Vec<u64>,
    pub coeffs: Vec<f64>,
    pub logs: Vec<f64>,
}

impl DirichletPolynomial {
    pub fn new(support: PolySupport) -> Result<Self> {
        let (ns, coeffs): (Vec<u64>, Vec<f64>) = match &support {
            PolySupport::ZetaPartial { n } => (n + 1..=2 * n).map(|m| (m, 1.0)).unzip(),
            PolySupport::ZetaLogPartial { n } => (n + 1..=2 * n).map(|m| (m, (m as f64).ln())).unzip(),
            PolySupport::Primes { p1, cap } => {
                let hi = cap.map_or(2 * p1, |c| c.min(2 * p1));
                let mut v = Vec::new();
                if hi > *p1 {
                    for_each_prime(p1 + 1, hi, |p| v.push((p, 1.0)));
                }
                v.into_iter().unzip()
            }
            PolySupport::MuTruncated { n, x } => {
                let hi = (2 * n).min(*x);
                if hi <= *n {
                    (Vec::new(), Vec::new())
                } else {
                    let t = factor_interval(Interval::new(*n, hi - n)?)?;
                    t.entries()
                        .filter(|e| e.mobius() != 0)
                        .map(|e| (e.n, e.mobius() as f64))
                        .unzip()
                }
            }
            PolySupport::Coeffs { n, coeffs } => {
                if coeffs.len() as u64 != *n {
                    return Err(Error::param(
                        "coeffs",
                        format!("need N = {n} coefficients for (N, 2N], got {}", coeffs.len()),
                    ));
                }
                if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
                    return Err(Error::param("coeffs", format!("non-finite coefficient {c}")));
                }
                (n + 1..=2 * n)
                    .zip(coeffs.iter().copied())
                    .filter(|&(_, a)| a != 0.0)
                    .unzip()
            }
        };
        let logs = ns.iter().map(|&m| (m as f64).ln()).collect();
        Ok(Self {
            support,
            ns,
            coeffs,
            logs,
        })
    }

    /// The `N` of the range `(N, 2N]`.
    pub fn base(&self) -> u64 {
        match &self.support {
            PolySupport::ZetaPartial { n }
            | PolySupport::ZetaLogPartial { n }
            | PolySupport::MuTruncated { n, .. }
            | PolySupport::Coeffs { n, .. } => *n,
            PolySupport::Primes { p1, .. } => *p1,
        }
    }

    pub fn len(&self) -> usize {
        self.ns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ns.is_empty()
    }

    /// `a(n) n^{-σ}` for every term.
    pub fn amplitudes(&self, sigma: f64) -> Vec<f64> {
        self.coeffs
            .iter()
            .zip(&self.logs)
            .map(|(a, l)| a * (-sigma * l).exp())
            .collect()
    }

    /// `Σ |a(n)| n^{-σ}`, the trivial bound on the line `σ`.
    pub fn trivial_bound(&self, sigma: f64) -> f64 {
        self.amplitudes(sigma).iter().map(|b| b.abs()).sum()
    }

    /// `Σ a(n) n^{-σ-it}` by direct summation.
    pub fn eval(&self, sigma: f64, t: f64) -> Complex64 {
        let terms = self.coeffs.iter().zip(&self.logs).map(|(a, l)| {
            let (s, c) = (t * l).sin_cos();
            a * (-sigma * l).exp() * Complex64::new(c, -s)
        });
        if self.len() > COMPENSATED_ABOVE {
            let mut acc = ComplexSum::new();
            terms.for_each(|z| acc.add(z));
            acc.value()
        } else {
            terms.sum()
        }
    }
}
