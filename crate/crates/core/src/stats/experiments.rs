//! Short-window experiments for μ, sums of two squares, τ_k, E₂ numbers and
//! periodic multiplicative functions.

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::landau::landau_ramanujan_accelerated;
use super::window::{arithmetic_term, periodic_term, report_with, seeded_starts, window_length, WindowReport};
use crate::sieve::{for_each_prime, ArithmeticFunctionId, Interval, PeriodicMultiplicativeFunction, Sieve};
use crate::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_861;

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusWindow {
    pub x: u64,
    pub h: u64,
    pub short_sum: i64,
    /// `H / (log x)^{1/3 - ε}`.
    pub bound: f64,
    /// `|S| / sqrt(H)`.
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusSummary {
    pub h: u64,
    pub max_abs: i64,
    pub max_over_bound: f64,
    pub mean_abs_over_h: f64,
    pub rms_normalized: f64,
}

/// Möbius sums over seeded windows `(x_i, x_i + ⌈x^θ⌉]`, `x_i ∈ [x, 2x)`.
pub fn mobius_bound_report(
    x: u64,
    theta: f64,
    eps: f64,
    windows: usize,
    seed: u64,
) -> Result<(Vec<MobiusWindow>, MobiusSummary)> {
    if windows == 0 {
        return Err(Error::param("windows", "need at least one window"));
    }
    let h = window_length(x, theta)?;
    let rows = seeded_starts(x, windows, seed)
        .into_iter()
        .map(|xi| {
            let s = super::short_sum(ArithmeticFunctionId::Mobius, Interval::new(xi, h)?)?.re as i64;
            Ok(MobiusWindow {
                x: xi,
                h,
                short_sum: s,
                bound: h as f64 / (xi as f64).ln().powf(1.0 / 3.0 - eps),
                normalized: s.abs() as f64 / (h as f64).sqrt(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = rows.len() as f64;
    let summary = MobiusSummary {
        h,
        max_abs: rows.iter().map(|r| r.short_sum.abs()).max().unwrap_or(0),
        max_over_bound: rows.iter().map(|r| r.short_sum.abs() as f64 / r.bound).fold(0.0, f64::max),
        mean_abs_over_h: rows.iter().map(|r| r.short_sum.abs() as f64).sum::<f64>() / (n * h as f64),
        rms_normalized: (rows.iter().map(|r| r.normalized.powi(2)).sum::<f64>() / n).sqrt(),
    };
    Ok((rows, summary))
}

/// Count of sums of two squares against `C H / sqrt(log x)`.
pub fn two_squares_window_report(x: u64, h: u64, y1: Option<u64>) -> Result<WindowReport> {
    let c = landau_ramanujan_accelerated();
    let main = c * h as f64 / (x as f64).ln().sqrt();
    let f = ArithmeticFunctionId::TwoSquaresIndicator;
    report_with(f.name(), x, h, y1, Some(real(main)), arithmetic_term(f))
}

/// How the main term of `Σ τ_k` was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "representation", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DivisorMainTerm {
    /// Density polynomial `P_{k-1}(u)` in `u = log x`, by coefficients of
    /// `u^0, u^1, ...`.
    ExplicitPoly { coefficients: Vec<f64> },
    /// Long-window density only.
    Proxy,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub k: f64,
    pub main: DivisorMainTerm,
    pub window: WindowReport,
}

/// `Σ τ_k` over the window. For `k = 2` the main term is `(log x + 2γ) H`,
/// the derivative of `Σ_{n<=x} τ(n) ≈ x (log x + 2γ - 1)`; every `k` also
/// gets the long-window proxy when `y1` is given.
pub fn divisor_window_report(x: u64, h: u64, k: f64, y1: Option<u64>) -> Result<DivisorReport> {
    let f = ArithmeticFunctionId::Divisor { k };
    f.validate()?;
    let main = if k == 2.0 {
        DivisorMainTerm::ExplicitPoly {
            coefficients: vec![2.0 * EULER_GAMMA, 1.0],
        }
    } else if k == 1.0 {
        DivisorMainTerm::ExplicitPoly { coefficients: vec![1.0] }
    } else {
        DivisorMainTerm::Proxy
    };
    let main_term = match &main {
        DivisorMainTerm::ExplicitPoly { coefficients } => {
            let u = (x as f64).ln();
            let p = coefficients.iter().rev().fold(0.0, |acc, c| acc * u + c);
            Some(real(p * h as f64))
        }
        DivisorMainTerm::Proxy => None,
    };
    let window = report_with(f.name(), x, h, y1, main_term, arithmetic_term(f))?;
    Ok(DivisorReport { k, main, window })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E2Split {
    /// `exp((log log x)^2)`.
    pub lower: f64,
    /// `x^ε`.
    pub upper: f64,
    pub total: u64,
    /// E₂ numbers whose smallest prime factor lies in `[lower, upper]`.
    pub in_range: u64,
    pub excluded: u64,
    pub excluded_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct E2Report {
    pub window: WindowReport,
    pub split: E2Split,
}

/// Count of `n` with Ω(n) = 2 against `H log log x / log x`, with the split
/// by the size of the smallest prime factor.
pub fn e2_window_report(x: u64, h: u64, eps: f64, y1: Option<u64>) -> Result<E2Report> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param("eps", format!("must lie in (0, 1), got {eps}")));
    }
    let lx = (x as f64).ln();
    let f = ArithmeticFunctionId::E2Indicator;
    let main = h as f64 * lx.ln() / lx;
    let window = report_with(f.name(), x, h, y1, Some(real(main)), arithmetic_term(f))?;

    let lower = lx.ln().powi(2).exp();
    let upper = (x as f64).powf(eps);
    let interval = Interval::new(x, h)?;
    let parts = Sieve::for_interval(&interval)?.map_segments(&interval, |t| {
        let (mut total, mut inside) = (0u64, 0u64);
        for e in t.entries().filter(|e| e.is_e2()) {
            total += 1;
            let p1 = e.smallest_prime().expect("E2 numbers have a prime factor") as f64;
            if p1 >= lower && p1 <= upper {
                inside += 1;
            }
        }
        (total, inside)
    })?;
    let (total, in_range) = parts.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let excluded = total - in_range;
    let split = E2Split {
        lower,
        upper,
        total,
        in_range,
        excluded,
        excluded_fraction: if total == 0 { 0.0 } else { excluded as f64 / total as f64 },
    };
    Ok(E2Report { window, split })
}

/// Primes up to this bound enter the error-shape product individually.
const SHAPE_DIRECT_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodicReport {
    pub window: WindowReport,
    /// `exp((log x)^{2/3 + ε/2})`.
    pub p: f64,
    /// `x^{1/(log log x)^2}`.
    pub q: f64,
    /// `(H / log x) prod_{p <= x, p ∉ [P, Q]} (1 + |f(p)|/p)`; primes above
    /// 10^7 enter through a Mertens-type estimate.
    pub error_shape: f64,
    /// `|short/H - long/y1|`.
    pub mean_gap: f64,
    /// `|long / y1|`.
    pub long_mean: f64,
}

fn mean_prime_modulus(spec: &PeriodicMultiplicativeFunction) -> f64 {
    let d = spec.modulus;
    let units: Vec<u64> = (0..d).filter(|b| b.gcd(&d) == 1).collect();
    units
        .iter()
        .map(|b| spec.prime_values.get(b).map_or(0.0, |v| v.norm()))
        .sum::<f64>()
        / units.len() as f64
}

fn error_shape(spec: &PeriodicMultiplicativeFunction, x: f64, h: f64, p: f64, q: f64) -> Result<f64> {
    let limit = (x as u64).min(SHAPE_DIRECT_LIMIT);
    let mut log_prod = 0.0;
    let mut failure = None;
    for_each_prime(2, limit, |pr| {
        let pf = pr as f64;
        if pf >= p && pf <= q {
            return;
        }
        match spec.at_prime(pr) {
            Ok(v) => log_prod += (v.norm() / pf).ln_1p(),
            Err(e) => {
                failure.get_or_insert(e);
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    if x > limit as f64 {
        let ll = |t: f64| t.ln().ln();
        let lo = limit as f64;
        let mut span = ll(x) - ll(lo);
        if p < q {
            let (a, b) = (p.max(lo), q.min(x));
            if a < b {
                span -= ll(b) - ll(a);
            }
        }
        log_prod += mean_prime_modulus(spec) * span;
    }
    Ok(h / x.ln() * log_prod.exp())
}

/// Short sum against `(H / y1) Σ_{x<n<=x+y1} f(n)`.
pub fn periodic_multiplicative_report(
    spec: &PeriodicMultiplicativeFunction,
    x: u64,
    h: u64,
    y1: u64,
    eps: f64,
) -> Result<PeriodicReport> {
    spec.validate()?;
    let name = format!("periodic_mod_{}", spec.modulus);
    let window = report_with(name, x, h, Some(y1), None, periodic_term(spec))?;
    let xf = x as f64;
    let lx = xf.ln();
    let p = lx.powf(2.0 / 3.0 + eps / 2.0).exp();
    let q = xf.powf(1.0 / lx.ln().powi(2));
    let long = window.proxy_term.expect("y1 given") / h as f64;
    Ok(PeriodicReport {
        p,
        q,
        error_shape: error_shape(spec, xf, h as f64, p, q)?,
        mean_gap: window.mean_gap().expect("y1 given"),
        long_mean: long.norm(),
        window,
    })
}
