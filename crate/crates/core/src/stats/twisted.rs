//! `Σ_{x<n<=x+H} μ(n) e(αn)` with a major/minor arc tag.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rational::{rational_approx, RationalApproximation};
use super::window::{report_with, seeded_starts, window_length, Term, WindowReport};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Arc {
    Major,
    Minor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedReport {
    pub window: WindowReport,
    pub alpha: f64,
    pub b: f64,
    /// `τ = H^2 / (x (log x)^B)`.
    pub tau: f64,
    /// `None` when `τ < 1`: the window is too short for the arc split.
    pub approximation: Option<RationalApproximation>,
    pub arc: Option<Arc>,
    /// `H / (log x)^{1/3 - ε}`.
    pub bound: f64,
}

/// Fractional part of `αn`, accurate to about one ulp of 1 for `n < 2^53`.
/// The product is split into its rounded value and exact error with a
/// fused multiply-add.
pub fn frac_mul(alpha: f64, n: u64) -> f64 {
    let nf = n as f64;
    let p = alpha * nf;
    let err = alpha.mul_add(nf, -p);
    let f = (p - p.floor()) + err;
    f - f.floor()
}

/// `e(u) = exp(2πiu)` after reducing `u` mod 1.
pub fn e(u: f64) -> Complex64 {
    let r = u - u.floor();
    let (s, c) = (std::f64::consts::TAU * r).sin_cos();
    Complex64::new(c, s)
}

pub fn twisted_sum_report(x: u64, h: u64, alpha: f64, b: f64, eps: f64) -> Result<TwistedReport> {
    if !alpha.is_finite() || alpha.abs() >= (1u64 << 52) as f64 {
        return Err(Error::param("alpha", format!("must be finite with |alpha| < 2^52, got {alpha}")));
    }
    // exact for |α| < 2^52, and makes α and α + 1 give the same phases
    let reduced = alpha - alpha.floor();
    let window = report_with(format!("mobius_twisted_{alpha}"), x, h, None, None, move |entry| {
        let mu = entry.mobius();
        Ok(Term::Complex(if mu == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            e(frac_mul(reduced, entry.n)) * mu as f64
        }))
    })?;
    let lx = (x as f64).ln();
    let tau = (h as f64).powi(2) / (x as f64) / lx.powf(b);
    let approximation = if tau >= 1.0 { Some(rational_approx(alpha, tau)?) } else { None };
    let arc = approximation
        .as_ref()
        .map(|r| if (r.q as f64) <= lx.powf(b) { Arc::Major } else { Arc::Minor });
    Ok(TwistedReport {
        window,
        alpha,
        b,
        tau,
        approximation,
        arc,
        bound: h as f64 / lx.powf(1.0 / 3.0 - eps),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistedSummary {
    pub h: u64,
    pub max_abs: f64,
    pub max_over_bound: f64,
}

/// Seeded windows `(x_i, x_i + ⌈x^θ⌉]` with `x_i ∈ [x, 2x)`.
pub fn twisted_windows(
    x: u64,
    theta: f64,
    alpha: f64,
    b: f64,
    eps: f64,
    windows: usize,
    seed: u64,
) -> Result<(Vec<TwistedReport>, TwistedSummary)> {
    let h = window_length(x, theta)?;
    let reports = seeded_starts(x, windows, seed)
        .into_iter()
        .map(|xi| twisted_sum_report(xi, h, alpha, b, eps))
        .collect::<Result<Vec<_>>>()?;
    let max_abs = reports.iter().map(|r| r.window.short_sum.norm()).fold(0.0, f64::max);
    let max_over_bound = reports
        .iter()
        .map(|r| r.window.short_sum.norm() / r.bound)
        .fold(0.0, f64::max);
    Ok((reports, TwistedSummary { h, max_abs, max_over_bound }))
}
