//! Mean values, mean-value-theorem ratios, large values and sup norms on the
//! critical line.

use serde::{Deserialize, Serialize};

use super::grid::{eval_grid, product_modulus, Grid};
use super::poly::{DirichletPolynomial, PolySupport};
use crate::sum::{neumaier, NeumaierSum};
use crate::{Error, Result};

/// Relative change allowed between a grid and its halving.
pub const CONVERGENCE_TOL: f64 = 0.01;
/// Number of halvings tried before a result is reported as unconverged.
pub const MAX_HALVINGS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanValueConfig {
    pub t0: f64,
    pub t1: f64,
    pub step: f64,
    /// Long comparison length, carried for reports.
    pub y1: Option<f64>,
}

impl MeanValueConfig {
    pub fn new(t0: f64, t1: f64, step: f64) -> Result<Self> {
        let c = Self { t0, t1, step, y1: None };
        c.validate()?;
        Ok(c)
    }

    /// Spacing `0.05 / log(2 N_max)`.
    pub fn default_step(n_max: u64) -> f64 {
        0.05 / ((2 * n_max.max(1)) as f64).ln()
    }

    /// `t0 = t1` is accepted so that a single point can be sampled.
    pub fn validate(&self) -> Result<()> {
        if !(self.t0 >= 0.0 && self.t1 >= self.t0 && self.t1.is_finite()) {
            return Err(Error::param("T0", format!("need 0 <= T0 <= T1, got [{}, {}]", self.t0, self.t1)));
        }
        if !(self.step > 0.0) {
            return Err(Error::param("step", format!("must be positive, got {}", self.step)));
        }
        Ok(())
    }

    fn grid(&self, step: f64) -> Grid {
        Grid::covering(self.t0, self.t1, step)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanValueResult {
    pub value: f64,
    pub grid_step: f64,
    pub converged: bool,
}

fn trapezoid(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mut s = NeumaierSum::new();
    s.add(0.5 * values[0]);
    for v in &values[1..values.len() - 1] {
        s.add(*v);
    }
    s.add(0.5 * values[values.len() - 1]);
    s.value() * h
}

fn relative_change(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Trapezoid estimate of `∫_{T0}^{T1} |∏ poly_j(1/2 + it)| dt`. The step is
/// halved until two successive estimates differ by less than 1%.
pub fn mean_value_integral(polys: &[DirichletPolynomial], cfg: &MeanValueConfig) -> Result<MeanValueResult> {
    if polys.is_empty() {
        return Err(Error::param("polys", "need at least one polynomial"));
    }
    cfg.validate()?;
    let estimate = |step: f64| {
        let g = cfg.grid(step);
        (trapezoid(&product_modulus(polys, 0.5, &g), g.h), g.h)
    };
    let mut step = cfg.step;
    let (mut prev, _) = estimate(step);
    for _ in 0..MAX_HALVINGS {
        step /= 2.0;
        let (cur, h) = estimate(step);
        if relative_change(prev, cur) < CONVERGENCE_TOL {
            return Ok(MeanValueResult {
                value: cur,
                grid_step: h,
                converged: true,
            });
        }
        prev = cur;
    }
    Ok(MeanValueResult {
        value: prev,
        grid_step: cfg.grid(step).h,
        converged: false,
    })
}

/// `∫_0^T |poly(1/2 + it)|^2 dt` in closed form:
/// `T Σ b_n^2 + 2 Σ_{m<n} b_m b_n sin(T d) / d` with `b_n = a(n) n^{-1/2}`,
/// `d = log n - log m`.
pub fn mean_square_exact(poly: &DirichletPolynomial, t: f64) -> f64 {
    let b = poly.amplitudes(0.5);
    let l = &poly.logs;
    let mut s = NeumaierSum::new();
    s.add(t * neumaier(b.iter().map(|v| v * v)));
    for m in 0..b.len() {
        let mut row = 0.0;
        for n in m + 1..b.len() {
            let d = l[n] - l[m];
            row += b[n] * (t * d).sin() / d;
        }
        s.add(2.0 * b[m] * row);
    }
    s.value()
}

/// `(∫_0^T |poly(1/2+it)|^2 dt) / ((T + 2N) Σ |a(n)|^2 / n)`.
pub fn mvt_ratio(poly: &DirichletPolynomial, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::param("T", format!("must be positive, got {t}")));
    }
    let diag: f64 = neumaier(poly.amplitudes(0.5).iter().map(|b| b * b));
    if poly.is_empty() || diag == 0.0 {
        return Err(Error::EmptyPolynomial);
    }
    let denom = (t + 2.0 * poly.base() as f64) * diag;
    Ok(mean_square_exact(poly, t) / denom)
}

/// Random `±1` coefficients on `(N, 2N]`.
pub fn random_sign_polynomial(n: u64, seed: u64) -> Result<DirichletPolynomial> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..n).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
    DirichletPolynomial::new(PolySupport::Coeffs { n, coeffs })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LargeValueReport {
    pub threshold: f64,
    pub measure_estimate: f64,
    pub fraction: f64,
    pub sup_observed: f64,
    pub grid_step: f64,
    /// Successive halvings agree to 1% or to one grid cell of measure.
    pub converged: bool,
}

fn exceedance(poly: &DirichletPolynomial, threshold: f64, grid: &Grid) -> (f64, f64) {
    let vals = eval_grid(poly, 0.5, grid);
    let mut hits = 0usize;
    let mut sup = 0.0f64;
    for v in &vals {
        let m = v.norm();
        sup = sup.max(m);
        if m > threshold {
            hits += 1;
        }
    }
    (hits as f64 / vals.len() as f64, sup)
}

/// Share of `[T0, T1]` on which `|poly(1/2+it)|` exceeds `threshold`,
/// estimated by grid sampling.
pub fn large_value_measure(poly: &DirichletPolynomial, threshold: f64, cfg: &MeanValueConfig) -> Result<LargeValueReport> {
    if !(threshold > 0.0) {
        return Err(Error::param("threshold", format!("must be positive, got {threshold}")));
    }
    cfg.validate()?;
    let span = cfg.t1 - cfg.t0;
    let mut step = cfg.step;
    let (mut prev, mut sup) = exceedance(poly, threshold, &cfg.grid(step));
    let mut converged = false;
    let mut h = cfg.grid(step).h;
    for _ in 0..MAX_HALVINGS {
        step /= 2.0;
        let g = cfg.grid(step);
        let (cur, s) = exceedance(poly, threshold, &g);
        sup = sup.max(s);
        let resolution = if span > 0.0 { g.h / span } else { 0.0 };
        let stable = relative_change(prev, cur) < CONVERGENCE_TOL || (prev - cur).abs() <= resolution;
        prev = cur;
        h = g.h;
        if stable {
            converged = true;
            break;
        }
    }
    Ok(LargeValueReport {
        threshold,
        measure_estimate: prev * span,
        fraction: prev,
        sup_observed: sup,
        grid_step: h,
        converged,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: f64,
    pub value: f64,
    pub reference: f64,
}

/// `|P(1+it)|` for `P(s) = Σ_{P1 < p <= min(2P1, cap)} p^{-s}` at each sample,
/// next to `P1^{-σ} (log x)^3 + log x / (|t| + 1)`. Diagnostic only.
pub fn pointwise_prime_decay(p1: u64, cap: Option<u64>, sigma: f64, x: f64, t_samples: &[f64]) -> Result<Vec<DecayRow>> {
    if let Some(t) = t_samples.iter().find(|t| !t.is_finite()) {
        return Err(Error::param("t", format!("non-finite sample {t}")));
    }
    let poly = DirichletPolynomial::new(PolySupport::Primes { p1, cap })?;
    let lx = x.ln();
    Ok(t_samples
        .iter()
        .map(|&t| DecayRow {
            t,
            value: poly.eval(1.0, t).norm(),
            reference: (p1 as f64).powf(-sigma) * lx.powi(3) + lx / (t.abs() + 1.0),
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupReport {
    pub sup: f64,
    pub attained_t: f64,
    pub implied_exponent: f64,
    pub grid_step: f64,
}

/// Grid maximum of `|Σ_{N<n<=2N} n^{-1/2-it}|` on `[T0, T1]`.
pub fn zeta_partial_sup(n: u64, cfg: &MeanValueConfig) -> Result<SupReport> {
    if n < 2 {
        return Err(Error::param("N", format!("must be >= 2, got {n}")));
    }
    cfg.validate()?;
    let poly = DirichletPolynomial::new(PolySupport::ZetaPartial { n })?;
    let g = cfg.grid(cfg.step);
    let vals = eval_grid(&poly, 0.5, &g);
    let (j, sup) = vals
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (j, m)| if m > acc.1 { (j, m) } else { acc });
    Ok(SupReport {
        sup,
        attained_t: g.t(j),
        implied_exponent: sup.ln() / (n as f64).ln(),
        grid_step: g.h,
    })
}
