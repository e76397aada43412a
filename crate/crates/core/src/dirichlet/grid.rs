//! Evaluation on a uniform grid of `t` values.
//!
//! Within a block of consecutive grid points the phase `e^{-i t log n}` is
//! advanced by multiplying with `e^{-i h log n}`; each block restarts from an
//! exact `sin_cos` so rounding drift stays below `BLOCK` ulps.

use num_complex::Complex64;
use rayon::prelude::*;

use super::poly::DirichletPolynomial;

const BLOCK: usize = 512;

/// `t_j = t0 + j h` for `j = 0..count`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub t0: f64,
    pub h: f64,
    pub count: usize,
}

impl Grid {
    /// Uniform grid covering `[t0, t1]` with spacing at most `step`.
    pub fn covering(t0: f64, t1: f64, step: f64) -> Self {
        let intervals = ((t1 - t0) / step).ceil().max(0.0) as usize;
        let h = if intervals == 0 { 0.0 } else { (t1 - t0) / intervals as f64 };
        Self {
            t0,
            h,
            count: intervals + 1,
        }
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.t(j))
    }
}

/// Values `poly(σ + i t_j)` on the grid, in grid order.
pub fn eval_grid(poly: &DirichletPolynomial, sigma: f64, grid: &Grid) -> Vec<Complex64> {
    let amp = poly.amplitudes(sigma);
    let steps: Vec<Complex64> = poly
        .logs
        .iter()
        .map(|l| {
            let (s, c) = (grid.h * l).sin_cos();
            Complex64::new(c, -s)
        })
        .collect();
    let blocks: Vec<usize> = (0..grid.count).step_by(BLOCK).collect();
    blocks
        .par_iter()
        .flat_map_iter(|&start| {
            let len = BLOCK.min(grid.count - start);
            let mut vals = vec![Complex64::new(0.0, 0.0); len];
            let t_start = grid.t(start);
            for ((&b, l), &w) in amp.iter().zip(&poly.logs).zip(&steps) {
                let (s, c) = (t_start * l).sin_cos();
                let mut z = Complex64::new(b * c, -b * s);
                for v in vals.iter_mut() {
                    *v += z;
                    z *= w;
                }
            }
            vals
        })
        .collect()
}

/// `|∏_j poly_j(σ + i t)|` on the grid.
pub fn product_modulus(polys: &[DirichletPolynomial], sigma: f64, grid: &Grid) -> Vec<f64> {
    let mut out = vec![1.0; grid.count];
    for p in polys {
        for (o, v) in out.iter_mut().zip(eval_grid(p, sigma, grid)) {
            *o *= v.norm();
        }
    }
    out
}
