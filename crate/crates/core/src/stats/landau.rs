//! The Landau-Ramanujan constant
//! `C = 2^{-1/2} prod_{p ≡ 3 (4)} (1 - p^{-2})^{-1/2}`.
//!
//! Two routes: a truncated Euler product with a tail correction, and an
//! accelerated product over `s = 2, 4, 8, ...`. Writing
//! `F(s) = prod_{p ≡ 3 (4)} (1 - p^{-s})^{-1}` and
//! `R(s) = ζ(s) (1 - 2^{-s}) / β(s) = F(s)^2 / F(2s)` gives
//! `F(2) = prod_{j>=1} R(2^j)^{2^{-j}}`, where `β` is the Dirichlet L-function
//! of the character mod 4.

use serde::{Deserialize, Serialize};

use crate::sieve::for_each_prime;
use crate::sum::NeumaierSum;
use crate::{Error, Result};

/// Cutoff of the direct product.
pub const DIRECT_CUTOFF: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandauRamanujan {
    pub value: f64,
    pub direct: f64,
    pub accelerated: f64,
    pub direct_cutoff: u64,
    /// Rigorous bound for the omitted factor in log scale.
    pub tail_bound: f64,
    pub target_digits: u32,
}

/// `2^{-1/2} prod_{p ≡ 3 (4), p <= cutoff} (1 - p^{-2})^{-1/2}`, no tail.
pub fn landau_ramanujan_truncated(cutoff: u64) -> f64 {
    (0.5 * log_f2_partial(cutoff)).exp() / std::f64::consts::SQRT_2
}

fn log_f2_partial(cutoff: u64) -> f64 {
    let mut s = NeumaierSum::new();
    for_each_prime(3, cutoff, |p| {
        if p % 4 == 3 {
            let pf = p as f64;
            s.add(-(-1.0 / (pf * pf)).ln_1p());
        }
    });
    s.value()
}

/// `E_1(z)` for `z >= 10` by its asymptotic series.
fn exp_integral_e1(z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..12 {
        term *= -(k as f64) / z;
        sum += term;
    }
    (-z).exp() / z * sum
}

/// Direct product up to `cutoff` with the tail
/// `Σ_{p > N, p ≡ 3 (4)} p^{-2} ≈ E_1(log N) / 2` added back.
pub fn landau_ramanujan_direct(cutoff: u64) -> (f64, f64) {
    let partial = log_f2_partial(cutoff);
    let n = cutoff as f64;
    let tail = 0.5 * exp_integral_e1(n.ln());
    // every omitted term is at most 1.0001 / n^2 over odd n > N
    let bound = 1.0001 / (2.0 * n);
    ((0.5 * (partial + tail)).exp() / std::f64::consts::SQRT_2, bound)
}

const BERNOULLI_2K: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta `ζ(s, a)` for real `s > 1`, `0 < a <= 1`, by Euler-Maclaurin
/// with 24 explicit terms.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    const N: usize = 24;
    let mut head = NeumaierSum::new();
    for n in (0..N).rev() {
        head.add((n as f64 + a).powf(-s));
    }
    let big = N as f64 + a;
    head.add(big.powf(1.0 - s) / (s - 1.0));
    head.add(0.5 * big.powf(-s));
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * big^{-s-2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = big.powf(-s - 1.0);
    for (k, b) in BERNOULLI_2K.iter().enumerate() {
        head.add(b / fact * rising * pow);
        let m = 2.0 * k as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        fact *= (m + 3.0) * (m + 4.0);
        pow /= big * big;
    }
    head.value()
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> f64 {
    hurwitz_zeta(s, 1.0)
}

/// `β(s) = Σ_{n>=0} (-1)^n (2n+1)^{-s} = 4^{-s} (ζ(s, 1/4) - ζ(s, 3/4))`.
pub fn dirichlet_beta(s: f64) -> f64 {
    4f64.powf(-s) * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75))
}

/// The accelerated value.
pub fn landau_ramanujan_accelerated() -> f64 {
    let mut log_f2 = NeumaierSum::new();
    let mut s = 2.0f64;
    let mut w = 0.5;
    // R(s) - 1 ≈ 2·3^{-s}, so s = 64 already contributes below 1e-30
    while s <= 64.0 {
        let r = zeta(s) * (-(2f64.powf(-s))).ln_1p().exp() / dirichlet_beta(s);
        log_f2.add(w * r.ln());
        s *= 2.0;
        w *= 0.5;
    }
    (0.5 * log_f2.value()).exp() / std::f64::consts::SQRT_2
}

/// Both methods; fails unless they agree to `target_digits` significant
/// digits. Returns the accelerated value.
pub fn landau_ramanujan_constant(target_digits: u32) -> Result<LandauRamanujan> {
    if target_digits > 12 {
        return Err(Error::param("target_digits", format!("must be <= 12, got {target_digits}")));
    }
    let (direct, tail_bound) = landau_ramanujan_direct(DIRECT_CUTOFF);
    let accelerated = landau_ramanujan_accelerated();
    if (direct - accelerated).abs() > 0.5 * 10f64.powi(-(target_digits as i32)) * accelerated {
        return Err(Error::NonAgreement { direct, accelerated });
    }
    Ok(LandauRamanujan {
        value: accelerated,
        direct,
        accelerated,
        direct_cutoff: DIRECT_CUTOFF,
        tail_bound,
        target_digits,
    })
}
