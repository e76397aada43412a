//! The thirteen acceptance criteria. Oracles (trial division, plain sieves,
//! hyperbola counts, quadrature, exact rationals) are written out here and do
//! not go through the library code paths they check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Duration;

use shortsums::decomposition::{brute_force_classify, classify_exponents, random_tuple, ClassifiedCase};
use shortsums::dirichlet::{
    large_value_measure, mvt_ratio, random_sign_polynomial, DirichletPolynomial, MeanValueConfig, PolySupport,
};
use shortsums::identities::{
    beta_sieve_coefficients, convolution_coefficients, heath_brown_eval, ramare_coefficients, ramare_identity_eval,
    IdentityFunction, RamareParams, SieveSign,
};
use shortsums::sieve::{factor_interval, FactorEntry, Interval};
use shortsums::stats::{
    counterexample_pair_report, divisor_window_report, e2_window_report, landau_ramanujan_constant,
    mobius_bound_report, rational_approx, twisted_windows, two_squares_window_report,
};
use shortsums_verification::{Runner, Verdict};

const GAMMA: f64 = 0.577_215_664_901_532_9;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Smallest prime factor of every `n <= limit`.
fn spf_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

fn factorize(mut n: usize, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n] as usize;
        n /= p;
        match out.last_mut() {
            Some((q, e)) if *q == p as u64 => *e += 1,
            _ => out.push((p as u64, 1)),
        }
    }
    out
}

fn mobius_of(f: &[(u64, u32)]) -> i64 {
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn trial_tau(mut r: u64) -> u64 {
    let mut tau = 1;
    let mut p = 2;
    while p * p <= r {
        let mut e = 0;
        while r % p == 0 {
            r /= p;
            e += 1;
        }
        tau *= e + 1;
        p += 1;
    }
    if r > 1 {
        tau *= 2;
    }
    tau
}

/// Every integer in `[1, limit]` with its library factorization.
fn library_entries(limit: u64, mut f: impl FnMut(&FactorEntry<'_>)) {
    f(&FactorEntry {
        n: 1,
        prime_powers: &[],
        cofactor: 1,
    });
    let table = factor_interval(Interval::new(1, limit - 1).unwrap()).unwrap();
    table.entries().for_each(|e| f(&e));
}

/// Möbius sum over `(x, x+h]` by a plain segmented sieve.
fn mobius_window_oracle(x: u64, h: u64) -> i64 {
    let hi = x + h;
    let root = (hi as f64).sqrt() as u64 + 1;
    let spf = spf_table(root as usize);
    let mut rem: Vec<u64> = (x + 1..=hi).collect();
    let mut mu = vec![1i64; h as usize];
    for p in 2..=root {
        if spf[p as usize] as u64 != p {
            continue;
        }
        let mut m = (x / p + 1) * p;
        while m <= hi {
            let i = (m - x - 1) as usize;
            if (m / p) % p == 0 {
                mu[i] = 0;
            } else {
                mu[i] = -mu[i];
            }
            while rem[i] % p == 0 {
                rem[i] /= p;
            }
            m += p;
        }
    }
    (0..h as usize)
        .map(|i| if rem[i] > 1 { -mu[i] } else { mu[i] })
        .sum()
}

fn criterion_1() -> Verdict {
    let limit = 10_000usize;
    let spf = spf_table(limit);
    let mut mismatches = 0;
    for k in 2u32..=4 {
        let x_trunc = (limit as f64).powf(1.0 / k as f64).ceil() + 1.0;
        for n in 1..=limit {
            let mu = mobius_of(&factorize(n, &spf));
            if heath_brown_eval(n as u64, k, x_trunc).unwrap() != mu {
                mismatches += 1;
            }
        }
    }
    Verdict::new(mismatches == 0, format!("{mismatches} mismatches over n <= 10^4, k = 2, 3, 4"))
}

fn criterion_2() -> Verdict {
    let (p, q) = (2.0, 1_000.0);
    let limit = 100_000u64;
    let spf = spf_table(limit as usize);
    let (mut checked, mut bad) = (0u64, 0u64);
    library_entries(limit, |e| {
        let own = factorize(e.n as usize, &spf);
        let in_w = |pr: u64| pr > 2 && pr <= 1_000;
        if own.iter().any(|&(pr, k)| k >= 2 && in_w(pr)) {
            return;
        }
        checked += 1;
        let (lhs, rhs) = ramare_identity_eval(e, p, q);
        let oracle = if own.iter().any(|&(pr, _)| in_w(pr)) { mobius_of(&own) } else { 0 };
        if lhs != rhs || lhs != num_rational::Rational64::from_integer(oracle) {
            bad += 1;
        }
    });
    Verdict::new(bad == 0, format!("{checked} admissible n <= 10^5, {bad} failures"))
}

fn criterion_3() -> Verdict {
    let limit = 100_000usize;
    let spf = spf_table(limit);
    let mut detail = Vec::new();
    let mut ok = true;
    for y in [100.0, 10_000.0] {
        let upper = beta_sieve_coefficients(3.0, 300.0, y, SieveSign::Upper).unwrap();
        let lower = beta_sieve_coefficients(3.0, 300.0, y, SieveSign::Lower).unwrap();
        let mut bad = 0;
        for m in 1..=limit {
            let primes: Vec<u64> = factorize(m, &spf)
                .into_iter()
                .map(|f| f.0)
                .filter(|&p| p > 3 && p <= 300)
                .collect();
            let indicator = i64::from(primes.is_empty());
            let (mut up, mut lo) = (0i64, 0i64);
            for mask in 0u32..1 << primes.len() {
                let d: u64 = primes
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .product();
                up += upper.weight(d) as i64;
                lo += lower.weight(d) as i64;
            }
            if !(lo <= indicator && indicator <= up) {
                bad += 1;
            }
        }
        ok &= bad == 0;
        detail.push(format!("y = {y}: |supp+| = {}, {bad} failures", upper.weights.len()));
    }
    Verdict::new(ok, detail.join("; "))
}

fn tau_bound_ok(coeffs: &BTreeMap<u64, shortsums::identities::Exact>) -> (usize, usize) {
    let mut bad = 0;
    for (&r, a) in coeffs {
        let tau = BigRational::from_integer(BigInt::from(trial_tau(r)));
        let norm_sq = a.re.clone() * a.re.clone() + a.im.clone() * a.im.clone();
        if norm_sq > tau.clone() * tau {
            bad += 1;
        }
    }
    (coeffs.len(), bad)
}

fn criterion_4() -> Verdict {
    let params = RamareParams::new(1e6, 0.4, 20.0, 100.0);
    let dec = match ramare_coefficients(params, IdentityFunction::Mobius) {
        Ok(d) => d,
        Err(e) => return Verdict::new(false, format!("coefficients failed: {e}")),
    };
    let (n_default, bad_default) = tau_bound_ok(&dec.coefficients);
    let wide = beta_sieve_coefficients(20.0, 100.0, 10_000.0, SieveSign::Upper).unwrap();
    // x^(eps/4) < P here, so the second check also truncates w at Q^2
    let coeffs = convolution_coefficients(&wide, 10_000.0, &IdentityFunction::Mobius).unwrap();
    let (n_wide, bad_wide) = tau_bound_ok(&coeffs);
    Verdict::new(
        bad_default == 0 && bad_wide == 0,
        format!(
            "level x^(eps/4): {n_default} coefficients, {bad_default} violations; level Q^2: {n_wide} coefficients, {bad_wide} violations"
        ),
    )
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_501);
    let (mut bad, mut case1) = (0, 0);
    for _ in 0..100_000 {
        let t = random_tuple(&mut rng, 12, 0.01);
        let Ok(case) = classify_exponents(&t) else {
            bad += 1;
            continue;
        };
        let oracle = brute_force_classify(&t).unwrap();
        let is1 = matches!(case, ClassifiedCase::Case1 { .. });
        case1 += usize::from(is1);
        if !case.satisfies_invariant(&t.alphas) || is1 != matches!(oracle, Some(ClassifiedCase::Case1 { .. })) {
            bad += 1;
        }
    }
    Verdict::new(bad == 0, format!("10^5 tuples, {case1} in case 1, {bad} failures"))
}

fn criterion_6() -> Verdict {
    let x = 10_000_000_000u64;
    let (rows, s) = mobius_bound_report(x, 0.56, 0.0, 20, 6).unwrap();
    let bound = s.h as f64 / (x as f64).ln().powf(1.0 / 3.0);
    let oracle = mobius_window_oracle(rows[0].x, rows[0].h);
    Verdict::new(
        oracle == rows[0].short_sum && (s.max_abs as f64) <= bound && s.mean_abs_over_h <= 0.01,
        format!(
            "H = {}, max |S| = {} vs bound {bound:.0}, mean |S|/H = {:.2e}, window 0 oracle {}",
            s.h, s.max_abs, s.mean_abs_over_h, oracle == rows[0].short_sum
        ),
    )
}

fn criterion_7() -> Verdict {
    let c = match landau_ramanujan_constant(8) {
        Ok(c) => c,
        Err(e) => return Verdict::new(false, e.to_string()),
    };
    let r = two_squares_window_report(10_000_000_000, 10_000_000, None).unwrap();
    let defect = r.relative_defect_main.unwrap();
    Verdict::new(
        (c.value - 0.764_223_65).abs() < 5e-9 && defect <= 0.05,
        format!("C = {:.10} (direct {:.10}), two-squares defect {defect:.4}", c.value, c.direct),
    )
}

fn criterion_8() -> Verdict {
    let (x, h) = (1_000_000u64, 10_000u64);
    let hyperbola = |n: u64| -> u64 {
        let r = (n as f64).sqrt() as u64;
        2 * (1..=r).map(|d| n / d).sum::<u64>() - r * r
    };
    let oracle = hyperbola(x + h) - hyperbola(x);
    let r2 = divisor_window_report(x, h, 2.0, None).unwrap();
    let sum = r2.window.short_sum.re;
    let stated = ((x as f64).ln() + 2.0 * GAMMA - 1.0) * h as f64;
    let stated_defect = (sum - stated).abs() / stated;
    let derivative = ((x as f64).ln() + 2.0 * GAMMA) * h as f64;
    let r3 = divisor_window_report(10_000_000_000, 1_000_000, 3.0, Some(100_000_000)).unwrap();
    let proxy = r3.window.relative_defect_proxy.unwrap();
    Verdict::new(
        sum as u64 == oracle && stated_defect <= 0.01 && proxy <= 0.02,
        format!(
            "k=2 sum {sum} (hyperbola {oracle}), defect vs (log x + 2γ - 1)H = {stated_defect:.4}, vs (log x + 2γ)H = {:.5}; k=3 proxy defect {proxy:.5}",
            (sum - derivative).abs() / derivative
        ),
    )
}

fn criterion_9() -> Verdict {
    let r = e2_window_report(10_000_000_000, 10_000_000, 0.2, Some(100_000_000)).unwrap();
    let main = r.window.relative_defect_main.unwrap();
    let proxy = r.window.relative_defect_proxy.unwrap();
    Verdict::new(
        main <= 0.15 && proxy <= 0.05,
        format!("count {}, main defect {main:.4}, proxy defect {proxy:.5}", r.window.short_sum.re),
    )
}

fn criterion_10() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    for _ in 0..1_000 {
        let alpha: f64 = rng.gen_range(-100.0..100.0);
        let tau: f64 = rng.gen_range(1.0..1e6);
        let r = rational_approx(alpha, tau).unwrap();
        let q = BigInt::from(r.q);
        let a = BigInt::from(r.a);
        let exact_alpha = BigRational::from_float(alpha).unwrap();
        let exact_tau = BigRational::from_float(tau).unwrap();
        let lambda = (exact_alpha - BigRational::new(a.clone(), q.clone())).abs();
        let ok = r.q >= 1
            && a.gcd(&q).is_one()
            && BigRational::from_integer(q.clone()) <= exact_tau
            && lambda.clone() * BigRational::from_integer(q) * exact_tau <= BigRational::one()
            && (lambda.to_f64().unwrap() - r.lambda.abs()).abs() <= 1e-12;
        bad += usize::from(!ok);
    }
    let x = 10_000_000_000u64;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let (_, s) = twisted_windows(x, 0.61, phi, 1.0, 0.0, 10, 10).unwrap();
    let bound = s.h as f64 / (x as f64).ln().powf(1.0 / 3.0);
    Verdict::new(
        bad == 0 && s.max_abs <= bound,
        format!("{bad} Dirichlet-bound failures; H = {}, max |S| = {:.1} vs bound {bound:.0}", s.h, s.max_abs),
    )
}

fn criterion_11() -> Verdict {
    let t = 1_000.0;
    let zeta = DirichletPolynomial::new(PolySupport::ZetaPartial { n: 1_000 }).unwrap();
    let ratio = mvt_ratio(&zeta, t).unwrap();
    // trapezoid quadrature of |P(1/2+it)|^2 on [0, T]
    let steps = 200_000;
    let hstep = t / steps as f64;
    let integral: f64 = (0..=steps)
        .map(|j| {
            let w = if j == 0 || j == steps { 0.5 } else { 1.0 };
            w * zeta.eval(0.5, j as f64 * hstep).norm_sqr()
        })
        .sum::<f64>()
        * hstep;
    let diag: f64 = (1_001..=2_000).map(|n| 1.0 / n as f64).sum();
    let quad_ratio = integral / ((t + 2_000.0) * diag);
    let in_range = |r: f64| (1.0 / 3.0..=3.0).contains(&r);
    let hits = (0..100)
        .filter(|&s| in_range(mvt_ratio(&random_sign_polynomial(1_000, s).unwrap(), t).unwrap()))
        .count();
    Verdict::new(
        in_range(ratio) && (ratio - quad_ratio).abs() < 1e-3 && hits >= 95,
        format!("ZETA_PARTIAL ratio {ratio:.4} (quadrature {quad_ratio:.4}); random ±1: {hits}/100 in [1/3, 3]"),
    )
}

fn criterion_12() -> Verdict {
    let spf = spf_table(2_000);
    let rms = (1_001..=2_000usize)
        .filter(|&n| spf[n] as usize == n)
        .map(|p| 1.0 / p as f64)
        .sum::<f64>()
        .sqrt();
    let poly = DirichletPolynomial::new(PolySupport::Primes { p1: 1_000, cap: None }).unwrap();
    let cfg = MeanValueConfig::new(10.0, 10_000.0, MeanValueConfig::default_step(2_000)).unwrap();
    let r = large_value_measure(&poly, 10.0 * rms, &cfg).unwrap();
    Verdict::new(
        r.fraction <= 0.02,
        format!("RMS {rms:.4}, fraction above 10 RMS {:.5}, sup {:.3}", r.fraction, r.sup_observed),
    )
}

fn criterion_13() -> Verdict {
    let x = 100_000_000u64;
    let r = counterexample_pair_report(x, 0.6).unwrap();
    let h = r.interval.h();
    // primes in the window by trial division against small primes
    let spf = spf_table(((x + h) as f64).sqrt() as usize + 1);
    let small: Vec<u64> = (2..spf.len()).filter(|&i| spf[i] as usize == i).map(|i| i as u64).collect();
    let primes = (x + 1..=x + h)
        .filter(|&n| small.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0))
        .count() as i64;
    Verdict::new(
        r.d as f64 >= r.lower_bound && r.prime_term == 2 * primes,
        format!("H = {h}, D = {}, H/(2 log x) = {:.1}, prime term {} (oracle {})", r.d, r.lower_bound, r.prime_term, 2 * primes),
    )
}

fn main() {
    let mut runner = Runner::new();
    runner.run(1, "Heath-Brown identity", secs(30), criterion_1);
    runner.run(2, "Ramaré identity", secs(60), criterion_2);
    runner.run(3, "sieve sandwich", secs(60), criterion_3);
    runner.run(4, "a_r bound", secs(10), criterion_4);
    runner.run(5, "combinatorial lemma", secs(120), criterion_5);
    runner.run(6, "Möbius windows", secs(300), criterion_6);
    runner.run(7, "Landau-Ramanujan and two squares", secs(300), criterion_7);
    runner.run(8, "divisor sums", secs(600), criterion_8);
    runner.run(9, "E2 numbers", secs(600), criterion_9);
    runner.run(10, "rational approximation and twisted sums", secs(600), criterion_10);
    runner.run(11, "mean value theorem shape", secs(300), criterion_11);
    runner.run(12, "large values", secs(120), criterion_12);
    runner.run(13, "counterexample pair", secs(120), criterion_13);
    std::process::exit(runner.finish());
}
