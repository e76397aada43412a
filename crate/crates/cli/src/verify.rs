//! Exact identity suites and the `verify-all` driver.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

use shortsums::decomposition::{brute_force_classify, classify_exponents, random_tuple, ClassifiedCase};
use shortsums::dirichlet::{large_value_measure, DirichletPolynomial, MeanValueConfig, PolySupport};
use shortsums::identities::{
    beta_sieve_coefficients, convolution_coefficients, heath_brown_eval, ramare_coefficients, ramare_identity_eval,
    tau_bound_violations, IdentityFunction, RamareParams, SieveSign,
};
use shortsums::identities::SieveCoefficients;
use shortsums::sieve::{factor_interval, FactorEntry, Interval};
use shortsums::stats::{counterexample_pair_report, landau_ramanujan_constant, mobius_bound_report};
use shortsums::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub checked: u64,
    /// First few failing inputs.
    pub failures: Vec<u64>,
    pub detail: String,
}

impl SuiteResult {
    fn from_failures(name: impl Into<String>, checked: u64, failures: Vec<u64>, detail: String) -> Self {
        Self {
            name: name.into(),
            status: if failures.is_empty() { Status::Pass } else { Status::Fail },
            checked,
            failures: failures.into_iter().take(10).collect(),
            detail,
        }
    }

    fn skipped(name: &str) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            checked: 0,
            failures: Vec::new(),
            detail: "budget below 600 s".into(),
        }
    }

    fn check(name: &str, ok: bool, detail: String) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            checked: 1,
            failures: Vec::new(),
            detail,
        }
    }
}

/// Calls `f` on the factorization of every `n` in `[1, limit]`.
fn for_each_upto(limit: u64, mut f: impl FnMut(&FactorEntry<'_>)) -> Result<()> {
    let one = FactorEntry {
        n: 1,
        prime_powers: &[],
        cofactor: 1,
    };
    f(&one);
    if limit >= 2 {
        let table = factor_interval(Interval::new(1, limit - 1)?)?;
        table.entries().for_each(|e| f(&e));
    }
    Ok(())
}

fn in_window(p: u64, lo: f64, hi: f64) -> bool {
    (p as f64) > lo && (p as f64) <= hi
}

/// Ramaré's identity at every `n <= limit` with no `p^2 | n`, `p ∈ (P, Q]`.
pub fn ramare_suite(limit: u64, p: f64, q: f64) -> Result<SuiteResult> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for_each_upto(limit, |e| {
        if e.factors().any(|(pr, k)| k >= 2 && in_window(pr, p, q)) {
            return;
        }
        checked += 1;
        let (lhs, rhs) = ramare_identity_eval(e, p, q);
        if lhs != rhs {
            failures.push(e.n);
        }
    })?;
    Ok(SuiteResult::from_failures(
        format!("ramare n<={limit} (P,Q]=({p},{q}]"),
        checked,
        failures,
        "exact rational equality".into(),
    ))
}

/// Heath-Brown's identity against μ for `n <= limit` with
/// `X = ⌈limit^{1/k}⌉ + 1`.
pub fn heath_brown_suite(limit: u64, k: u32) -> Result<SuiteResult> {
    let truncation = (limit as f64).powf(1.0 / k as f64).ceil() + 1.0;
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut err = None;
    for_each_upto(limit, |e| {
        checked += 1;
        match heath_brown_eval(e.n, k, truncation) {
            Ok(v) if v == e.mobius() as i64 => {}
            Ok(_) => failures.push(e.n),
            Err(x) => {
                err.get_or_insert(x);
            }
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(SuiteResult::from_failures(
        format!("heath-brown n<={limit} k={k}"),
        checked,
        failures,
        format!("X = {truncation}"),
    ))
}

/// `Σ λ⁻_d <= 1_{(m, P(P,Q)) = 1} <= Σ λ⁺_d` for every `m <= limit`.
pub fn sandwich_suite(limit: u64, p: f64, q: f64, y: f64) -> Result<SuiteResult> {
    let upper = beta_sieve_coefficients(p, q, y, SieveSign::Upper)?;
    let lower = beta_sieve_coefficients(p, q, y, SieveSign::Lower)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for_each_upto(limit, |e| {
        checked += 1;
        let primes: Vec<u64> = e.factors().map(|f| f.0).filter(|&pr| in_window(pr, p, q)).collect();
        if !SieveCoefficients::sandwich_holds(&upper, &lower, &primes) {
            failures.push(e.n);
        }
    })?;
    Ok(SuiteResult::from_failures(
        format!("sandwich m<={limit} (P,Q]=({p},{q}] y={y}"),
        checked,
        failures,
        format!("|supp λ+| = {}, |supp λ-| = {}", upper.weights.len(), lower.weights.len()),
    ))
}

/// `|a_r| <= τ(r)` over the full support at the default level `x^{ε/4}`
/// and, when `y` is given, over the unrestricted convolution at level `y`.
pub fn coefficient_suite(x: f64, eps: f64, p: f64, q: f64, y: Option<f64>) -> Result<SuiteResult> {
    let params = RamareParams::new(x, eps, p, q);
    let dec = ramare_coefficients(params, IdentityFunction::Mobius)?;
    let lambda = beta_sieve_coefficients(p, q, params.level(), SieveSign::Upper)?;
    let mut failures = tau_bound_violations(&dec.coefficients, &lambda.primes);
    let mut checked = dec.coefficients.len() as u64;
    if let Some(y) = y {
        let wide = beta_sieve_coefficients(p, q, y, SieveSign::Upper)?;
        let coeffs = convolution_coefficients(&wide, params.w_limit(), &IdentityFunction::Mobius)?;
        checked += coeffs.len() as u64;
        failures.extend(tau_bound_violations(&coeffs, &wide.primes));
    }
    Ok(SuiteResult::from_failures(
        format!("a_r bound x={x} eps={eps} (P,Q]=({p},{q}]"),
        checked,
        failures,
        "exact |a_r|^2 <= tau(r)^2".into(),
    ))
}

/// Seeded random tuples through the classifier, with the brute-force
/// oracle confirming whether a case-1 subset exists.
pub fn lemma_suite(count: u64, k_max: usize, eps: f64, seed: u64) -> Result<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..count {
        let t = random_tuple(&mut rng, k_max, eps);
        let ok = match classify_exponents(&t) {
            Ok(case) => {
                let oracle = brute_force_classify(&t)?;
                case.satisfies_invariant(&t.alphas)
                    && matches!(case, ClassifiedCase::Case1 { .. })
                        == matches!(oracle, Some(ClassifiedCase::Case1 { .. }))
            }
            Err(_) => false,
        };
        if !ok {
            failures.push(i);
        }
    }
    Ok(SuiteResult::from_failures(
        format!("lemma {count} tuples K<={k_max}"),
        count,
        failures,
        format!("seed {seed}"),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub budget_seconds: u64,
    pub items: Vec<SuiteResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }
}

fn statistical_suites() -> Result<Vec<SuiteResult>> {
    let mut out = Vec::new();
    let (_, s) = mobius_bound_report(10_000_000_000, 0.56, 0.0, 20, 1)?;
    let bound = s.h as f64 / (1e10f64).ln().powf(1.0 / 3.0);
    out.push(SuiteResult::check(
        "mobius windows x=1e10 theta=0.56",
        (s.max_abs as f64) <= bound && s.mean_abs_over_h <= 0.01,
        format!("max |S| = {}, bound {bound:.1}, mean |S|/H = {:.2e}", s.max_abs, s.mean_abs_over_h),
    ));
    out.push(match landau_ramanujan_constant(8) {
        Ok(c) => SuiteResult::check("landau-ramanujan 8 digits", true, format!("C = {:.12}", c.value)),
        Err(e) => SuiteResult::check("landau-ramanujan 8 digits", false, e.to_string()),
    });
    let poly = DirichletPolynomial::new(PolySupport::Primes { p1: 1_000, cap: None })?;
    let rms = poly.amplitudes(0.5).iter().map(|b| b * b).sum::<f64>().sqrt();
    let cfg = MeanValueConfig::new(10.0, 10_000.0, MeanValueConfig::default_step(2_000))?;
    let lv = large_value_measure(&poly, 10.0 * rms, &cfg)?;
    out.push(SuiteResult::check(
        "large values primes (1e3, 2e3]",
        lv.fraction <= 0.02,
        format!("fraction {:.4}", lv.fraction),
    ));
    let c = counterexample_pair_report(100_000_000, 0.6)?;
    out.push(SuiteResult::check(
        "counterexample x=1e8 theta=0.6",
        c.d as f64 >= c.lower_bound,
        format!("D = {}, H/(2 log x) = {:.1}", c.d, c.lower_bound),
    ));
    Ok(out)
}

/// Runs the exact suites, then the statistical ones when the budget allows.
/// Each item is reported through `log` as it finishes.
pub fn verify_all(budget_seconds: u64, mut log: impl FnMut(&SuiteResult)) -> Result<VerifySummary> {
    let start = Instant::now();
    let mut items = Vec::new();
    let mut push = |r: SuiteResult, items: &mut Vec<SuiteResult>| {
        log(&r);
        items.push(r);
    };
    push(ramare_suite(100_000, 2.0, 1_000.0)?, &mut items);
    for k in 2..=4 {
        push(heath_brown_suite(10_000, k)?, &mut items);
    }
    for y in [100.0, 10_000.0] {
        push(sandwich_suite(20_000, 3.0, 300.0, y)?, &mut items);
    }
    push(coefficient_suite(1e6, 0.4, 20.0, 100.0, Some(10_000.0))?, &mut items);
    push(lemma_suite(10_000, 12, 0.01, 1)?, &mut items);
    let stats_names = [
        "mobius windows x=1e10 theta=0.56",
        "landau-ramanujan 8 digits",
        "large values primes (1e3, 2e3]",
        "counterexample x=1e8 theta=0.6",
    ];
    if budget_seconds >= 600 && start.elapsed().as_secs() < budget_seconds {
        for r in statistical_suites()? {
            push(r, &mut items);
        }
    } else {
        for name in stats_names {
            push(SuiteResult::skipped(name), &mut items);
        }
    }
    Ok(VerifySummary { budget_seconds, items })
}
