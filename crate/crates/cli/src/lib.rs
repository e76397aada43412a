//! Command-line front end: parses a [`RunConfig`], validates it against the
//! chosen subcommand, runs the experiment and emits a JSON or CSV report.

mod config;
mod error;
pub mod verify;

pub use config::{Format, RunConfig, SubcommandKind, CACHE_DIR_ENV};
pub use error::CliError;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;

use config::{DEFAULT_BUDGET, DEFAULT_EPS, DEFAULT_LEMMA_K, DEFAULT_THETA};
use shortsums::decomposition::{
    applicable_lemmas, brute_force_classify, classify_exponents, map_case_to_lemma, ExponentTuple, LemmaTag,
    BRUTE_FORCE_MAX,
};
use shortsums::dirichlet::{
    large_value_measure, mean_value_integral, mvt_ratio, pointwise_prime_decay, random_sign_polynomial,
    zeta_partial_sup, DirichletPolynomial, DirichletRecord, MeanValueConfig, PolySupport,
};
use shortsums::identities::{extraction_defect, sample_dyadic_cases, IdentityFunction, RamareParams};
use shortsums::sieve::{
    base_primes, isqrt, read_prime_cache, write_prime_cache, ArithmeticFunctionId, Interval, Sieve, SieveConfig,
};
use shortsums::stats::{
    comparison_defect, counterexample_pair_report, e2_window_report, landau_ramanujan_constant, seeded_starts,
    twisted_sum_report, window_length, write_csv, ExperimentReport, WindowReport, WindowRow,
};

type CliResult<T> = std::result::Result<T, CliError>;

/// What a run produced: the report text and the exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name), runs it and returns the exit
/// status and the text for stdout and stderr. Reports go to `--output` when
/// given.
pub fn parse_and_dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut log = String::new();
    match run(cfg, &mut log) {
        Ok(text) => Outcome { status: 0, stdout: text, stderr: log },
        Err((e, text)) => Outcome {
            status: e.exit_code(),
            stdout: text.unwrap_or_default(),
            stderr: log + &format!("error: {e}\n"),
        },
    }
}

fn run(mut cfg: RunConfig, log: &mut String) -> std::result::Result<String, (CliError, Option<String>)> {
    if let Some(t) = cfg.threads {
        if t == 0 {
            return Err((CliError::flag("threads", "must be >= 1"), None));
        }
        // the global pool can only be set once per process; later calls keep the first size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let (emitted, check) = dispatch(&mut cfg, log).map_err(|e| (e, None))?;
    let text = match &cfg.output {
        Some(path) => {
            std::fs::write(path, &emitted)
                .map_err(|e| (CliError::flag("output", format!("cannot write {}: {e}", path.display())), None))?;
            String::new()
        }
        None => emitted,
    };
    match check {
        Some(e) => Err((e, Some(text))),
        None => Ok(text),
    }
}

/// Report text and, for runs whose internal check failed, the error that
/// sets exit status 1 after the report was emitted.
type Emitted = (String, Option<CliError>);

fn dispatch(cfg: &mut RunConfig, log: &mut String) -> CliResult<Emitted> {
    use SubcommandKind::*;
    match cfg.subcommand {
        Sieve => run_sieve(cfg),
        Sum => run_sum(cfg),
        Compare => run_compare(cfg),
        Identity => run_identity(cfg),
        Lemma => run_lemma(cfg),
        Dirichlet => run_dirichlet(cfg),
        Constant => run_constant(cfg),
        Twisted => run_twisted(cfg),
        E2 => run_e2(cfg),
        Counterexample => run_counterexample(cfg),
        VerifyAll => run_verify(cfg, log),
    }
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::flag(flag, "is required for this subcommand"))
}

/// Resolves `H` from `--H` or `--theta` (exactly one) and writes it back.
fn resolve_h(cfg: &mut RunConfig, default_theta: Option<f64>) -> CliResult<u64> {
    let x = require(cfg.x, "x")?;
    match (cfg.h, cfg.theta) {
        (Some(_), Some(_)) => Err(CliError::Validation("--H and --theta are mutually exclusive".into())),
        (Some(h), None) => Ok(h),
        (None, theta) => {
            let theta = theta.or(default_theta).ok_or_else(|| CliError::flag("H", "give --H or --theta"))?;
            let h = window_length(x, theta).map_err(|e| CliError::flag("theta", e))?;
            cfg.theta = Some(theta);
            cfg.h = Some(h);
            Ok(h)
        }
    }
}

fn eps(cfg: &mut RunConfig) -> f64 {
    *cfg.eps.get_or_insert(DEFAULT_EPS)
}

fn parse_function(cfg: &RunConfig) -> CliResult<ArithmeticFunctionId> {
    let name = cfg.function.as_deref().ok_or_else(|| CliError::flag("f", "is required"))?;
    let f = match name {
        "mobius" | "mu" => ArithmeticFunctionId::Mobius,
        "divisor" | "tau" => ArithmeticFunctionId::Divisor { k: cfg.k.unwrap_or(2.0) },
        "omega" => ArithmeticFunctionId::OmegaDistinct,
        "big_omega" => ArithmeticFunctionId::OmegaTotal,
        "omega_range" => ArithmeticFunctionId::OmegaRange {
            p: require(cfg.p, "P")?,
            q: require(cfg.q, "Q")?,
        },
        "two_squares" => ArithmeticFunctionId::TwoSquaresIndicator,
        "e2" => ArithmeticFunctionId::E2Indicator,
        "von_mangoldt" | "lambda" => ArithmeticFunctionId::VonMangoldt,
        other => return Err(CliError::flag("f", format!("unknown function `{other}`"))),
    };
    f.validate().map_err(|e| CliError::flag("f", e))?;
    Ok(f)
}

fn report<W: Serialize, S: Serialize>(
    cfg: &RunConfig,
    experiment: &str,
    rows: Vec<W>,
    csv_rows: Option<Vec<WindowRow>>,
    summary: S,
) -> CliResult<String> {
    match cfg.format {
        Format::Json => {
            let r = ExperimentReport {
                experiment: experiment.to_string(),
                params: cfg,
                seed: cfg.seed,
                per_window: rows,
                summary,
            };
            Ok(r.to_json()? + "\n")
        }
        Format::Csv => {
            let rows = csv_rows.ok_or_else(|| CliError::flag("format", format!("csv is not available for `{experiment}`")))?;
            csv_text(&rows)
        }
    }
}

fn csv_text<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn window_rows(rows: &[WindowReport]) -> Option<Vec<WindowRow>> {
    Some(rows.iter().map(WindowRow::from).collect())
}

fn cache_path(cfg: &RunConfig, limit: u64) -> Option<PathBuf> {
    cfg.prime_cache.clone().or_else(|| {
        std::env::var_os(CACHE_DIR_ENV).map(|d| PathBuf::from(d).join(format!("primes-{limit}.bin")))
    })
}

/// A sieve whose base primes come from the cache when it covers the window,
/// and are written to it otherwise.
fn sieve_for(cfg: &RunConfig, interval: &Interval) -> CliResult<(Sieve, Option<String>)> {
    let limit = interval.last();
    let Some(path) = cache_path(cfg, isqrt(limit)) else {
        return Ok((Sieve::for_interval(interval)?, None));
    };
    if path.exists() {
        let primes = read_prime_cache(&path)?;
        let primes: Vec<u32> = primes.into_iter().map(|p| p as u32).collect();
        if let Ok(s) = Sieve::from_base_primes(limit, primes, SieveConfig::default()) {
            return Ok((s, Some(format!("read {}", path.display()))));
        }
    }
    let primes = base_primes(isqrt(limit));
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::flag("prime-cache", e))?;
    }
    write_prime_cache(&path, &primes)?;
    let primes = primes.into_iter().map(|p| p as u32).collect();
    Ok((Sieve::from_base_primes(limit, primes, SieveConfig::default())?, Some(format!("wrote {}", path.display()))))
}

#[derive(Serialize)]
struct SieveRow {
    n: u64,
    factors: String,
    cofactor: u64,
    mobius: i8,
    big_omega: u32,
}

fn run_sieve(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let h = resolve_h(cfg, None)?;
    let interval = Interval::new(cfg.x.unwrap(), h)?;
    if h > 1_000_000 {
        return Err(CliError::flag("H", "sieve listings are limited to H <= 10^6"));
    }
    let (sieve, cache) = sieve_for(cfg, &interval)?;
    let table = sieve.factor(&interval)?;
    let rows: Vec<SieveRow> = table
        .entries()
        .map(|e| SieveRow {
            n: e.n,
            factors: e
                .factors()
                .map(|(p, k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
                .collect::<Vec<_>>()
                .join("*"),
            cofactor: e.cofactor,
            mobius: e.mobius(),
            big_omega: e.big_omega(),
        })
        .collect();
    let text = match cfg.format {
        Format::Csv => csv_text(&rows)?,
        Format::Json => {
            let squarefree = rows.iter().filter(|r| r.mobius != 0).count();
            let primes = rows.iter().filter(|r| r.big_omega == 1).count();
            let summary = json!({ "squarefree": squarefree, "primes": primes, "prime_cache": cache });
            report(cfg, "sieve", rows, None, summary)?
        }
    };
    Ok((text, None))
}

fn run_sum(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let f = parse_function(cfg)?;
    let eps = eps(cfg);
    let x = require(cfg.x, "x")?;
    let rows = match cfg.windows {
        None => {
            let h = resolve_h(cfg, None)?;
            let s = shortsums::stats::short_sum(f, Interval::new(x, h)?)?;
            vec![WindowReport::new(Interval::new(x, h)?, f.name(), s, None, None)]
        }
        Some(w) => {
            let h = resolve_h(cfg, Some(DEFAULT_THETA))?;
            let seed = *cfg.seed.get_or_insert(0);
            seeded_starts(x, w, seed)
                .into_iter()
                .map(|xi| {
                    let iv = Interval::new(xi, h)?;
                    Ok(WindowReport::new(iv, f.name(), shortsums::stats::short_sum(f, iv)?, None, None))
                })
                .collect::<shortsums::Result<Vec<_>>>()?
        }
    };
    let h = cfg.h.unwrap() as f64;
    let abs: Vec<f64> = rows.iter().map(|r| r.short_sum.norm()).collect();
    let summary = json!({
        "short_sum": if rows.len() == 1 { json!(rows[0].short_sum.re) } else { Value::Null },
        "max_abs": abs.iter().cloned().fold(0.0, f64::max),
        "mean_abs_over_h": abs.iter().sum::<f64>() / (abs.len() as f64 * h),
        "bound": h / (x as f64).ln().powf(1.0 / 3.0 - eps),
    });
    let csv = window_rows(&rows);
    Ok((report(cfg, "sum", rows, csv, summary)?, None))
}

fn run_compare(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let f = parse_function(cfg)?;
    let x = require(cfg.x, "x")?;
    let h = resolve_h(cfg, None)?;
    let y1 = require(cfg.y1, "y1")?;
    let r = comparison_defect(f, x, h, y1)?;
    let summary = json!({
        "relative_defect_proxy": r.relative_defect_proxy,
        "mean_gap": r.mean_gap(),
    });
    let rows = vec![r];
    let csv = window_rows(&rows);
    Ok((report(cfg, "compare", rows, csv, summary)?, None))
}

fn suite_outcome(r: verify::SuiteResult) -> Option<CliError> {
    (r.status == verify::Status::Fail).then(|| CliError::Check(format!("{} failed at {:?}", r.name, r.failures)))
}

fn run_identity(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let check = cfg.check.clone().ok_or_else(|| CliError::flag("check", "is required"))?;
    let x = require(cfg.x, "x")?;
    let result = match check.as_str() {
        "ramare" => verify::ramare_suite(x, require(cfg.p, "P")?, require(cfg.q, "Q")?)?,
        "heath-brown" => {
            let k = cfg.k.unwrap_or(3.0);
            if k.fract() != 0.0 || !(1.0..=12.0).contains(&k) {
                return Err(CliError::flag("k", "Heath-Brown order must be an integer in [1, 12]"));
            }
            verify::heath_brown_suite(x, k as u32)?
        }
        "sandwich" => verify::sandwich_suite(x, require(cfg.p, "P")?, require(cfg.q, "Q")?, require(cfg.y, "y")?)?,
        "coefficients" => {
            let eps = eps(cfg);
            verify::coefficient_suite(x as f64, eps, require(cfg.p, "P")?, require(cfg.q, "Q")?, cfg.y)?
        }
        "extraction" => {
            let h = resolve_h(cfg, None)?;
            let eps = eps(cfg);
            let mut params = RamareParams::new(x as f64, eps, require(cfg.p, "P")?, require(cfg.q, "Q")?);
            params.y = cfg.y;
            let d = extraction_defect(x, h, params, IdentityFunction::Mobius)?;
            let summary = json!({
                "lhs": d.lhs.re, "rhs": d.rhs.re, "defect": d.defect.re, "terms": d.terms,
            });
            return Ok((report(cfg, "identity", Vec::<Value>::new(), None, summary)?, None));
        }
        other => return Err(CliError::flag("check", format!("unknown check `{other}`"))),
    };
    let text = report(cfg, "identity", vec![result.clone()], None, json!({ "status": result.status }))?;
    Ok((text, suite_outcome(result)))
}

fn run_lemma(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let eps = eps(cfg);
    if let Some(alphas) = cfg.alphas.clone() {
        let t = ExponentTuple::new(alphas, eps)?;
        let case = classify_exponents(&t)?;
        let oracle = if t.alphas.len() <= BRUTE_FORCE_MAX { brute_force_classify(&t)? } else { None };
        let summary = json!({
            "case": case,
            "sums": case.sums(&t.alphas),
            "invariant": case.satisfies_invariant(&t.alphas),
            "brute_force": oracle,
        });
        return Ok((report(cfg, "lemma", Vec::<Value>::new(), None, summary)?, None));
    }
    // decomposition-space generation over dyadic Heath-Brown cases
    let k = cfg.k.unwrap_or(DEFAULT_LEMMA_K as f64);
    if k.fract() != 0.0 || k < 1.0 {
        return Err(CliError::flag("k", "must be a positive integer"));
    }
    cfg.k = Some(k);
    let count = *cfg.windows.get_or_insert(1_000);
    let seed = *cfg.seed.get_or_insert(0);
    let cases = sample_dyadic_cases(k as usize, eps, 0.01, count, seed)?;
    let mut tally = std::collections::BTreeMap::<&str, usize>::new();
    let mut unhandled = Vec::new();
    for c in &cases {
        let tag = map_case_to_lemma(c);
        let name = match tag {
            LemmaTag::TypeI { .. } => "TYPE_I",
            LemmaTag::TypeII { .. } => "TYPE_II",
            LemmaTag::TypeIAndII { .. } => "TYPE_I_II",
            LemmaTag::Unhandled => "UNHANDLED",
        };
        *tally.entry(name).or_default() += 1;
        if tag == LemmaTag::Unhandled && unhandled.len() < 10 {
            unhandled.push(json!({ "n": c.n, "applicable": applicable_lemmas(c) }));
        }
    }
    let summary = json!({ "cases": cases.len(), "tally": tally, "unhandled_examples": unhandled });
    Ok((report(cfg, "lemma", Vec::<Value>::new(), None, summary)?, None))
}

fn polynomial(cfg: &RunConfig) -> CliResult<PolySupport> {
    let n = require(cfg.n, "N")?;
    Ok(match cfg.poly.as_deref().unwrap_or("zeta") {
        "zeta" => PolySupport::ZetaPartial { n },
        "zeta_log" => PolySupport::ZetaLogPartial { n },
        "primes" => PolySupport::Primes { p1: n, cap: cfg.y.map(|y| y as u64) },
        "mu" => PolySupport::MuTruncated { n, x: cfg.x.unwrap_or(2 * n) },
        "random" => random_sign_polynomial(n, cfg.seed.unwrap_or(0))?.support,
        other => return Err(CliError::flag("poly", format!("unknown polynomial `{other}`"))),
    })
}

fn run_dirichlet(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let support = polynomial(cfg)?;
    let poly = DirichletPolynomial::new(support.clone())?;
    let n = cfg.n.unwrap();
    let mode = cfg.mode.clone().unwrap_or_else(|| "mvt".into());
    let t0 = *cfg.t0.get_or_insert(0.0);
    let t1 = require(cfg.t1, "T1")?;
    let step = *cfg.step.get_or_insert(MeanValueConfig::default_step(n));
    let mut mv = MeanValueConfig::new(t0, t1, step).map_err(|e| CliError::flag("T0", e))?;
    mv.y1 = cfg.y1.map(|y| y as f64);
    let (result, grid_step, converged) = match mode.as_str() {
        "mean" => {
            let r = mean_value_integral(std::slice::from_ref(&poly), &mv)?;
            (serde_json::to_value(&r)?, Some(r.grid_step), r.converged)
        }
        "mvt" => (json!({ "ratio": mvt_ratio(&poly, t1)? }), None, true),
        "large" => {
            let rms = poly.amplitudes(0.5).iter().map(|b| b * b).sum::<f64>().sqrt();
            let threshold = *cfg.threshold.get_or_insert(10.0 * rms);
            let r = large_value_measure(&poly, threshold, &mv)?;
            (serde_json::to_value(&r)?, Some(r.grid_step), r.converged)
        }
        "sup" => {
            let r = zeta_partial_sup(n, &mv)?;
            (serde_json::to_value(&r)?, Some(r.grid_step), true)
        }
        "decay" => {
            let x = cfg.x.unwrap_or(n * n) as f64;
            let sigma = *cfg.sigma.get_or_insert(0.1);
            let samples: Vec<f64> = (0..)
                .map(|i| t0 + i as f64 * step)
                .take_while(|&t| t <= t1)
                .take(100_000)
                .collect();
            let rows = pointwise_prime_decay(n, cfg.y.map(|y| y as u64), sigma, x, &samples)?;
            if cfg.format == Format::Csv {
                return Ok((csv_text(&rows)?, None));
            }
            (serde_json::to_value(&rows)?, Some(step), true)
        }
        other => return Err(CliError::flag("mode", format!("unknown mode `{other}`"))),
    };
    if cfg.format == Format::Csv {
        return Err(CliError::flag("format", "csv is only available for --mode decay"));
    }
    let record = DirichletRecord {
        polynomial_spec: vec![support],
        cfg: Some(mv),
        result: json!({ "mode": mode, "value": result, "run_config": cfg }),
        grid_step,
        converged,
    };
    Ok((record.to_json()? + "\n", None))
}

fn run_constant(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let digits = *cfg.digits.get_or_insert(8);
    let c = landau_ramanujan_constant(digits)?;
    Ok((report(cfg, "constant", Vec::<Value>::new(), None, c)?, None))
}

fn run_twisted(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let x = require(cfg.x, "x")?;
    let alpha = require(cfg.alpha, "alpha")?;
    let b = *cfg.b.get_or_insert(1.0);
    let eps = eps(cfg);
    let h = resolve_h(cfg, None)?;
    let starts = match cfg.windows {
        Some(w) => seeded_starts(x, w, *cfg.seed.get_or_insert(0)),
        None => vec![x],
    };
    let reports = starts
        .into_iter()
        .map(|xi| twisted_sum_report(xi, h, alpha, b, eps))
        .collect::<shortsums::Result<Vec<_>>>()?;
    let summary = json!({
        "max_abs": reports.iter().map(|r| r.window.short_sum.norm()).fold(0.0, f64::max),
        "max_over_bound": reports.iter().map(|r| r.window.short_sum.norm() / r.bound).fold(0.0, f64::max),
    });
    let windows: Vec<WindowReport> = reports.iter().map(|r| r.window.clone()).collect();
    let csv = window_rows(&windows);
    Ok((report(cfg, "twisted", reports, csv, summary)?, None))
}

fn run_e2(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let x = require(cfg.x, "x")?;
    let h = resolve_h(cfg, None)?;
    let eps = *cfg.eps.get_or_insert(0.2);
    let r = e2_window_report(x, h, eps, cfg.y1)?;
    let csv = window_rows(std::slice::from_ref(&r.window));
    let summary = serde_json::to_value(&r.split)?;
    Ok((report(cfg, "e2", vec![r.window], csv, summary)?, None))
}

fn run_counterexample(cfg: &mut RunConfig) -> CliResult<Emitted> {
    let x = require(cfg.x, "x")?;
    let theta = *cfg.theta.get_or_insert(0.6);
    let r = counterexample_pair_report(x, theta)?;
    cfg.h = Some(r.interval.h());
    Ok((report(cfg, "counterexample", Vec::<Value>::new(), None, r)?, None))
}

fn run_verify(cfg: &mut RunConfig, log: &mut String) -> CliResult<Emitted> {
    let budget = *cfg.budget.get_or_insert(DEFAULT_BUDGET);
    if budget < 60 {
        return Err(CliError::flag("budget", "must be at least 60 seconds"));
    }
    let summary = verify::verify_all(budget, |r| {
        let status = match r.status {
            verify::Status::Pass => "PASS",
            verify::Status::Fail => "FAIL",
            verify::Status::Skipped => "SKIPPED",
        };
        log.push_str(&format!("{status} {}\n", r.name));
    })?;
    let failed = (!summary.all_passed()).then(|| CliError::Check("verify-all: at least one suite failed".into()));
    let text = report(cfg, "verify-all", summary.items.clone(), None, json!({ "all_passed": summary.all_passed() }))?;
    Ok((text, failed))
}
