//! Window sums and the short/long comparison.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sieve::{ArithmeticFunctionId, FactorEntry, Interval, PeriodicMultiplicativeFunction, Sieve};
use crate::sum::ComplexSum;
use crate::{Error, Result};

/// One summand: integers are accumulated exactly, everything else with
/// compensated summation.
#[derive(Clone, Copy, Debug)]
pub enum Term {
    Int(i128),
    Complex(Complex64),
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Acc {
    int: i128,
    sum: ComplexSum,
}

impl Acc {
    #[inline]
    pub(crate) fn add(&mut self, t: Term) {
        match t {
            Term::Int(v) => self.int += v,
            Term::Complex(z) => self.sum.add(z),
        }
    }

    pub(crate) fn merge(&mut self, other: &Acc) {
        self.int += other.int;
        self.sum.add(other.sum.value());
    }

    pub(crate) fn value(&self) -> Complex64 {
        self.sum.value() + Complex64::new(self.int as f64, 0.0)
    }
}

/// Streams `(x, x + max(H, y1)]` once and returns the sum over `(x, x+H]`
/// and, when `y1` is given, the sum over `(x, x+y1]`.
pub fn window_pair<F>(x: u64, h: u64, y1: Option<u64>, f: F) -> Result<(Complex64, Option<Complex64>)>
where
    F: Fn(&FactorEntry<'_>) -> Result<Term> + Sync,
{
    if let Some(y1) = y1 {
        if y1 < h {
            return Err(Error::param("y1", format!("must be >= H = {h}, got {y1}")));
        }
    }
    let outer = Interval::new(x, y1.unwrap_or(h))?;
    let short_end = x + h;
    let sieve = Sieve::for_interval(&outer)?;
    let parts = sieve.map_segments(&outer, |table| -> Result<(Acc, Acc)> {
        let mut short = Acc::default();
        let mut long = Acc::default();
        for e in table.entries() {
            let t = f(&e)?;
            if e.n <= short_end {
                short.add(t);
            }
            long.add(t);
        }
        Ok((short, long))
    })?;
    let mut short = Acc::default();
    let mut long = Acc::default();
    for part in parts {
        let (s, l) = part?;
        short.merge(&s);
        long.merge(&l);
    }
    Ok((short.value(), y1.map(|_| long.value())))
}

pub(crate) fn arithmetic_term(f: ArithmeticFunctionId) -> impl Fn(&FactorEntry<'_>) -> Result<Term> + Sync {
    move |e| {
        Ok(match f.int_value(e) {
            Some(v) => Term::Int(v),
            None => Term::Complex(Complex64::new(f.value(e), 0.0)),
        })
    }
}

pub(crate) fn periodic_term(
    spec: &PeriodicMultiplicativeFunction,
) -> impl Fn(&FactorEntry<'_>) -> Result<Term> + Sync + '_ {
    move |e| Ok(Term::Complex(spec.eval_factored(e.factors())?))
}

/// `Σ_{x<n<=x+H} f(n)`.
pub fn short_sum(f: ArithmeticFunctionId, interval: Interval) -> Result<Complex64> {
    f.validate()?;
    Ok(window_pair(interval.x(), interval.h(), None, arithmetic_term(f))?.0)
}

/// `Σ_{x<n<=x+H} f(n)` for a periodic multiplicative `f`.
pub fn short_sum_periodic(spec: &PeriodicMultiplicativeFunction, interval: Interval) -> Result<Complex64> {
    spec.validate()?;
    Ok(window_pair(interval.x(), interval.h(), None, periodic_term(spec))?.0)
}

/// Mertens function `M(N) = Σ_{n<=N} μ(n)`.
pub fn mertens(n: u64) -> Result<i64> {
    if n <= 1 {
        return Ok(n as i64);
    }
    let s = short_sum(ArithmeticFunctionId::Mobius, Interval::new(1, n - 1)?)?;
    Ok(1 + s.re as i64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub interval: Interval,
    pub function: String,
    pub short_sum: Complex64,
    pub main_term: Option<Complex64>,
    /// `(H / y1) Σ_{x<n<=x+y1} f(n)`.
    pub proxy_term: Option<Complex64>,
    /// The long window `(x, x+y1]` used for the proxy.
    pub proxy_window: Option<Interval>,
    pub relative_defect_main: Option<f64>,
    pub relative_defect_proxy: Option<f64>,
}

fn defect(short: Complex64, term: Option<Complex64>) -> Option<f64> {
    term.filter(|t| t.norm() != 0.0).map(|t| (short - t).norm() / t.norm())
}

impl WindowReport {
    pub fn new(
        interval: Interval,
        function: impl Into<String>,
        short_sum: Complex64,
        main_term: Option<Complex64>,
        proxy: Option<(Interval, Complex64)>,
    ) -> Self {
        let proxy_term = proxy.map(|p| p.1);
        Self {
            interval,
            function: function.into(),
            short_sum,
            main_term,
            proxy_term,
            proxy_window: proxy.map(|p| p.0),
            relative_defect_main: defect(short_sum, main_term),
            relative_defect_proxy: defect(short_sum, proxy_term),
        }
    }

    /// `|short/H - long/y1|`, the gap between the two window means.
    pub fn mean_gap(&self) -> Option<f64> {
        let h = self.interval.h() as f64;
        self.proxy_term.map(|p| (self.short_sum - p).norm() / h)
    }
}

/// Short sum of `f`, plus the scaled long-window sum as proxy.
pub(crate) fn report_with<F>(
    function: String,
    x: u64,
    h: u64,
    y1: Option<u64>,
    main_term: Option<Complex64>,
    f: F,
) -> Result<WindowReport>
where
    F: Fn(&FactorEntry<'_>) -> Result<Term> + Sync,
{
    let interval = Interval::new(x, h)?;
    let (short, long) = window_pair(x, h, y1, f)?;
    let proxy = match (y1, long) {
        (Some(y1), Some(long)) => Some((Interval::new(x, y1)?, long * (h as f64 / y1 as f64))),
        _ => None,
    };
    Ok(WindowReport::new(interval, function, short, main_term, proxy))
}

/// Short window `(x, x+H]` against the proxy `(H/y1) Σ_{x<n<=x+y1} f(n)`.
pub fn comparison_defect(f: ArithmeticFunctionId, x: u64, h: u64, y1: u64) -> Result<WindowReport> {
    f.validate()?;
    report_with(f.name(), x, h, Some(y1), None, arithmetic_term(f))
}

/// `count` pseudo-random window starts in `[x, 2x)`.
pub fn seeded_starts(x: u64, count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| x + rng.gen_range(0..x.max(1))).collect()
}

/// `⌈x^θ⌉`.
pub fn window_length(x: u64, theta: f64) -> Result<u64> {
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::param("theta", format!("must lie in (0, 1], got {theta}")));
    }
    Ok(((x as f64).powf(theta).ceil() as u64).max(1))
}
