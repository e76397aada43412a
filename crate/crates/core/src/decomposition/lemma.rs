//! The classification lemma: exponents `α_1..α_K` in `(0, 1]` with sum in
//! `[1-ε, 1]` admit either a subset with sum in `[0.45, 0.55]` or a partition
//! `I1 ∪ I2 ∪ {r}` with both `I1`, `I2` summing to at most 0.46.

use serde::{Deserialize, Serialize};

use super::subset::{in_range, max_subset_at_most, subset_in_range, sum_of, TOL};
use crate::{Error, Result};

pub const CASE1_LO: f64 = 0.45;
pub const CASE1_HI: f64 = 0.55;
pub const CASE2_CAP: f64 = 0.46;
pub const BRUTE_FORCE_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub alphas: Vec<f64>,
    pub epsilon: f64,
}

impl ExponentTuple {
    pub fn new(alphas: Vec<f64>, epsilon: f64) -> Result<Self> {
        let t = Self { alphas, epsilon };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::param("alphas", "need at least one exponent"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::param("eps", format!("must lie in (0, 1), got {}", self.epsilon)));
        }
        if let Some(a) = self.alphas.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
            return Err(Error::param("alphas", format!("{a} is outside (0, 1]")));
        }
        let s: f64 = self.alphas.iter().sum();
        if s < 1.0 - self.epsilon - TOL || s > 1.0 + TOL {
            return Err(Error::param(
                "alphas",
                format!("sum {s} is outside [1 - eps, 1] = [{}, 1]", 1.0 - self.epsilon),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }
}

/// Indices are 0-based positions in the tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassifiedCase {
    Case1 { set: Vec<usize> },
    Case2 { i1: Vec<usize>, i2: Vec<usize>, r: usize },
}

impl ClassifiedCase {
    pub fn satisfies_invariant(&self, alphas: &[f64]) -> bool {
        match self {
            Self::Case1 { set } => {
                set.iter().all(|&i| i < alphas.len()) && in_range(sum_of(alphas, set), CASE1_LO, CASE1_HI)
            }
            Self::Case2 { i1, i2, r } => {
                let mut seen = vec![false; alphas.len()];
                for &i in i1.iter().chain(i2).chain(std::iter::once(r)) {
                    if i >= alphas.len() || seen[i] {
                        return false;
                    }
                    seen[i] = true;
                }
                seen.iter().all(|&s| s)
                    && sum_of(alphas, i1) <= CASE2_CAP + TOL
                    && sum_of(alphas, i2) <= CASE2_CAP + TOL
            }
        }
    }

    /// Sums of the sets, `[Σ_I]` for case 1 or `[Σ_I1, Σ_I2]` for case 2.
    pub fn sums(&self, alphas: &[f64]) -> Vec<f64> {
        match self {
            Self::Case1 { set } => vec![sum_of(alphas, set)],
            Self::Case2 { i1, i2, .. } => vec![sum_of(alphas, i1), sum_of(alphas, i2)],
        }
    }
}

/// The greedy argument of the lemma. Case 1 is searched by increasing size,
/// then lexicographically. Otherwise `I1` is the subset with the largest sum
/// `<= 0.55`, `r` the largest index outside it and `I2` the rest.
pub fn classify_exponents(t: &ExponentTuple) -> Result<ClassifiedCase> {
    t.validate()?;
    let a = &t.alphas;
    if let Some(set) = subset_in_range(a, CASE1_LO, CASE1_HI) {
        return Ok(ClassifiedCase::Case1 { set });
    }
    let i1 = max_subset_at_most(a, CASE1_HI, CASE1_HI - CASE1_LO);
    let r = (0..a.len())
        .rev()
        .find(|i| !i1.contains(i))
        .ok_or_else(|| Error::Consistency("every index lies in the maximal subset".into()))?;
    let i2: Vec<usize> = (0..a.len()).filter(|i| *i != r && !i1.contains(i)).collect();
    let case = ClassifiedCase::Case2 { i1, i2, r };
    if !case.satisfies_invariant(a) {
        return Err(Error::Consistency(format!("classification {case:?} violates its invariant")));
    }
    Ok(case)
}

/// Exhaustive search over all subsets, then all `(I1, r)` splits.
pub fn brute_force_classify(t: &ExponentTuple) -> Result<Option<ClassifiedCase>> {
    let k = t.alphas.len();
    if k > BRUTE_FORCE_MAX {
        return Err(Error::CostGuard(k));
    }
    t.validate()?;
    let a = &t.alphas;
    let mut sums = vec![0.0f64; 1 << k];
    for m in 1usize..1 << k {
        sums[m] = sums[m & (m - 1)] + a[m.trailing_zeros() as usize];
    }
    let members = |m: usize| (0..k).filter(|b| m >> b & 1 == 1).collect::<Vec<_>>();
    if let Some(m) = (0..1usize << k).find(|&m| in_range(sums[m], CASE1_LO, CASE1_HI)) {
        return Ok(Some(ClassifiedCase::Case1 { set: members(m) }));
    }
    let full = (1usize << k) - 1;
    for r in 0..k {
        let rest = full & !(1 << r);
        // enumerate submasks of rest
        let mut m = rest;
        loop {
            if sums[m] <= CASE2_CAP + TOL && sums[rest & !m] <= CASE2_CAP + TOL {
                return Ok(Some(ClassifiedCase::Case2 {
                    i1: members(m),
                    i2: members(rest & !m),
                    r,
                }));
            }
            if m == 0 {
                break;
            }
            m = (m - 1) & rest;
        }
    }
    Ok(None)
}

/// Random valid tuple: `K` uniform in `1..=k_max`, positive parts normalised
/// to a total drawn uniformly from `[1-ε, 1]`.
pub fn random_tuple<R: rand::Rng>(rng: &mut R, k_max: usize, epsilon: f64) -> ExponentTuple {
    loop {
        let k = rng.gen_range(1..=k_max);
        let shape: f64 = rng.gen_range(0.5..4.0);
        let raw: Vec<f64> = (0..k).map(|_| rng.gen::<f64>().powf(shape) + 1e-9).collect();
        let total: f64 = rng.gen_range(1.0 - epsilon..=1.0);
        let s: f64 = raw.iter().sum();
        let alphas: Vec<f64> = raw.iter().map(|v| v / s * total).collect();
        let t = ExponentTuple { alphas, epsilon };
        if t.validate().is_ok() {
            return t;
        }
    }
}
