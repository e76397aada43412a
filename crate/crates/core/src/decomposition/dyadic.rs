//! Dyadic cases of the Heath-Brown decomposition and the estimate that
//! handles each of them.
//!
//! Sizes are stored as exponents of `x`: `N_i = x^{n[i]}`, `P_1 = x^{p1}`,
//! `R = x^{r}`. Slot `i` (0-based) is a smooth variable for `i < k-1` and a
//! truncated Möbius variable otherwise.

use serde::{Deserialize, Serialize};

use super::subset::{max_subset_at_most, subset_in_range, sum_of, TOL};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DyadicCase {
    pub log_x: f64,
    pub p1: f64,
    pub r: f64,
    pub n: Vec<f64>,
    pub k: usize,
    pub theta: f64,
    pub eps: f64,
    pub smooth: Vec<bool>,
}

impl DyadicCase {
    /// Builds a case with `θ = 0.55 + ε` and validates it.
    pub fn new(log_x: f64, p1: f64, r: f64, n: Vec<f64>, k: usize, eps: f64) -> Result<Self> {
        let smooth = (0..n.len()).map(|i| i + 1 < k).collect();
        let c = Self {
            log_x,
            p1,
            r,
            n,
            k,
            theta: 0.55 + eps,
            eps,
            smooth,
        };
        c.validate()?;
        Ok(c)
    }

    /// Builds a case from actual sizes.
    pub fn from_sizes(x: f64, p1: f64, r: f64, n: &[f64], k: usize, eps: f64) -> Result<Self> {
        let lx = x.ln();
        Self::new(lx, p1.ln() / lx, r.ln() / lx, n.iter().map(|v| v.ln() / lx).collect(), k, eps)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.n.len() != 2 * self.k - 1 {
            return Err(Error::param("N", format!("need 2k-1 = {} sizes, got {}", 2 * self.k - 1, self.n.len())));
        }
        if !(self.log_x > 0.0) || !self.log_x.is_finite() {
            return Err(Error::param("x", "log x must be positive and finite"));
        }
        let slack = (2 * self.k + 2) as f64 * std::f64::consts::LN_2 / self.log_x + TOL;
        let total = self.p1 + self.r + self.n.iter().sum::<f64>();
        if (total - 1.0).abs() > slack {
            return Err(Error::param(
                "N",
                format!("P1 R N_1...N_(2k-1) = x^{total}, not within 2^(2k+2) of x"),
            ));
        }
        let mu_cap = (std::f64::consts::LN_2 + self.log_x) / (self.k as f64 * self.log_x) + TOL;
        if let Some(i) = (self.k - 1..self.n.len()).find(|&i| self.n[i] > mu_cap) {
            return Err(Error::param(
                "N",
                format!("N_{} = x^{} exceeds (2x)^(1/k)", i + 1, self.n[i]),
            ));
        }
        Ok(())
    }
}

/// Which estimate handles a dyadic case. Indices are 0-based slots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "lemma", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LemmaTag {
    /// A smooth variable longer than `x^{0.45+2ε}`.
    TypeI { i: usize },
    /// A product of variables in `[x^{0.45-ε/2}, x^{0.55+ε/2}]`.
    TypeII { set: Vec<usize> },
    /// Two products at most `x^{0.46+ε/8}` around a smooth variable `r`.
    #[serde(rename = "TYPE_I_II")]
    TypeIAndII { i1: Vec<usize>, i2: Vec<usize>, r: usize },
    Unhandled,
}

fn type_ii(c: &DyadicCase) -> Option<LemmaTag> {
    subset_in_range(&c.n, 0.45 - c.eps / 2.0, 0.55 + c.eps / 2.0).map(|set| LemmaTag::TypeII { set })
}

/// Only meaningful when no type II subset exists: then the subset `I` with
/// the largest sum `<= 0.55` has sum `< 0.45`, and every index outside it is
/// long enough to serve as `r`. The longest smooth such index is taken.
fn type_i_ii(c: &DyadicCase) -> Option<LemmaTag> {
    let cap = 0.46 + c.eps / 8.0;
    let i1 = max_subset_at_most(&c.n, 0.55, 0.1);
    let r = (0..c.n.len())
        .filter(|i| c.smooth[*i] && c.n[*i] > 0.0 && !i1.contains(i))
        .max_by(|&a, &b| c.n[a].total_cmp(&c.n[b]).then(b.cmp(&a)))?;
    let i2: Vec<usize> = (0..c.n.len()).filter(|i| *i != r && !i1.contains(i)).collect();
    (sum_of(&c.n, &i1) <= cap + TOL && sum_of(&c.n, &i2) <= cap + TOL).then_some(LemmaTag::TypeIAndII { i1, i2, r })
}

fn type_i(c: &DyadicCase) -> impl Iterator<Item = LemmaTag> + '_ {
    (0..c.n.len())
        .filter(move |&i| c.smooth[i] && c.n[i] >= 0.45 + 2.0 * c.eps - TOL)
        .map(|i| LemmaTag::TypeI { i })
}

/// First applicable estimate in the order type II, type I/II, type I.
pub fn map_case_to_lemma(c: &DyadicCase) -> LemmaTag {
    type_ii(c)
        .or_else(|| type_i_ii(c))
        .or_else(|| type_i(c).next())
        .unwrap_or(LemmaTag::Unhandled)
}

/// Every estimate found applicable. The type I/II search is only run when no
/// type II subset exists.
pub fn applicable_lemmas(c: &DyadicCase) -> Vec<LemmaTag> {
    let mut out = Vec::new();
    match type_ii(c) {
        Some(t) => out.push(t),
        None => out.extend(type_i_ii(c)),
    }
    out.extend(type_i(c));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{all_dyadic_cases, sample_dyadic_cases, GENERATOR_LOG_X};

    fn case(smooth: &[f64], mu: &[f64], k: usize) -> DyadicCase {
        let mut n = vec![0.0; 2 * k - 1];
        n[..smooth.len()].copy_from_slice(smooth);
        n[k - 1..k - 1 + mu.len()].copy_from_slice(mu);
        DyadicCase::new(GENERATOR_LOG_X, 0.0, 0.0, n, k, 0.01).unwrap()
    }

    #[test]
    fn five_fifths() {
        let c = case(&[0.2; 5], &[], 20);
        match map_case_to_lemma(&c) {
            LemmaTag::TypeIAndII { i1, i2, r } => {
                assert!((sum_of(&c.n, &i1) - 0.4).abs() < 1e-12);
                assert!((sum_of(&c.n, &i2) - 0.4).abs() < 1e-12);
                assert!(c.smooth[r]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn balanced_pair_is_type_ii() {
        let c = case(&[0.5, 0.5], &[], 20);
        assert_eq!(map_case_to_lemma(&c), LemmaTag::TypeII { set: vec![0] });
    }

    #[test]
    fn long_smooth_variable() {
        // x^{0.6} smooth, the rest in Möbius variables of size x^{0.05}
        let c = case(&[0.6], &[0.05; 8], 20);
        let all = applicable_lemmas(&c);
        assert!(!all.iter().any(|t| matches!(t, LemmaTag::TypeII { .. })));
        assert!(all.contains(&LemmaTag::TypeI { i: 0 }));
        // 0.6 >= 0.45 + 2ε
        assert_ne!(map_case_to_lemma(&c), LemmaTag::Unhandled);
    }

    #[test]
    fn small_k_can_be_unhandled() {
        // k = 3: slots 0, 1 smooth, slots 2..5 Möbius variables up to (2x)^{1/3}.
        // No subset of {0.1, 0.3, 0.3, 0.3} lies in [0.445, 0.555]; the maximal
        // subset {0.1, 0.3} leaves only Möbius variables outside it.
        let c = DyadicCase::new(GENERATOR_LOG_X, 0.0, 0.0, vec![0.1, 0.0, 0.3, 0.3, 0.3], 3, 0.01).unwrap();
        assert_eq!(map_case_to_lemma(&c), LemmaTag::Unhandled);
    }

    #[test]
    fn validation() {
        assert!(DyadicCase::new(GENERATOR_LOG_X, 0.0, 0.0, vec![0.5; 3], 20, 0.01).is_err());
        assert!(DyadicCase::new(GENERATOR_LOG_X, 0.0, 0.0, vec![0.5, 0.2, 0.3], 2, 0.01).is_ok());
        // Möbius slot above (2x)^{1/k}
        let mut n = vec![0.0; 39];
        n[0] = 0.9;
        n[19] = 0.1;
        assert!(DyadicCase::new(GENERATOR_LOG_X, 0.0, 0.0, n, 20, 0.01).is_err());
    }

    #[test]
    fn generated_cases_are_covered() {
        for c in all_dyadic_cases(20, 0.01, 20).unwrap() {
            assert_ne!(map_case_to_lemma(&c), LemmaTag::Unhandled, "{:?}", c.n);
        }
        for c in sample_dyadic_cases(20, 0.01, 0.01, 2000, 1).unwrap() {
            assert_ne!(map_case_to_lemma(&c), LemmaTag::Unhandled, "{:?}", c.n);
        }
    }
}
