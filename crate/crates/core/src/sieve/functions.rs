use serde::{Deserialize, Serialize};

use super::table::{FactorEntry, FactorTable};
use crate::{Error, Result};

/// The arithmetic functions that can be read off a factorization.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArithmeticFunctionId {
    Mobius,
    /// τ_k for real `k >= 1`.
    Divisor { k: f64 },
    OmegaDistinct,
    OmegaTotal,
    /// Number of distinct prime factors in `(p, q]`.
    OmegaRange { p: f64, q: f64 },
    TwoSquaresIndicator,
    /// 1 iff Ω(n) = 2, prime squares included.
    E2Indicator,
    VonMangoldt,
}

impl ArithmeticFunctionId {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Divisor { k } if !k.is_finite() || k < 1.0 => {
                Err(Error::param("k", format!("divisor order must be finite and >= 1, got {k}")))
            }
            Self::OmegaRange { p, q } if !(p >= 2.0 && p < q) => {
                Err(Error::param("P", format!("need 2 <= P < Q, got ({p}, {q}]")))
            }
            _ => Ok(()),
        }
    }

    /// Whether every value is an integer, so window sums can be done exactly.
    pub fn is_integer_valued(&self) -> bool {
        match *self {
            Self::Divisor { k } => k.fract() == 0.0,
            Self::VonMangoldt => false,
            _ => true,
        }
    }

    pub fn value(&self, e: &FactorEntry<'_>) -> f64 {
        match *self {
            Self::Mobius => e.mobius() as f64,
            Self::Divisor { k } => e.divisor_k(k),
            Self::OmegaDistinct => e.omega() as f64,
            Self::OmegaTotal => e.big_omega() as f64,
            Self::OmegaRange { p, q } => e.omega_in(p, q) as f64,
            Self::TwoSquaresIndicator => e.is_sum_of_two_squares() as u8 as f64,
            Self::E2Indicator => e.is_e2() as u8 as f64,
            Self::VonMangoldt => e.von_mangoldt(),
        }
    }

    /// Exact integer value. `None` for non-integer-valued functions.
    pub fn int_value(&self, e: &FactorEntry<'_>) -> Option<i128> {
        Some(match *self {
            Self::Mobius => e.mobius() as i128,
            Self::Divisor { k } if k.fract() == 0.0 => e.divisor_k_exact(k as u32) as i128,
            Self::OmegaDistinct => e.omega() as i128,
            Self::OmegaTotal => e.big_omega() as i128,
            Self::OmegaRange { p, q } => e.omega_in(p, q) as i128,
            Self::TwoSquaresIndicator => e.is_sum_of_two_squares() as i128,
            Self::E2Indicator => e.is_e2() as i128,
            _ => return None,
        })
    }

    pub fn name(&self) -> String {
        match *self {
            Self::Mobius => "mobius".into(),
            Self::Divisor { k } => format!("divisor_{k}"),
            Self::OmegaDistinct => "omega".into(),
            Self::OmegaTotal => "big_omega".into(),
            Self::OmegaRange { p, q } => format!("omega_range_{p}_{q}"),
            Self::TwoSquaresIndicator => "two_squares".into(),
            Self::E2Indicator => "e2".into(),
            Self::VonMangoldt => "von_mangoldt".into(),
        }
    }
}

/// One value per entry of the table, in window order.
pub fn evaluate_function(table: &FactorTable, f: ArithmeticFunctionId) -> Result<Vec<f64>> {
    f.validate()?;
    Ok(table.entries().map(|e| f.value(&e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{factor_interval, Interval};

    fn eval_at(n: u64, f: ArithmeticFunctionId) -> f64 {
        let t = factor_interval(Interval::new(n - 1, 1).unwrap()).unwrap();
        evaluate_function(&t, f).unwrap()[0]
    }

    fn mobius_by_definition(mut n: u64) -> i32 {
        let mut sign = 1;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                n /= d;
                if n % d == 0 {
                    return 0;
                }
                sign = -sign;
            }
            d += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    #[test]
    fn mobius_examples() {
        let t = factor_interval(Interval::new(10, 4).unwrap()).unwrap();
        let v = evaluate_function(&t, ArithmeticFunctionId::Mobius).unwrap();
        let expect: Vec<f64> = (11..=14).map(|n| mobius_by_definition(n) as f64).collect();
        assert_eq!(v, expect);
        assert_eq!(v, vec![-1.0, 0.0, -1.0, 1.0]);
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(eval_at(12, ArithmeticFunctionId::Divisor { k: 2.0 }), 6.0);
        assert_eq!(eval_at(4, ArithmeticFunctionId::Divisor { k: 3.0 }), 6.0);
        // C(2.5, 2) at p^2
        assert_eq!(eval_at(9, ArithmeticFunctionId::Divisor { k: 1.5 }), 1.5 * 2.5 / 2.0);
    }

    #[test]
    fn indicator_examples() {
        use ArithmeticFunctionId::*;
        assert_eq!(eval_at(13, TwoSquaresIndicator), 1.0);
        assert_eq!(eval_at(7, TwoSquaresIndicator), 0.0);
        assert_eq!(eval_at(14, E2Indicator), 1.0);
        assert_eq!(eval_at(8, E2Indicator), 0.0);
        assert_eq!(eval_at(9, E2Indicator), 1.0);
        assert!((eval_at(8, VonMangoldt) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(eval_at(12, VonMangoldt), 0.0);
        assert_eq!(eval_at(60, OmegaRange { p: 2.0, q: 5.0 }), 2.0);
    }

    #[test]
    fn squarefree_count_matches_trial_division() {
        for (x, h) in [(1u64, 5000u64), (123_456, 3000), (997_000, 3000)] {
            let t = factor_interval(Interval::new(x, h).unwrap()).unwrap();
            let mu = evaluate_function(&t, ArithmeticFunctionId::Mobius).unwrap();
            let table_count = mu.iter().filter(|v| **v != 0.0).count();
            let direct = (x + 1..=x + h)
                .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0))
                .count();
            assert_eq!(table_count, direct);
        }
    }

    #[test]
    fn divisor_sum_matches_hyperbola_count() {
        for n in [1_000u64, 10_000, 100_000] {
            let t = factor_interval(Interval::new(1, n - 1).unwrap()).unwrap();
            let s: f64 = evaluate_function(&t, ArithmeticFunctionId::Divisor { k: 2.0 })
                .unwrap()
                .iter()
                .sum::<f64>()
                + 1.0;
            let hyperbola: u64 = (1..=n).map(|d| n / d).sum();
            assert_eq!(s as u64, hyperbola);
        }
    }

    #[test]
    fn two_squares_matches_brute_force() {
        let t = factor_interval(Interval::new(1, 9_999).unwrap()).unwrap();
        for e in t.entries() {
            let n = e.n;
            let brute = (0..).take_while(|a| a * a <= n).any(|a| {
                let r = n - a * a;
                let b = (r as f64).sqrt().round() as u64;
                b * b == r
            });
            assert_eq!(e.is_sum_of_two_squares(), brute, "n = {n}");
        }
    }

    #[test]
    fn validation() {
        assert!(ArithmeticFunctionId::Divisor { k: 0.5 }.validate().is_err());
        assert!(ArithmeticFunctionId::Divisor { k: f64::NAN }.validate().is_err());
        assert!(ArithmeticFunctionId::OmegaRange { p: 5.0, q: 5.0 }.validate().is_err());
        assert!(ArithmeticFunctionId::OmegaRange { p: 1.0, q: 5.0 }.validate().is_err());
    }
}
