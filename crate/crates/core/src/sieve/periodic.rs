//! Multiplicative functions whose prime values depend only on `p mod D`
//! once `p` is large enough.

use num_complex::Complex64;
use num_integer::Integer;
use std::collections::BTreeMap;

use super::table::{divisor_k_prime_power, FactorTable};
use crate::{Error, Result};

/// How `f(p^e)` for `e >= 2` is obtained from the prime values.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimePowerRule {
    /// `f(p^e) = f(p)^e`.
    CompletelyMultiplicative,
    /// Values listed per `(p, e)`; `e = 1` falls back to the prime values.
    Explicit(BTreeMap<(u64, u32), Complex64>),
    /// `f(p^e) = C(k+e-1, e)`, the prime-power values of τ_k.
    DivisorLike(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicMultiplicativeFunction {
    pub modulus: u64,
    pub n0: u64,
    /// Value at primes `p >= n0` by residue class `p mod D`.
    pub prime_values: BTreeMap<u64, Complex64>,
    /// Explicit values at small primes. Takes precedence over residues and
    /// is required for `p < n0` and for primes dividing `D`.
    pub small_prime_values: BTreeMap<u64, Complex64>,
    pub prime_power_rule: PrimePowerRule,
    pub kappa: u32,
}

impl PeriodicMultiplicativeFunction {
    /// τ_k written as a periodic function with modulus 1.
    pub fn divisor_like(k: f64) -> Self {
        Self {
            modulus: 1,
            n0: 1,
            prime_values: BTreeMap::from([(0, Complex64::new(k, 0.0))]),
            small_prime_values: BTreeMap::new(),
            prime_power_rule: PrimePowerRule::DivisorLike(k),
            kappa: k.ceil() as u32,
        }
    }

    /// Completely multiplicative `f` with `f(p) = +1` for `p ≡ 1 (4)`,
    /// `-1` for `p ≡ 3 (4)` and `f(2) = 0`.
    pub fn mod4_signed() -> Self {
        Self {
            modulus: 4,
            n0: 1,
            prime_values: BTreeMap::from([
                (1, Complex64::new(1.0, 0.0)),
                (3, Complex64::new(-1.0, 0.0)),
            ]),
            small_prime_values: BTreeMap::from([(2, Complex64::new(0.0, 0.0))]),
            prime_power_rule: PrimePowerRule::CompletelyMultiplicative,
            kappa: 1,
        }
    }

    /// The constant function 1.
    pub fn one() -> Self {
        Self {
            modulus: 1,
            n0: 1,
            prime_values: BTreeMap::from([(0, Complex64::new(1.0, 0.0))]),
            small_prime_values: BTreeMap::new(),
            prime_power_rule: PrimePowerRule::CompletelyMultiplicative,
            kappa: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::param("D", "modulus must be positive"));
        }
        for (&b, v) in &self.prime_values {
            if b >= self.modulus || b.gcd(&self.modulus) != 1 {
                return Err(Error::param(
                    "prime_values",
                    format!("residue {b} is not a unit mod {}", self.modulus),
                ));
            }
            self.check_kappa(v)?;
        }
        for v in self.small_prime_values.values() {
            self.check_kappa(v)?;
        }
        if let PrimePowerRule::DivisorLike(k) = self.prime_power_rule {
            if !k.is_finite() || k < 1.0 {
                return Err(Error::param("k", format!("divisor order must be >= 1, got {k}")));
            }
        }
        Ok(())
    }

    fn check_kappa(&self, v: &Complex64) -> Result<()> {
        if v.norm() > self.kappa as f64 + 1e-12 {
            return Err(Error::param(
                "kappa",
                format!("|f(p)| = {} exceeds kappa = {}", v.norm(), self.kappa),
            ));
        }
        Ok(())
    }

    pub fn at_prime(&self, p: u64) -> Result<Complex64> {
        if let Some(v) = self.small_prime_values.get(&p) {
            return Ok(*v);
        }
        if p < self.n0 {
            return Err(Error::UncoveredPrime {
                p,
                reason: format!("below n0 = {} and not listed", self.n0),
            });
        }
        self.prime_values
            .get(&(p % self.modulus))
            .copied()
            .ok_or_else(|| Error::UncoveredPrime {
                p,
                reason: format!("no value for residue {} mod {}", p % self.modulus, self.modulus),
            })
    }

    pub fn at_prime_power(&self, p: u64, e: u32) -> Result<Complex64> {
        if e == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        match &self.prime_power_rule {
            PrimePowerRule::CompletelyMultiplicative => Ok(self.at_prime(p)?.powu(e)),
            PrimePowerRule::Explicit(map) => match map.get(&(p, e)) {
                Some(v) => Ok(*v),
                None if e == 1 => self.at_prime(p),
                None => Err(Error::UncoveredPrimePower { p, e }),
            },
            PrimePowerRule::DivisorLike(k) => {
                if e == 1 {
                    self.at_prime(p)
                } else {
                    Ok(Complex64::new(divisor_k_prime_power(*k, e), 0.0))
                }
            }
        }
    }

    /// `f(n)` from the factorization `n = prod p^e`.
    pub fn eval_factored<I: IntoIterator<Item = (u64, u32)>>(&self, factors: I) -> Result<Complex64> {
        factors
            .into_iter()
            .try_fold(Complex64::new(1.0, 0.0), |acc, (p, e)| {
                Ok(acc * self.at_prime_power(p, e)?)
            })
    }
}

pub fn evaluate_periodic_multiplicative(
    table: &FactorTable,
    spec: &PeriodicMultiplicativeFunction,
) -> Result<Vec<Complex64>> {
    spec.validate()?;
    table.entries().map(|e| spec.eval_factored(e.factors())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{evaluate_function, factor_interval, ArithmeticFunctionId, Interval};

    fn at(spec: &PeriodicMultiplicativeFunction, n: u64) -> Complex64 {
        let t = factor_interval(Interval::new(n - 1, 1).unwrap()).unwrap();
        evaluate_periodic_multiplicative(&t, spec).unwrap()[0]
    }

    #[test]
    fn mod4_examples() {
        let f = PeriodicMultiplicativeFunction::mod4_signed();
        assert_eq!(at(&f, 15), Complex64::new(-1.0, 0.0));
        assert_eq!(at(&f, 9), Complex64::new(1.0, 0.0));
        assert_eq!(at(&f, 10), Complex64::new(0.0, 0.0));
        assert_eq!(at(&f, 2), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn divisor_like_agrees_with_tau() {
        let t = factor_interval(Interval::new(1, 9_999).unwrap()).unwrap();
        let f = evaluate_periodic_multiplicative(&t, &PeriodicMultiplicativeFunction::divisor_like(2.0)).unwrap();
        let tau = evaluate_function(&t, ArithmeticFunctionId::Divisor { k: 2.0 }).unwrap();
        for (a, b) in f.iter().zip(&tau) {
            assert_eq!(a.re, *b);
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn explicit_rule_reports_missing_power() {
        let mut f = PeriodicMultiplicativeFunction::mod4_signed();
        f.prime_power_rule = PrimePowerRule::Explicit(BTreeMap::from([((3, 2), Complex64::new(0.5, 0.0))]));
        assert_eq!(at(&f, 9), Complex64::new(0.5, 0.0));
        assert_eq!(at(&f, 5), Complex64::new(1.0, 0.0));
        let t = factor_interval(Interval::new(24, 1).unwrap()).unwrap();
        match evaluate_periodic_multiplicative(&t, &f) {
            Err(Error::UncoveredPrimePower { p: 5, e: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn uncovered_small_prime() {
        let mut f = PeriodicMultiplicativeFunction::mod4_signed();
        f.small_prime_values.clear();
        assert!(matches!(
            f.at_prime(2),
            Err(Error::UncoveredPrime { p: 2, .. })
        ));
    }

    #[test]
    fn validation() {
        let mut f = PeriodicMultiplicativeFunction::mod4_signed();
        f.prime_values.insert(2, Complex64::new(1.0, 0.0));
        assert!(f.validate().is_err());
        let mut g = PeriodicMultiplicativeFunction::mod4_signed();
        g.kappa = 0;
        assert!(g.validate().is_err());
    }
}
