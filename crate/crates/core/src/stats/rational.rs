//! Dirichlet approximation `α = a/q + λ` with `q <= τ`, `|λ| <= 1/(qτ)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalApproximation {
    pub alpha: f64,
    pub a: i64,
    pub q: u64,
    pub lambda: f64,
    pub tau: f64,
}

impl RationalApproximation {
    /// `|α - a/q| <= 1/(qτ)` checked in exact rational arithmetic on the
    /// binary value of `α`, together with `gcd(a, q) = 1` and `1 <= q <= τ`.
    pub fn satisfies_dirichlet_bound(&self) -> bool {
        let Some(alpha) = BigRational::from_float(self.alpha) else {
            return false;
        };
        let Some(tau) = BigRational::from_float(self.tau) else {
            return false;
        };
        let q = BigInt::from(self.q);
        let a = BigInt::from(self.a);
        if self.q == 0 || a.gcd(&q) != BigInt::one() || BigRational::from_integer(q.clone()) > tau {
            return false;
        }
        let lambda = (alpha - BigRational::new(a, q.clone())).abs();
        lambda * BigRational::from_integer(q) * tau <= BigRational::one()
    }
}

/// Last continued-fraction convergent of `α` whose denominator is at most
/// `τ`. The next denominator exceeds `τ` (or the expansion terminated), which
/// gives the Dirichlet bound.
pub fn rational_approx(alpha: f64, tau: f64) -> Result<RationalApproximation> {
    if !(tau >= 1.0 && tau.is_finite()) {
        return Err(Error::param("tau", format!("must be finite and >= 1, got {tau}")));
    }
    if !alpha.is_finite() || alpha.abs() >= 9.0e18 {
        return Err(Error::param("alpha", format!("must be finite with |alpha| < 9e18, got {alpha}")));
    }
    let exact = BigRational::from_float(alpha).expect("finite");
    let tau_floor = BigInt::from(tau.floor() as u64);
    // convergents p_n / q_n with p_{-1} = 1, q_{-1} = 0
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let mut x = exact.clone();
    let a0 = x.floor().to_integer();
    let (mut p, mut q) = (a0.clone(), BigInt::one());
    let mut rest = x.clone() - BigRational::from_integer(a0);
    while !rest.is_zero() {
        x = rest.recip();
        let an = x.floor().to_integer();
        let p_next = &an * &p + &p_prev;
        let q_next = &an * &q + &q_prev;
        if q_next > tau_floor {
            break;
        }
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        rest = x.clone() - BigRational::from_integer(an);
    }
    let lambda = (exact - BigRational::new(p.clone(), q.clone())).to_f64().unwrap_or(0.0);
    Ok(RationalApproximation {
        alpha,
        a: p.to_i64().expect("|a| <= |alpha| q"),
        q: q.to_u64().expect("q <= tau"),
        lambda,
        tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = rational_approx(1.0 / 3.0, 10.0).unwrap();
        assert_eq!((r.a, r.q), (1, 3));
        assert!(r.lambda.abs() < 1e-16);
        let r = rational_approx(2f64.sqrt(), 100.0).unwrap();
        assert_eq!((r.a, r.q), (99, 70));
        assert!((r.lambda.abs() - 7.2e-5).abs() < 1e-6);
        assert!(r.lambda.abs() <= 1.0 / 7000.0);
        let r = rational_approx(0.0, 5.0).unwrap();
        assert_eq!((r.a, r.q, r.lambda), (0, 1, 0.0));
        assert!(rational_approx(0.5, 0.5).is_err());
    }

    #[test]
    fn negative_and_integer_alpha() {
        let r = rational_approx(-2.25, 3.0).unwrap();
        assert_eq!((r.a, r.q), (-2, 1));
        assert!(r.satisfies_dirichlet_bound());
        let r = rational_approx(7.0, 1.0).unwrap();
        assert_eq!((r.a, r.q, r.lambda), (7, 1, 0.0));
    }

    /// `min_a |qα - a|` for every `q <= limit`, in f64.
    fn distances(alpha: f64, limit: u64) -> Vec<f64> {
        (1..=limit).map(|q| (alpha * q as f64 - (alpha * q as f64).round()).abs()).collect()
    }

    proptest! {
        #[test]
        fn dirichlet_bound_holds(alpha in -50.0f64..50.0, tau in 1.0f64..1e6) {
            let r = rational_approx(alpha, tau).unwrap();
            prop_assert!(r.satisfies_dirichlet_bound());
        }

        #[test]
        fn convergent_is_best_of_second_kind(alpha in 0.0f64..1.0, tau in 1u64..300) {
            let r = rational_approx(alpha, tau as f64).unwrap();
            let d = distances(alpha, r.q);
            let own = (alpha * r.q as f64 - r.a as f64).abs();
            // no smaller denominator gets |q'α - a'| below the convergent's
            prop_assert!(d[..r.q as usize - 1].iter().all(|&e| e >= own - 1e-12));
        }
    }
}
