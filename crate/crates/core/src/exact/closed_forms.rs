//! Right-hand sides of the derangement-sum identities for the Sun matrix.

use num_bigint::BigInt;
use super::rational::{binomial, double_factorial, factorial, pow2, Rational};
use crate::error::{Error, Result};

/// Exact closed-form values for a given `n`.
///
/// For even `n` the permanent of the full matrix is `((n-1)!!)^2 / 2^n`,
/// which also equals `(n! / 4^n) * C(n, n/2)`. For odd `n` the permanent of
/// a principal minor is `((n-1)/2)!^2 / n` and its determinant carries the
/// extra sign `(-1)^((n-1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForms {
    Even {
        n: u32,
        rhs_even: Rational,
        rhs_even_binomial: Rational,
    },
    Odd {
        n: u32,
        rhs_perm: Rational,
        rhs_det: Rational,
    },
}

impl ClosedForms {
    pub fn n(&self) -> u32 {
        match self {
            ClosedForms::Even { n, .. } | ClosedForms::Odd { n, .. } => *n,
        }
    }

    pub fn rhs_even(&self) -> Result<&Rational> {
        match self {
            ClosedForms::Even { rhs_even, .. } => Ok(rhs_even),
            ClosedForms::Odd { n, .. } => Err(Error::Parity(format!(
                "full-matrix permanent closed form needs even n, got {n}"
            ))),
        }
    }

    pub fn rhs_perm(&self) -> Result<&Rational> {
        match self {
            ClosedForms::Odd { rhs_perm, .. } => Ok(rhs_perm),
            ClosedForms::Even { n, .. } => Err(Error::Parity(format!(
                "minor permanent closed form needs odd n, got {n}"
            ))),
        }
    }

    pub fn rhs_det(&self) -> Result<&Rational> {
        match self {
            ClosedForms::Odd { rhs_det, .. } => Ok(rhs_det),
            ClosedForms::Even { n, .. } => Err(Error::Parity(format!(
                "minor determinant closed form needs odd n, got {n}"
            ))),
        }
    }
}

pub fn closed_forms(n: u32) -> Result<ClosedForms> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    if n % 2 == 0 {
        let df = double_factorial(n as i64 - 1);
        let rhs_even = Rational::new(&df * &df, pow2(n));
        let rhs_even_binomial = Rational::new(
            factorial(n as u64) * binomial(n as u64, n as u64 / 2),
            pow2(2 * n),
        );
        assert_eq!(rhs_even, rhs_even_binomial, "double-factorial identity at n = {n}");
        Ok(ClosedForms::Even {
            n,
            rhs_even,
            rhs_even_binomial,
        })
    } else {
        let h = factorial((n as u64 - 1) / 2);
        let rhs_perm = Rational::new(&h * &h, BigInt::from(n));
        let rhs_det = if ((n - 1) / 2) % 2 == 0 {
            rhs_perm.clone()
        } else {
            -rhs_perm.clone()
        };
        Ok(ClosedForms::Odd {
            n,
            rhs_perm,
            rhs_det,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rational, rational_int};

    #[test]
    fn even_values() {
        let c = closed_forms(2).unwrap();
        assert_eq!(c.rhs_even().unwrap(), &rational(1, 4));
        let c = closed_forms(4).unwrap();
        assert_eq!(c.rhs_even().unwrap(), &rational(9, 16));
        assert_eq!(rational(24, 256) * rational_int(6), rational(9, 16));
        assert_eq!(closed_forms(6).unwrap().rhs_even().unwrap(), &rational(225, 64));
    }

    #[test]
    fn odd_values() {
        let c = closed_forms(3).unwrap();
        assert_eq!(c.rhs_perm().unwrap(), &rational(1, 3));
        assert_eq!(c.rhs_det().unwrap(), &rational(-1, 3));
        assert_eq!(closed_forms(5).unwrap().rhs_det().unwrap(), &rational(4, 5));
        assert_eq!(closed_forms(7).unwrap().rhs_perm().unwrap(), &rational(36, 7));
        assert_eq!(closed_forms(9).unwrap().rhs_det().unwrap(), &rational_int(64));
    }

    #[test]
    fn wrong_branch_is_a_parity_error() {
        assert!(matches!(closed_forms(4).unwrap().rhs_det(), Err(Error::Parity(_))));
        assert!(matches!(closed_forms(5).unwrap().rhs_even(), Err(Error::Parity(_))));
        assert!(closed_forms(1).is_err());
    }

    #[test]
    fn double_factorial_identity_up_to_30() {
        // closed_forms asserts the equality internally; also check it here
        for n in (2..=30).step_by(2) {
            if let ClosedForms::Even {
                rhs_even,
                rhs_even_binomial,
                ..
            } = closed_forms(n).unwrap()
            {
                assert_eq!(rhs_even, rhs_even_binomial);
            } else {
                panic!("n = {n} should be even");
            }
        }
    }
}
