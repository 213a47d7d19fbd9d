//! Exact rationals and residues modulo one.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact rational arithmetic used for every exact coefficient in the crate.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// A rational number in `[0, 1)`, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FractionModOne {
    num: i64,
    den: i64,
}

impl FractionModOne {
    /// Reduces `num/den` modulo one. Fails when `den` is not positive.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::InvalidSpec(format!("denominator {den} must be positive")));
        }
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        Ok(FractionModOne { num: r / g, den: den / g })
    }

    /// The residue `a/N` for a label `a` modulo `N`.
    pub fn from_residue(a: i64, n: u64) -> Self {
        Self::new(a, n as i64).expect("positive modulus")
    }

    pub fn zero() -> Self {
        FractionModOne { num: 0, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.num, self.den).unwrap()
    }

    /// The representative in `[0,1)` as an exact rational.
    pub fn to_rational(&self) -> Rational {
        rat(self.num as i128, self.den as i128)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for FractionModOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Fractional part of an exact rational.
pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

/// Prints an exact rational as `p/q` (always with an explicit denominator).
pub fn rat_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_into_unit_interval() {
        let x = FractionModOne::new(-3, 7).unwrap();
        assert_eq!((x.numerator(), x.denominator()), (4, 7));
        let y = FractionModOne::new(10, 4).unwrap();
        assert_eq!((y.numerator(), y.denominator()), (1, 2));
        assert!(FractionModOne::new(5, 5).unwrap().is_zero());
        assert_eq!(FractionModOne::new(0, 9).unwrap().denominator(), 1);
    }

    #[test]
    fn rejects_bad_denominator() {
        assert!(FractionModOne::new(1, 0).is_err());
        assert!(FractionModOne::new(1, -3).is_err());
    }

    #[test]
    fn negation_and_fractional_part() {
        let x = FractionModOne::new(2, 5).unwrap();
        assert_eq!(x.neg(), FractionModOne::new(3, 5).unwrap());
        assert_eq!(frac_part(&rat(-7, 3)), rat(2, 3));
    }
}
