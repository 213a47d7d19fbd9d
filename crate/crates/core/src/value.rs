//! Complex numbers carrying an absolute error bound.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A complex value together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl ComplexValue {
    pub fn new(z: Complex64, err: f64) -> Self {
        debug_assert!(err.is_finite() && err >= 0.0, "bad error bound {err}");
        ComplexValue { re: z.re, im: z.im, err }
    }

    pub fn exact(z: Complex64) -> Self {
        Self::new(z, 0.0)
    }

    pub fn real(x: f64) -> Self {
        Self::exact(Complex64::new(x, 0.0))
    }

    pub fn zero() -> Self {
        Self::real(0.0)
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.z().norm()
    }

    pub fn conj(&self) -> Self {
        ComplexValue { re: self.re, im: -self.im, err: self.err }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.z() * c, self.err * c.norm() + f64::EPSILON * (self.z() * c).norm())
    }

    /// Distance between two values.
    pub fn dist(&self, other: &ComplexValue) -> f64 {
        (self.z() - other.z()).norm()
    }
}

impl Add for ComplexValue {
    type Output = ComplexValue;
    fn add(self, o: ComplexValue) -> ComplexValue {
        let z = self.z() + o.z();
        ComplexValue::new(z, self.err + o.err + f64::EPSILON * z.norm())
    }
}

impl Sub for ComplexValue {
    type Output = ComplexValue;
    fn sub(self, o: ComplexValue) -> ComplexValue {
        let z = self.z() - o.z();
        ComplexValue::new(z, self.err + o.err + f64::EPSILON * z.norm())
    }
}

impl Mul for ComplexValue {
    type Output = ComplexValue;
    fn mul(self, o: ComplexValue) -> ComplexValue {
        let z = self.z() * o.z();
        let err = self.abs() * o.err + o.abs() * self.err + self.err * o.err + 2.0 * f64::EPSILON * z.norm();
        ComplexValue::new(z, err)
    }
}

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue { re: -self.re, im: -self.im, err: self.err }
    }
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue::exact(z)
    }
}
