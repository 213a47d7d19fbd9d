//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are polynomials in `zeta_n` reduced modulo the `n`-th cyclotomic
//! polynomial, so equality is a coefficientwise comparison. Elements of
//! different orders are lifted to the least common multiple before combining.

use crate::frac::{rat_string, Rational};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    assert!(n >= 1);
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let da = a.len() - 1;
    let mut q = vec![0i128; da - db + 1];
    for i in (0..=da - db).rev() {
        let c = rem[i + db]; // divisor is monic
        q[i] = c;
        for j in 0..=db {
            rem[i + j] -= c * b[j];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// An element of `Q(zeta_order)`.
#[derive(Debug, Clone)]
pub struct Cyclo {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclo {
    pub fn zero(order: u64) -> Self {
        Cyclo { order, coeffs: vec![Rational::zero(); totient(order) as usize] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclo { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i128) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_order^j`.
    pub fn root(order: u64, j: i64) -> Self {
        let e = j.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::reduce(order, poly)
    }

    /// The fourth root of unity `i`.
    pub fn i() -> Self {
        Self::root(4, 1)
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Self::root(4, k)
    }

    /// `1/(1 - zeta_order^j)`, for `zeta_order^j != 1`.
    pub fn inv_one_minus_root(order: u64, j: i64) -> Self {
        let j = j.rem_euclid(order as i64) as u64;
        assert!(j != 0, "1 - zeta^0 is not invertible");
        // w = zeta^j has exact order m; 1/(1-w) = -(1/m) sum_i i w^i
        let m = order / j.gcd(&order);
        let mut acc = Cyclo::zero(order);
        for i in 1..m as i64 {
            acc = acc + Cyclo::root(order, i * j as i64).scale(&Rational::from_integer(i as i128));
        }
        acc.scale(&Rational::new(-1, m as i128))
    }

    /// The element `sum_j poly[j] zeta_order^j`, for any length of `poly`.
    pub fn from_powers(order: u64, poly: Vec<Rational>) -> Self {
        Self::reduce(order, poly)
    }

    fn reduce(order: u64, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(order);
        let d = phi.len() - 1;
        if poly.len() > d {
            for i in (d..poly.len()).rev() {
                let c = poly[i];
                if c.is_zero() {
                    continue;
                }
                for (j, &pj) in phi.iter().enumerate() {
                    poly[i - d + j] -= c * Rational::from_integer(pj);
                }
            }
        }
        poly.resize(d, Rational::zero());
        Cyclo { order, coeffs: poly }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients on the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-expresses the element in `Q(zeta_to)`; `to` must be a multiple of the order.
    pub fn lift(&self, to: u64) -> Self {
        assert!(to % self.order == 0, "cannot lift order {} to {}", self.order, to);
        if to == self.order {
            return self.clone();
        }
        let step = (to / self.order) as usize;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len().max(1)];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[j * step] = *c;
        }
        Self::reduce(to, poly)
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let l = a.order.lcm(&b.order);
        (a.lift(l), b.lift(l))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs.first().copied().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Complex conjugate: `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut poly = vec![Rational::zero(); n.max(1)];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(n - j) % n.max(1)] += *c;
        }
        Self::reduce(self.order, poly)
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n) * (*c.numer() as f64 / *c.denom() as f64))
            .sum()
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclo::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(&self, &o);
        Cyclo { order: a.order, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        self + (-o)
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(&self, &o);
        if a.coeffs.len() == 1 {
            return b.scale(&a.coeffs[0]);
        }
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclo::reduce(a.order, poly)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match j {
                0 => rat_string(c),
                1 => format!("{}*z{}", rat_string(c), self.order),
                _ => format!("{}*z{}^{}", rat_string(c), self.order, j),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::rat;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_sum_to_zero() {
        let mut s = Cyclo::zero(5);
        for j in 0..5 {
            s = s + Cyclo::root(5, j);
        }
        assert!(s.is_zero());
        assert_eq!(Cyclo::root(7, 3) * Cyclo::root(7, 4), Cyclo::one());
    }

    #[test]
    fn mixed_orders() {
        // i * i = -1 and zeta_3 * zeta_4 = zeta_12^7
        assert_eq!(Cyclo::i() * Cyclo::i(), Cyclo::from_int(-1));
        assert_eq!(Cyclo::root(3, 1) * Cyclo::root(4, 1), Cyclo::root(12, 7));
        let z = (Cyclo::root(3, 1) + Cyclo::i()).to_complex();
        let e = Complex64::from_polar(1.0, 2.0 * PI / 3.0) + Complex64::i();
        assert!((z - e).norm() < 1e-14);
    }

    #[test]
    fn inverse_of_one_minus_root() {
        for n in [3u64, 5, 6, 8] {
            for j in 1..n as i64 {
                let inv = Cyclo::inv_one_minus_root(n, j);
                let prod = inv * (Cyclo::one() - Cyclo::root(n, j));
                assert_eq!(prod, Cyclo::one(), "n={n} j={j}");
            }
        }
    }

    #[test]
    fn conjugation_and_rational_part() {
        let x = Cyclo::root(5, 2).scale(&rat(3, 2));
        assert_eq!(x.conj(), Cyclo::root(5, 3).scale(&rat(3, 2)));
        let t = Cyclo::root(5, 1) + Cyclo::root(5, 4);
        assert!(t.as_rational().is_none());
        assert!((t.to_complex().im).abs() < 1e-15);
        assert_eq!((Cyclo::root(3, 1) + Cyclo::root(3, 2)).as_rational(), Some(rat(-1, 1)));
    }
}
