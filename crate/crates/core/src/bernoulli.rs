//! Bernoulli numbers and polynomials in exact arithmetic.

use crate::frac::{rat, Rational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::sync::OnceLock;

fn binomial_big(n: usize, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Bernoulli numbers `B_0..=B_n` (convention `B_1 = -1/2`), exact.
pub fn bernoulli_numbers_big(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial_big(m + 1, k)) * bk;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

const SMALL: usize = 40;

fn small_table() -> &'static Vec<Rational> {
    static T: OnceLock<Vec<Rational>> = OnceLock::new();
    T.get_or_init(|| {
        bernoulli_numbers_big(SMALL)
            .into_iter()
            .map(|q| {
                rat(
                    q.numer().to_i128().expect("Bernoulli numerator fits"),
                    q.denom().to_i128().expect("Bernoulli denominator fits"),
                )
            })
            .collect()
    })
}

/// `B_n` as an exact rational, for `n <= 40`.
pub fn bernoulli_number(n: usize) -> Rational {
    assert!(n <= SMALL, "Bernoulli index {n} beyond table");
    small_table()[n]
}

/// `B_{2j}/(2j)!` as floats for `j = 0..=jmax`, used by Euler-Maclaurin.
pub fn em_coefficients() -> &'static Vec<f64> {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        let b = bernoulli_numbers_big(2 * EM_TERMS);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(EM_TERMS + 1);
        for (i, bi) in b.iter().enumerate() {
            if i > 0 {
                fact *= BigInt::from(i);
            }
            if i % 2 == 0 {
                let q = bi / BigRational::from_integer(fact.clone());
                out.push(q.to_f64().unwrap());
            }
        }
        out
    })
}

/// Number of Euler-Maclaurin correction terms available.
pub const EM_TERMS: usize = 40;

pub fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let mut c: i128 = 1;
    for i in 0..k as i128 {
        c = c * (n as i128 - i) / (i + 1);
    }
    c
}

/// `B_n(x)` exactly, from `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: u32, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    // accumulate from the top power downwards: k = n, n-1, ..., 0
    for k in (0..=n).rev() {
        acc += Rational::from_integer(binomial(n, k)) * bernoulli_number(k as usize) * xp;
        xp *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat(0, 1));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(bernoulli_poly(1, &rat(1, 4)), rat(-1, 4));
        assert_eq!(bernoulli_poly(0, &rat(5, 7)), rat(1, 1));
        assert_eq!(bernoulli_poly(2, &rat(1, 6)), rat(1, 36));
        // B_3(x) = x^3 - 3x^2/2 + x/2
        let x = rat(2, 5);
        assert_eq!(bernoulli_poly(3, &x), x * x * x - rat(3, 2) * x * x + x / 2);
    }

    #[test]
    fn reflection_and_difference() {
        for n in 0..10u32 {
            for k in 0..7i128 {
                let x = rat(k, 7);
                let sign: i128 = if n % 2 == 0 { 1 } else { -1 };
                assert_eq!(bernoulli_poly(n, &(rat(1, 1) - x)), bernoulli_poly(n, &x) * sign);
                if n >= 1 {
                    let d = bernoulli_poly(n, &(x + 1)) - bernoulli_poly(n, &x);
                    let mut p = Rational::one();
                    for _ in 0..n - 1 {
                        p *= x;
                    }
                    assert_eq!(d, p * n as i128);
                }
            }
        }
    }

    #[test]
    fn em_table_matches() {
        let t = em_coefficients();
        assert!((t[1] - 1.0 / 12.0).abs() < 1e-17);
        assert!((t[2] + 1.0 / 720.0).abs() < 1e-18);
    }
}
