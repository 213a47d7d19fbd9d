//! Truncated Fourier series in `q^(1/D)` with exact cyclotomic or
//! approximate complex coefficients.

use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::frac::Rational;
use crate::value::ComplexValue;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::OnceLock;

/// Default truncation, in units of `q^(1/D)`.
pub const DEFAULT_TRUNCATION: u64 = 200;

/// A single Fourier coefficient.
#[derive(Debug, Clone, PartialEq)]
pub enum Coeff {
    Exact(Cyclo),
    Approx(ComplexValue),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Exact(Cyclo::from_int(0))
    }

    pub fn rational(r: Rational) -> Self {
        Coeff::Exact(Cyclo::from_rational(r))
    }

    pub fn to_value(&self) -> ComplexValue {
        match self {
            Coeff::Exact(c) => {
                let z = c.to_complex();
                ComplexValue::new(z, 4.0 * f64::EPSILON * z.norm())
            }
            Coeff::Approx(v) => *v,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.to_value().z()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Exact(c) => c.is_zero(),
            Coeff::Approx(v) => v.re == 0.0 && v.im == 0.0 && v.err == 0.0,
        }
    }

    pub fn exact(&self) -> Option<&Cyclo> {
        match self {
            Coeff::Exact(c) => Some(c),
            Coeff::Approx(_) => None,
        }
    }

    fn add(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a.clone() + b.clone()),
            _ => Coeff::Approx(self.to_value() + o.to_value()),
        }
    }

    fn mul(&self, o: &Coeff) -> Coeff {
        match (self, o) {
            (Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a.clone() * b.clone()),
            _ => Coeff::Approx(self.to_value() * o.to_value()),
        }
    }

    fn neg(&self) -> Coeff {
        match self {
            Coeff::Exact(a) => Coeff::Exact(-a.clone()),
            Coeff::Approx(v) => Coeff::Approx(-*v),
        }
    }
}

/// Header written before a coefficient dump.
#[derive(Debug, Clone, Serialize)]
pub struct DumpHeader {
    pub level: u64,
    pub weight: i64,
    pub family: String,
    pub a: i64,
    pub b: i64,
    pub truncation: String,
}

/// A truncated series `sum_e c_e q^(e/D)` with all stored `e < trunc`.
#[derive(Debug, Clone)]
pub struct FourierQSeries {
    denom: u64,
    trunc: u64,
    level: u64,
    weight: i64,
    growth: f64,
    quasi_modular: bool,
    coeffs: BTreeMap<u64, Coeff>,
    numeric: OnceLock<Vec<(u64, Complex64, f64)>>,
}

impl FourierQSeries {
    /// The zero series with the given metadata. Coefficient growth defaults
    /// to `|c_e| = O((e/D)^weight)`.
    pub fn new(denom: u64, trunc: u64, level: u64, weight: i64) -> Self {
        assert!(denom >= 1);
        FourierQSeries {
            denom,
            trunc,
            level,
            weight,
            growth: weight.max(0) as f64,
            quasi_modular: false,
            coeffs: BTreeMap::new(),
            numeric: OnceLock::new(),
        }
    }

    pub fn constant(c: Coeff, trunc: u64, level: u64, weight: i64) -> Self {
        let mut s = Self::new(1, trunc, level, weight);
        s.set(0, c);
        s
    }

    /// Inserts a coefficient; exponents at or beyond the truncation are ignored.
    pub fn set(&mut self, e: u64, c: Coeff) {
        if e >= self.trunc {
            return;
        }
        self.numeric = OnceLock::new();
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn add_to(&mut self, e: u64, c: Coeff) {
        if e >= self.trunc {
            return;
        }
        let v = match self.coeffs.get(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        self.set(e, v);
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn truncation(&self) -> u64 {
        self.trunc
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn growth(&self) -> f64 {
        self.growth
    }

    pub fn with_growth(mut self, g: f64) -> Self {
        self.growth = g;
        self.numeric = OnceLock::new();
        self
    }

    pub fn with_level(mut self, level: u64) -> Self {
        self.level = level;
        self
    }

    pub fn is_quasi_modular(&self) -> bool {
        self.quasi_modular
    }

    pub fn mark_quasi_modular(&mut self) {
        self.quasi_modular = true;
    }

    pub fn coeff(&self, e: u64) -> Coeff {
        self.coeffs.get(&e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u64, &Coeff)> {
        self.coeffs.iter()
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(0)
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.values().all(|c| matches!(c, Coeff::Exact(_)))
    }

    /// True when every stored coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    /// Smallest stored exponent (in units of `1/D`), if any.
    pub fn min_exponent(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    /// Same series over the finer denominator `d`, a multiple of the current one.
    pub fn rescale(&self, d: u64) -> Self {
        assert!(d % self.denom == 0, "denominator {d} is not a multiple of {}", self.denom);
        let f = d / self.denom;
        let mut out = FourierQSeries { denom: d, trunc: self.trunc * f, numeric: OnceLock::new(), coeffs: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.coeffs {
            out.coeffs.insert(e * f, c.clone());
        }
        out
    }

    fn aligned(f: &Self, g: &Self) -> (Self, Self) {
        let d = f.denom.lcm(&g.denom);
        (f.rescale(d), g.rescale(d))
    }

    /// `f* = f - a_0(f)`.
    pub fn star(&self) -> Self {
        let mut s = self.clone();
        s.set(0, Coeff::zero());
        s
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        s.numeric = OnceLock::new();
        for c in s.coeffs.values_mut() {
            *c = c.neg();
        }
        s
    }

    pub fn scale(&self, k: &Coeff) -> Self {
        let mut s = self.clone();
        s.numeric = OnceLock::new();
        s.coeffs = self.coeffs.iter().map(|(e, c)| (*e, c.mul(k))).filter(|(_, c)| !c.is_zero()).collect();
        s
    }

    pub fn scale_exact(&self, k: &Cyclo) -> Self {
        self.scale(&Coeff::Exact(k.clone()))
    }

    /// Compresses the exponent denominator when every exponent allows it.
    pub fn normalize(&self) -> Self {
        let mut g = self.denom;
        for e in self.coeffs.keys() {
            g = g.gcd(e);
        }
        g = g.gcd(&self.trunc);
        if g <= 1 {
            return self.clone();
        }
        let mut out = FourierQSeries { denom: self.denom / g, trunc: self.trunc / g, numeric: OnceLock::new(), coeffs: BTreeMap::new(), ..self.clone() };
        for (e, c) in &self.coeffs {
            out.coeffs.insert(e / g, c.clone());
        }
        out
    }

    /// Coefficientwise numeric values, their error bounds and the exponents.
    fn numeric(&self) -> &[(u64, Complex64, f64)] {
        self.numeric.get_or_init(|| {
            self.coeffs
                .iter()
                .map(|(e, c)| {
                    let v = c.to_value();
                    (*e, v.z(), v.err)
                })
                .collect()
        })
    }

    /// Empirical constant `C` with `|c_e| <= C (e/D)^growth` on stored terms.
    fn growth_constant(&self) -> f64 {
        let d = self.denom as f64;
        let mut c: f64 = 0.0;
        for &(e, z, _) in self.numeric() {
            if e == 0 {
                continue;
            }
            let x = e as f64 / d;
            c = c.max(z.norm() / x.max(1.0).powf(self.growth));
        }
        2.0 * c.max(1e-300)
    }

    /// Tail bound `C sum_{e >= T} (e/D)^g r^e` for `r = |q|^(1/D)`.
    pub fn tail_bound(&self, im_tau: f64) -> Result<f64> {
        if self.coeffs.keys().all(|&e| e == 0) && self.coeffs.len() <= 1 {
            // a constant series has no tail
            return Ok(0.0);
        }
        let d = self.denom as f64;
        let t = self.trunc as f64;
        let log_r = -2.0 * PI * im_tau / d;
        let rho = (1.0 + 1.0 / t).powf(self.growth) * log_r.exp();
        if !(rho < 1.0) || self.trunc == 0 {
            return Err(Error::DivergentTail { truncation: self.trunc, im_tau });
        }
        let first = (self.growth * (t / d).max(1.0).ln() + log_r * t).exp();
        Ok(self.growth_constant() * first / (1.0 - rho))
    }

    /// Evaluates at `tau` in the upper half-plane, with the tail bound folded
    /// into the error.
    pub fn eval(&self, tau: Complex64) -> Result<ComplexValue> {
        if !(tau.im > 0.0) {
            return Err(Error::InvalidSpec(format!("Im(tau) = {} must be positive", tau.im)));
        }
        let tail = self.tail_bound(tau.im)?;
        let step = Complex64::new(0.0, 2.0 * PI / self.denom as f64) * tau;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut abs_sum = 0.0;
        for &(e, c, ce) in self.numeric() {
            let qe = (step * e as f64).exp();
            let t = c * qe;
            acc += t;
            abs_sum += t.norm();
            err += ce * qe.norm();
        }
        Ok(ComplexValue::new(acc, tail + err + 4.0 * f64::EPSILON * abs_sum))
    }

    /// Fast evaluation without bookkeeping, for use inside quadrature.
    pub fn eval_fast(&self, tau: Complex64) -> Complex64 {
        let step = Complex64::new(0.0, 2.0 * PI / self.denom as f64) * tau;
        self.numeric().iter().map(|&(e, c, _)| c * (step * e as f64).exp()).sum()
    }

    /// Dump format: a JSON header line, then `e_num/e_den value` lines for every
    /// exponent below the truncation. Rational coefficients print as `p/q`;
    /// other coefficients print as `re im`, plus the exact form when known.
    pub fn dump(&self, family: &str, a: i64, b: i64) -> String {
        let header = DumpHeader {
            level: self.level,
            weight: self.weight,
            family: family.to_string(),
            a,
            b,
            truncation: format!("{}", Rational::new(self.trunc as i128, self.denom as i128)),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for e in 0..self.trunc {
            let ex = Rational::new(e as i128, self.denom as i128);
            let c = self.coeff(e);
            let _ = write!(out, "{}/{} ", ex.numer(), ex.denom());
            match &c {
                Coeff::Exact(x) => match x.as_rational() {
                    Some(r) => {
                        let _ = writeln!(out, "{}/{}", r.numer(), r.denom());
                    }
                    None => {
                        let z = x.to_complex();
                        let _ = writeln!(out, "{:.17e} {:.17e} exact={}", z.re, z.im, x.to_string().replace(' ', ""));
                    }
                },
                Coeff::Approx(v) => {
                    let _ = writeln!(out, "{:.17e} {:.17e}", v.re, v.im);
                }
            }
        }
        out
    }
}

/// Smallest truncation `T` (a multiple of `D`, at least `min`) with
/// `(T/D)^g e^(-2 pi im_tau T/D) < eps`.
pub fn truncation_for(im_tau: f64, denom: u64, growth: f64, eps: f64, min: u64) -> u64 {
    let d = denom as f64;
    let mut t = min.max(denom);
    while t < 200_000 {
        let x = t as f64 / d;
        if growth * x.max(1.0).ln() - 2.0 * PI * im_tau * x < eps.ln() {
            break;
        }
        t += denom.max(8);
    }
    t
}

impl FourierQSeries {
    /// The series of `f(tau/n)`: same coefficients, denominator multiplied by `n`.
    pub fn at_tau_over(&self, n: u64) -> Self {
        FourierQSeries { denom: self.denom * n, numeric: OnceLock::new(), ..self.clone() }
    }
}

/// Coefficientwise sum; truncation is the smaller of the two.
pub fn qs_add(f: &FourierQSeries, g: &FourierQSeries) -> FourierQSeries {
    let (f, g) = FourierQSeries::aligned(f, g);
    let mut out = FourierQSeries::new(f.denom, f.trunc.min(g.trunc), f.level.max(g.level), f.weight);
    out.growth = f.growth.max(g.growth);
    out.quasi_modular = f.quasi_modular || g.quasi_modular;
    for (e, c) in f.coeffs.iter().chain(g.coeffs.iter()) {
        out.add_to(*e, c.clone());
    }
    out
}

pub fn qs_sub(f: &FourierQSeries, g: &FourierQSeries) -> FourierQSeries {
    qs_add(f, &g.neg())
}

/// Cauchy product, truncated at `min(T_f + e_min(g), T_g + e_min(f))`.
pub fn qs_mul(f: &FourierQSeries, g: &FourierQSeries) -> FourierQSeries {
    let (f, g) = FourierQSeries::aligned(f, g);
    let ef = f.min_exponent().unwrap_or(f.trunc);
    let eg = g.min_exponent().unwrap_or(g.trunc);
    let trunc = (f.trunc + eg).min(g.trunc + ef);
    let mut out = FourierQSeries::new(f.denom, trunc, f.level.max(g.level), f.weight + g.weight);
    out.growth = f.growth + g.growth + 1.0;
    out.quasi_modular = f.quasi_modular || g.quasi_modular;
    let mut acc: BTreeMap<u64, Coeff> = BTreeMap::new();
    for (e1, c1) in &f.coeffs {
        for (e2, c2) in &g.coeffs {
            let e = e1 + e2;
            if e >= trunc {
                break;
            }
            let p = c1.mul(c2);
            match acc.get_mut(&e) {
                Some(v) => *v = v.add(&p),
                None => {
                    acc.insert(e, p);
                }
            }
        }
    }
    for (e, c) in acc {
        out.set(e, c);
    }
    out
}

/// `f - a_0(f)`.
pub fn qs_star(f: &FourierQSeries) -> FourierQSeries {
    f.star()
}

pub fn qs_eval(f: &FourierQSeries, tau: Complex64) -> Result<ComplexValue> {
    f.eval(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::rat;

    fn poly(cs: &[i128], trunc: u64) -> FourierQSeries {
        let mut s = FourierQSeries::new(1, trunc, 1, 0);
        for (e, c) in cs.iter().enumerate() {
            s.set(e as u64, Coeff::rational(Rational::from_integer(*c)));
        }
        s
    }

    fn geometric(trunc: u64) -> FourierQSeries {
        let mut s = FourierQSeries::new(1, trunc, 1, 0);
        for e in 1..trunc {
            s.set(e, Coeff::rational(rat(1, 1)));
        }
        s
    }

    #[test]
    fn ring_examples() {
        let a = poly(&[1, 1], 10);
        let b = poly(&[1, -1], 10);
        let s = qs_add(&a, &b);
        assert_eq!(s.coeff(0), Coeff::rational(rat(2, 1)));
        assert!(s.coeff(1).is_zero());
        let p = qs_mul(&a, &b);
        assert_eq!(p.coeff(2), Coeff::rational(rat(-1, 1)));
        assert!(p.coeff(1).is_zero());
        let one = poly(&[1], 10);
        let q = qs_mul(&a, &one);
        assert_eq!(q.coeff(1), a.coeff(1));
        let g = geometric(20);
        let gg = qs_mul(&g, &g);
        assert_eq!(gg.coeff(4), Coeff::rational(rat(3, 1)));
        assert_eq!(gg.truncation(), 21);
    }

    #[test]
    fn star_examples() {
        let s = poly(&[5, 1], 10);
        let t = s.star();
        assert!(t.constant_term().is_zero());
        assert_eq!(t.coeff(1), Coeff::rational(rat(1, 1)));
        assert!(qs_star(&poly(&[7], 4)).is_zero());
    }

    #[test]
    fn geometric_value() {
        let g = geometric(200);
        let v = g.eval(Complex64::new(0.0, 1.0)).unwrap();
        let q = (-2.0 * PI).exp();
        assert!((v.re - q / (1.0 - q)).abs() < 1e-15);
        assert!(v.err < 1e-12);
        let c = poly(&[3], 5);
        let w = c.eval(Complex64::new(0.1, 0.01)).unwrap();
        assert_eq!(w.re, 3.0);
    }

    #[test]
    fn divergent_tail_detected() {
        let g = geometric(10).with_growth(3.0);
        assert!(matches!(g.eval(Complex64::new(0.0, 1e-4)), Err(Error::DivergentTail { .. })));
    }

    #[test]
    fn mixed_denominators() {
        let mut f = FourierQSeries::new(2, 10, 1, 0);
        f.set(1, Coeff::rational(rat(1, 1))); // q^(1/2)
        let g = poly(&[0, 1], 5); // q
        let s = qs_add(&f, &g);
        assert_eq!(s.denom(), 2);
        assert_eq!(s.coeff(2), Coeff::rational(rat(1, 1)));
        let p = qs_mul(&f, &g);
        assert_eq!(p.coeff(3), Coeff::rational(rat(1, 1)));
    }

    #[test]
    fn dump_format() {
        let s = poly(&[1, 2], 3);
        let d = s.dump("G", 0, 1);
        let lines: Vec<&str> = d.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with('{'));
        assert_eq!(lines[1], "0/1 1/1");
        assert_eq!(lines[3], "2/1 0/1");
    }
}
