//! Hurwitz and periodic zeta functions, regularized values at `s = 1`, and
//! the classical identities linking them.
//!
//! Continuation uses Euler-Maclaurin summation with an explicit remainder
//! bound. Values at non-positive integers come from Bernoulli polynomials.

use crate::bernoulli::{bernoulli_poly, em_coefficients, EM_TERMS};
use crate::error::{Error, Result};
use crate::frac::{rat, rat_to_f64, FractionModOne, Rational};
use crate::gamma::{gamma, GAMMA_REL_ERR};
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;

/// Accuracy target for the zeta evaluators.
#[derive(Debug, Clone, Copy)]
pub struct ZetaConfig {
    /// Error bound (relative to `max(1, |value|)`) above which a
    /// [`Error::PrecisionLoss`] is reported.
    pub tol: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig { tol: 1e-12 }
    }
}

fn check(v: ComplexValue, cfg: &ZetaConfig) -> Result<ComplexValue> {
    if v.err <= cfg.tol * v.abs().max(1.0) && v.err.is_finite() {
        Ok(v)
    } else {
        Err(Error::PrecisionLoss { requested: cfg.tol, achieved: v.err })
    }
}

/// `Some(n)` when `s = 1 - n` for an integer `n >= 1`.
fn nonpositive_integer(s: Complex64) -> Option<u32> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re > -1000.0 {
        Some((1.0 - s.re) as u32)
    } else {
        None
    }
}

fn expm1_over(w: Complex64) -> Complex64 {
    // (e^w - 1)/w
    if w.norm() < 1e-2 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..10 {
            term = term * w / k as f64;
            acc += term;
        }
        acc
    } else {
        (w.exp() - 1.0) / w
    }
}

/// Euler-Maclaurin evaluation of `sum_{n>=0} (n+a)^(-s)`, `a > 0`.
/// With `regularized`, the polar part `1/(s-1)` is removed, which keeps
/// the value finite at `s = 1`.
fn euler_maclaurin(a: f64, s: Complex64, regularized: bool) -> ComplexValue {
    assert!(a > 0.0, "shift must be positive");
    let coeffs = em_coefficients();
    let x_min = (s.norm() + 2.0 * 20.0) / 2.0 + 2.0;
    let m = if a >= x_min { 0 } else { (x_min - a).ceil() as u64 };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for n in 0..m {
        let t = (-s * (n as f64 + a).ln()).exp();
        sum += t;
        abs_sum += t.norm();
    }
    let x = m as f64 + a;
    let lx = x.ln();
    let xs = (-s * lx).exp(); // X^{-s}
    let pole = if regularized {
        -lx * expm1_over((1.0 - s) * lx)
    } else {
        xs * x / (s - 1.0)
    };
    sum += pole + 0.5 * xs;
    abs_sum += pole.norm() + 0.5 * xs.norm();
    // corrections B_{2j}/(2j)! (s)_{2j-1} X^{-s-2j+1}
    let mut poch = s; // (s)_{1}
    let mut xp = xs / x; // X^{-s-1}
    let mut bound = f64::INFINITY;
    let mut last = f64::INFINITY;
    for j in 1..EM_TERMS {
        let t = coeffs[j] * poch * xp;
        sum += t;
        abs_sum += t.norm();
        // next term magnitude, used as the remainder bound
        let poch_next = poch * (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        let xp_next = xp / (x * x);
        let next = (coeffs[j + 1] * poch_next * xp_next).norm();
        let sigma = s.re + (2 * j + 1) as f64;
        let fac = if sigma > 0.0 { ((s + (2 * j + 1) as f64).norm() / sigma).max(1.0) } else { f64::INFINITY };
        let r = next * fac;
        if r.is_finite() {
            bound = bound.min(r);
        }
        if r < 1e-18 * sum.norm().max(1e-300) || (t.norm() > last && j > 3) {
            break;
        }
        last = t.norm();
        poch = poch_next;
        xp = xp_next;
    }
    let err = bound + 8.0 * EPS * abs_sum + 8.0 * EPS * (m as f64) * sum.norm();
    ComplexValue::new(sum, err)
}

/// `sum_{n>=0} (n+a)^(-s)` for a real shift `a > 0` (any `s != 1`).
pub fn hurwitz_shifted(a: f64, s: Complex64) -> Result<ComplexValue> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    Ok(euler_maclaurin(a, s, false))
}

/// Exact `zeta(x, 1-n)` for `n >= 1`.
pub fn hurwitz_nonpositive(x: FractionModOne, n: u32) -> Rational {
    assert!(n >= 1);
    let arg = if x.is_zero() { rat(1, 1) } else { x.to_rational() };
    -bernoulli_poly(n, &arg) / n as i128
}

fn shift_of(x: FractionModOne) -> f64 {
    if x.is_zero() {
        1.0
    } else {
        x.to_f64()
    }
}

/// Hurwitz zeta `zeta(x, s)` with the default tolerance.
pub fn hurwitz_zeta(x: FractionModOne, s: Complex64) -> Result<ComplexValue> {
    hurwitz_zeta_with(x, s, &ZetaConfig::default())
}

pub fn hurwitz_zeta_with(x: FractionModOne, s: Complex64, cfg: &ZetaConfig) -> Result<ComplexValue> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAtOne);
    }
    if let Some(n) = nonpositive_integer(s) {
        if n <= 40 {
            return Ok(ComplexValue::real(rat_to_f64(&hurwitz_nonpositive(x, n))));
        }
    }
    check(euler_maclaurin(shift_of(x), s, false), cfg)
}

/// `zeta(x, s) - 1/(s-1)`, holomorphic at `s = 1`.
pub fn hurwitz_regularized(x: FractionModOne, s: Complex64) -> ComplexValue {
    euler_maclaurin(shift_of(x), s, true)
}

/// The regularized value `zeta*(x, 1)`.
pub fn zeta_star_at_one(x: FractionModOne) -> ComplexValue {
    hurwitz_regularized(x, Complex64::new(1.0, 0.0))
}

/// `zeta*(x,1)` from the limit definition: symmetric differences at
/// `s = 1 +- h` followed by Richardson extrapolation in `h^2`.
pub fn zeta_star_richardson(x: FractionModOne) -> Result<ComplexValue> {
    let levels = 5;
    let mut table: Vec<Complex64> = Vec::with_capacity(levels);
    let mut h = 1e-2;
    for _ in 0..levels {
        let up = hurwitz_zeta(x, Complex64::new(1.0 + h, 0.0))?.z() - 1.0 / h;
        let down = hurwitz_zeta(x, Complex64::new(1.0 - h, 0.0))?.z() + 1.0 / h;
        table.push((up + down) * 0.5);
        h *= 0.5;
    }
    let mut f = 4.0;
    for level in 1..levels {
        for i in (level..levels).rev() {
            table[i] = (f * table[i] - table[i - 1]) / (f - 1.0);
        }
        f *= 4.0;
    }
    let est = table[levels - 1];
    let err = (table[levels - 1] - table[levels - 2]).norm() + 1e-13 / 0.00625;
    Ok(ComplexValue::new(est, err))
}

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

/// Periodic zeta `sum_{n>=1} e^{2 i pi n x} n^{-s}` with the default tolerance.
pub fn periodic_zeta(x: FractionModOne, s: Complex64) -> Result<ComplexValue> {
    periodic_zeta_with(x, s, &ZetaConfig::default())
}

pub fn periodic_zeta_with(x: FractionModOne, s: Complex64, cfg: &ZetaConfig) -> Result<ComplexValue> {
    if x.is_zero() {
        return hurwitz_zeta_with(x, s, cfg);
    }
    let p = x.numerator();
    let q = x.denominator();
    if let Some(n) = nonpositive_integer(s) {
        if n <= 40 {
            // q^{n-1} sum_r e(rp/q) zeta(r/q, 1-n)
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 1..=q {
                let v = rat_to_f64(&hurwitz_nonpositive(FractionModOne::new(r, q)?, n));
                acc += unit((r * p) as f64 / q as f64) * v;
            }
            let val = acc * (q as f64).powi(n as i32 - 1);
            return Ok(ComplexValue::new(val, 4.0 * EPS * q as f64 * val.norm().max(1.0)));
        }
    }
    // q^{-s} sum_r e(rp/q) [zeta(r/q, s) - 1/(s-1)]; the polar parts cancel.
    let mut acc = ComplexValue::zero();
    for r in 1..=q {
        let g = hurwitz_regularized(FractionModOne::new(r, q)?, s);
        acc = acc + g.scale(unit((r * p) as f64 / q as f64));
    }
    let qs = (-s * (q as f64).ln()).exp();
    check(acc.scale(qs), cfg)
}

/// Residual of `zeta(x,1-s) = Gamma(s)/(2pi)^s (e^{-i pi s/2} zh(x,s) + e^{i pi s/2} zh(-x,s))`.
pub fn verify_hurwitz_formula(x: FractionModOne, s: Complex64) -> Result<f64> {
    let lhs = hurwitz_zeta(x, 1.0 - s)?;
    let g = gamma(s);
    if !g.is_finite() || s.norm() == 0.0 {
        return Err(Error::InvalidSpec(format!("s = {s} hits a Gamma pole")));
    }
    let pref = g * (-s * (2.0 * PI).ln()).exp();
    let i = Complex64::i();
    let e_minus = (-i * PI * s / 2.0).exp();
    let e_plus = (i * PI * s / 2.0).exp();
    let a = periodic_zeta(x, s)?;
    let b = periodic_zeta(x.neg(), s)?;
    let rhs = pref * (e_minus * a.z() + e_plus * b.z());
    let _ = GAMMA_REL_ERR;
    Ok((lhs.z() - rhs).norm())
}

/// Residuals of the two discrete Fourier relations between `zeta` and `zh`
/// at level `n`, twist `u` and exponent `s`.
pub fn finite_fourier_relation_check(n: u64, u: i64, s: Complex64) -> Result<(f64, f64)> {
    let nf = n as f64;
    let mut sum1 = Complex64::new(0.0, 0.0);
    let mut sum2 = Complex64::new(0.0, 0.0);
    for x in 0..n as i64 {
        let w = unit((x * u) as f64 / nf);
        let fx = FractionModOne::from_residue(x, n);
        sum1 += w * hurwitz_zeta(fx, s)?.z();
        sum2 += w * periodic_zeta(fx, s)?.z();
    }
    let ns = (s * nf.ln()).exp();
    let rhs1 = ns * periodic_zeta(FractionModOne::from_residue(u, n), s)?.z();
    let rhs2 = nf / ns * hurwitz_zeta(FractionModOne::from_residue(-u, n), s)?.z();
    Ok(((sum1 - rhs1).norm(), (sum2 - rhs2).norm()))
}
