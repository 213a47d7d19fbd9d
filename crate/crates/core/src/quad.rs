//! Trapezoidal quadrature for analytic integrands that decay at both ends of
//! the real line, and the half-line and Mellin maps built on it.

use crate::error::{Error, Result};
use crate::value::ComplexValue;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    /// Target error, relative to `max(1, |integral|)`.
    pub tol: f64,
    /// Initial step of both the range scan and the trapezoid rule.
    pub step: f64,
    /// The scan stops at `|t| = max_extent` whatever the integrand does.
    pub max_extent: f64,
    pub max_halvings: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { tol: 1e-12, step: 0.25, max_extent: 200.0, max_halvings: 9 }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig { tol, ..Default::default() }
    }
}

fn finite(z: Complex64) -> Complex64 {
    if z.is_finite() {
        z
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// Walks outward from `start` until the integrand stays below `cut` for a few
/// consecutive steps. Returns the last position visited and the peak size.
fn scan<F: Fn(f64) -> Complex64>(g: &F, start: f64, dir: f64, cfg: &QuadConfig, peak: &mut f64) -> f64 {
    let mut t = start;
    let mut quiet = 0;
    loop {
        let v = finite(g(t)).norm();
        *peak = peak.max(v);
        let cut = 1e-3 * cfg.tol * peak.max(1e-300);
        if v <= cut {
            quiet += 1;
            if quiet >= 4 {
                return t;
            }
        } else {
            quiet = 0;
        }
        if (t - start).abs() >= cfg.max_extent {
            return t;
        }
        t += dir * cfg.step;
    }
}

/// `int_R g(t) dt` for a smooth `g` that decays at both ends. The error is
/// the last halving difference plus the size of the dropped ends.
pub fn integrate_line<F: Fn(f64) -> Complex64>(g: F, center: f64, cfg: &QuadConfig) -> Result<ComplexValue> {
    let mut peak = 0.0;
    let hi = scan(&g, center, 1.0, cfg, &mut peak);
    let lo = scan(&g, center, -1.0, cfg, &mut peak);
    if peak == 0.0 {
        return Ok(ComplexValue::zero());
    }
    let edge = finite(g(lo)).norm() + finite(g(hi)).norm();
    let mut h = cfg.step;
    let n0 = ((hi - lo) / h).round() as usize;
    let mut sum: Complex64 = (0..=n0).map(|i| finite(g(lo + i as f64 * h))).sum();
    let mut prev = sum * h;
    let mut n = n0;
    for _ in 0..cfg.max_halvings {
        let mid: Complex64 = (0..n).map(|i| finite(g(lo + (i as f64 + 0.5) * h))).sum();
        sum += mid;
        n *= 2;
        h *= 0.5;
        let cur = sum * h;
        let diff = (cur - prev).norm();
        prev = cur;
        if diff <= cfg.tol * cur.norm().max(1.0) {
            let err = diff + edge * 4.0 * cfg.step + 1e3 * f64::EPSILON * peak * (hi - lo);
            return Ok(ComplexValue::new(cur, err));
        }
    }
    Err(Error::QuadratureFailure(format!("trapezoid did not settle on [{lo}, {hi}]")))
}

/// `int_a^inf f(y) dy` through `y = a + exp(pi/2 sinh t)`.
pub fn integrate_half_line<F: Fn(f64) -> Complex64>(f: F, a: f64, cfg: &QuadConfig) -> Result<ComplexValue> {
    let c = QuadConfig { max_extent: cfg.max_extent.min(6.0), ..*cfg };
    integrate_line(
        |t| {
            let e = (0.5 * PI * t.sinh()).exp();
            let y = a + e;
            if !y.is_finite() || e == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            f(y) * (0.5 * PI * t.cosh() * e)
        },
        0.0,
        &c,
    )
}

/// `int_0^inf f(y) dy` through `y = e^x`, scanning from `x = center`.
pub fn integrate_mellin<F: Fn(f64) -> Complex64>(f: F, center: f64, cfg: &QuadConfig) -> Result<ComplexValue> {
    integrate_line(
        |x| {
            let y = x.exp();
            if y == 0.0 || !y.is_finite() {
                return Complex64::new(0.0, 0.0);
            }
            f(y) * y
        },
        center,
        cfg,
    )
}

/// `(1/2 pi i) oint f(z) dz` over the circle `|z - c| = r`, trapezoid with `n` nodes.
pub fn contour_average<F: Fn(Complex64) -> Complex64>(f: F, c: Complex64, r: f64, n: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let w = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        acc += f(c + r * w) * w;
    }
    acc * r / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian() {
        let v = integrate_line(|t| Complex64::new((-t * t).exp(), 0.0), 0.0, &QuadConfig::default()).unwrap();
        assert!((v.re - PI.sqrt()).abs() < 1e-13);
        assert!(v.err < 1e-10);
    }

    #[test]
    fn half_line_exponential() {
        let cfg = QuadConfig::default();
        let v = integrate_half_line(|y| Complex64::new((-y).exp(), 0.0), 1.0, &cfg).unwrap();
        assert!((v.re - (-1.0f64).exp()).abs() < 1e-13);
        // int_1^inf e^-2y y^2 dy
        let w = integrate_half_line(|y| Complex64::new((-2.0 * y).exp() * y * y, 0.0), 1.0, &cfg).unwrap();
        let exact = (-2.0f64).exp() * (1.0 / 2.0 + 2.0 / 4.0 + 2.0 / 8.0);
        assert!((w.re - exact).abs() < 1e-13);
    }

    #[test]
    fn mellin_gamma() {
        // int_0^inf e^-y y^(s-1) dy = Gamma(s)
        let s = Complex64::new(2.5, 1.0);
        let v = integrate_mellin(|y| (-y + (s - 1.0) * y.ln()).exp(), 0.0, &QuadConfig::default()).unwrap();
        let g = crate::gamma::gamma(s);
        assert!((v.z() - g).norm() < 1e-11);
    }

    #[test]
    fn residue_by_contour() {
        let r = contour_average(|z| z.exp() / z, Complex64::new(0.0, 0.0), 0.5, 32);
        assert!((r - 1.0).norm() < 1e-14);
    }
}
