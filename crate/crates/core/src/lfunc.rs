//! Dirichlet series and completed L-functions of modular forms.
//!
//! `Lambda(f, s) = M^(s/2) int_0^inf f*(iy) y^s dy/y` is computed by cutting
//! the integral at `y0` and moving `[0, y0]` to `[1/(M y0), inf)` with the
//! Atkin-Lehner involution, so both pieces decay exponentially and the two
//! poles appear as explicit closed-form terms.

use crate::cyclotomic::Cyclo;
use crate::eisenstein::{build_series, EisensteinSpec, Family};
use crate::error::{Error, Result};
use crate::frac::FractionModOne;
use crate::gamma::gamma;
use crate::qseries::{qs_add, qs_mul, qs_sub, truncation_for, FourierQSeries};
use crate::quad::{integrate_half_line, integrate_mellin, QuadConfig};
use crate::value::ComplexValue;
use crate::zeta::{periodic_zeta_with, ZetaConfig};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `L(f, s) = sum_n a_n n^-s` from the stored coefficients, with an integral
/// bound `C sum_{n >= T} n^(g - Re s)` for the dropped tail.
pub fn dirichlet_l(f: &FourierQSeries, s: Complex64) -> Result<ComplexValue> {
    let g = f.growth();
    if !(s.re > f.weight() as f64 + 1.0) || !(s.re > g + 1.0) {
        return Err(Error::OutsideConvergence(format!("{s}")));
    }
    let d = f.denom();
    let mut acc = cz(0.0, 0.0);
    let mut c: f64 = 0.0;
    let mut err = 0.0;
    for (&e, coeff) in f.iter() {
        if e == 0 {
            continue;
        }
        if e % d != 0 {
            return Err(Error::InvalidSpec("Dirichlet series needs integral exponents".into()));
        }
        let n = (e / d) as f64;
        let v = coeff.to_value();
        acc += v.z() * (-s * n.ln()).exp();
        err += v.err * n.powf(-s.re);
        c = c.max(v.abs() / n.powf(g));
    }
    let t = (f.truncation() / d) as f64;
    let p = s.re - g;
    // sum_{n >= T} n^-p <= T^-p + T^(1-p)/(p-1)
    let tail = 2.0 * c * (t.powf(-p) + t.powf(1.0 - p) / (p - 1.0));
    Ok(ComplexValue::new(acc, tail + err + 8.0 * f64::EPSILON * acc.norm()))
}

/// A form together with a trusted expansion of its Atkin-Lehner image.
#[derive(Debug, Clone)]
pub struct MellinPair {
    pub f: FourierQSeries,
    pub wf: FourierQSeries,
    pub level: u64,
    pub weight: i64,
}

impl MellinPair {
    pub fn new(f: FourierQSeries, wf: FourierQSeries, level: u64, weight: i64) -> Self {
        MellinPair { f, wf, level, weight }
    }

    /// `(W f, W W f) = (W f, f)`.
    pub fn swap(&self) -> Self {
        MellinPair { f: self.wf.clone(), wf: self.f.clone(), level: self.level, weight: self.weight }
    }

    fn check(&self, other: &MellinPair) -> Result<()> {
        if self.level != other.level {
            return Err(Error::InvalidSpec(format!("levels {} and {} differ", self.level, other.level)));
        }
        Ok(())
    }

    pub fn add(&self, other: &MellinPair) -> Result<Self> {
        self.check(other)?;
        if self.weight != other.weight {
            return Err(Error::InvalidSpec("sum of forms of different weights".into()));
        }
        Ok(MellinPair { f: qs_add(&self.f, &other.f), wf: qs_add(&self.wf, &other.wf), ..self.clone() })
    }

    pub fn sub(&self, other: &MellinPair) -> Result<Self> {
        self.check(other)?;
        if self.weight != other.weight {
            return Err(Error::InvalidSpec("difference of forms of different weights".into()));
        }
        Ok(MellinPair { f: qs_sub(&self.f, &other.f), wf: qs_sub(&self.wf, &other.wf), ..self.clone() })
    }

    /// `W(fg) = W(f) W(g)`.
    pub fn mul(&self, other: &MellinPair) -> Result<Self> {
        self.check(other)?;
        Ok(MellinPair {
            f: qs_mul(&self.f, &other.f),
            wf: qs_mul(&self.wf, &other.wf),
            level: self.level,
            weight: self.weight + other.weight,
        })
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        MellinPair { f: self.f.scale_exact(c), wf: self.wf.scale_exact(c), ..self.clone() }
    }

    pub fn a0(&self) -> Complex64 {
        self.f.constant_term().to_complex()
    }

    pub fn b0(&self) -> Complex64 {
        self.wf.constant_term().to_complex()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.wf.is_zero()
    }

    /// `f(iy)`, through `f(iy) = M^(-k/2) y^-k (W f)(i/(M y))` when `y` is small.
    pub fn eval_axis(&self, y: f64) -> Complex64 {
        let m = self.level as f64;
        if y * m.sqrt() >= 1.0 {
            self.f.eval_fast(cz(0.0, y))
        } else {
            m.powf(-(self.weight as f64) / 2.0) * y.powi(-(self.weight as i32)) * self.wf.eval_fast(cz(0.0, 1.0 / (m * y)))
        }
    }
}

/// Truncation making every series of weight `k` at `level` accurate on
/// `Im tau >= 1/sqrt(level)` (the only region the pair evaluators touch).
pub fn pair_truncation(level: u64, k: u32) -> u64 {
    truncation_for(1.0 / (level as f64).sqrt(), 1, k as f64 + 2.0, 1e-22, 32)
}

/// `(G, W G)` or `(H, W H)` at level `N^2`, from `W G^(k)_{a,b} = (i^k/N) H^(k)_{a,b}`.
pub fn catalog_pair(spec: &EisensteinSpec, trunc: u64) -> Result<MellinPair> {
    let (gf, hf) = match spec.family {
        Family::G => (Family::G, Family::H),
        Family::H => (Family::H, Family::G),
        _ => return Err(Error::InvalidSpec("Atkin-Lehner partners are tabulated for G and H only".into())),
    };
    let n = spec.n;
    let f = build_series(spec, trunc)?;
    let other = build_series(&EisensteinSpec::new(hf, spec.k, spec.a, spec.b, n)?, trunc)?;
    let k = spec.k as i64;
    let c = match gf {
        Family::G => Cyclo::i_pow(k).scale(&crate::frac::rat(1, n as i128)),
        _ => Cyclo::i_pow(-k).scale(&crate::frac::rat(n as i128, 1)),
    };
    Ok(MellinPair::new(f, other.scale_exact(&c), n * n, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaConfig {
    pub tol: f64,
    /// The split point is `split / sqrt(M)`.
    pub split: f64,
}

impl Default for LambdaConfig {
    fn default() -> Self {
        LambdaConfig { tol: 1e-13, split: 1.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LambdaValue {
    pub value: ComplexValue,
    pub s: Complex64,
    pub regularized: bool,
    /// `(location, coefficient)` of every pole term that was subtracted.
    pub pole_subtractions: Vec<(Complex64, Complex64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StarPoint {
    Zero,
    K,
}

/// `int_{y0}^inf g*(iy) y^(s-1) dy`.
fn upper_piece(g: &FourierQSeries, s: Complex64, y0: f64, tol: f64) -> Result<ComplexValue> {
    let star = g.star();
    if star.is_zero() {
        return Ok(ComplexValue::zero());
    }
    let cfg = QuadConfig::with_tol(tol);
    let v = integrate_half_line(|y| star.eval_fast(cz(0.0, y)) * ((s - 1.0) * y.ln()).exp(), y0, &cfg)?;
    let trunc = star.tail_bound(y0)? * y0.powf(s.re - 1.0).max(1.0) * (1.0 + star.denom() as f64 / (2.0 * PI * y0));
    Ok(ComplexValue::new(v.z(), v.err + trunc))
}

fn lambda_core(p: &MellinPair, s: Complex64, mode: Option<StarPoint>, cfg: &LambdaConfig) -> Result<LambdaValue> {
    let m = p.level as f64;
    let k = p.weight as f64;
    let rm = m.sqrt();
    let y0 = cfg.split / rm;
    let t0 = 1.0 / (m * y0);
    let (a0, b0) = (p.a0(), p.b0());
    let ks = k - s;
    let upper = upper_piece(&p.f, s, y0, cfg.tol)?;
    let lower = upper_piece(&p.wf, ks, t0, cfg.tol)?;
    let fs = ((s / 2.0) * m.ln()).exp();
    let fk = ((ks / 2.0) * m.ln()).exp();
    let mut v = fs * upper.z() + fk * lower.z();
    let err = fs.norm() * upper.err + fk.norm() * lower.err;
    let mut subs = Vec::new();
    let small = 1e-13;
    let near0 = s.norm() < small;
    let near_k = ks.norm() < small;
    match mode {
        Some(StarPoint::Zero) if !near0 => return Err(Error::InvalidSpec("regularized value requested away from s = 0".into())),
        Some(StarPoint::K) if !near_k => return Err(Error::InvalidSpec("regularized value requested away from s = k".into())),
        _ => {}
    }
    if a0 != cz(0.0, 0.0) {
        if near0 {
            if mode != Some(StarPoint::Zero) {
                return Err(Error::PoleAt0);
            }
            v -= a0 * (rm * y0).ln();
        } else {
            v -= a0 * fs * (s * y0.ln()).exp() / s;
        }
        subs.push((cz(0.0, 0.0), -a0));
    }
    if b0 != cz(0.0, 0.0) {
        if near_k {
            if mode != Some(StarPoint::K) {
                return Err(Error::PoleAtK(p.weight));
            }
            v -= b0 * (rm * t0).ln();
        } else {
            v -= b0 * fk * (ks * t0.ln()).exp() / ks;
        }
        subs.push((cz(k, 0.0), b0));
    }
    Ok(LambdaValue {
        value: ComplexValue::new(v, err + 64.0 * f64::EPSILON * v.norm().max(1.0)),
        s,
        regularized: mode.is_some() && (near0 && a0 != cz(0.0, 0.0) || near_k && b0 != cz(0.0, 0.0)),
        pole_subtractions: subs,
    })
}

/// `Lambda(f, s)` for a form `f` of weight `k` and level `M`, with `W_M f` given.
pub fn completed_lambda(p: &MellinPair, s: Complex64) -> Result<LambdaValue> {
    completed_lambda_with(p, s, &LambdaConfig::default())
}

pub fn completed_lambda_with(p: &MellinPair, s: Complex64, cfg: &LambdaConfig) -> Result<LambdaValue> {
    lambda_core(p, s, None, cfg)
}

/// `Lambda*(f, 0)` or `Lambda*(f, k)`: the pole-subtracted split integral
/// evaluated at the pole itself.
pub fn lambda_star(p: &MellinPair, at: StarPoint) -> Result<LambdaValue> {
    lambda_star_with(p, at, &LambdaConfig::default())
}

pub fn lambda_star_with(p: &MellinPair, at: StarPoint, cfg: &LambdaConfig) -> Result<LambdaValue> {
    let s = match at {
        StarPoint::Zero => cz(0.0, 0.0),
        StarPoint::K => cz(p.weight as f64, 0.0),
    };
    lambda_core(p, s, Some(at), cfg)
}

/// The same regularized limit from the mean of `Lambda(f, s) + a0/s` (or
/// `+ b0/(k-s)`) over a circle around the pole.
pub fn lambda_star_by_contour(p: &MellinPair, at: StarPoint, radius: f64, nodes: usize) -> Result<ComplexValue> {
    let k = p.weight as f64;
    let c = match at {
        StarPoint::Zero => cz(0.0, 0.0),
        StarPoint::K => cz(k, 0.0),
    };
    let mut acc = cz(0.0, 0.0);
    let mut err: f64 = 0.0;
    for j in 0..nodes {
        let s = c + Complex64::from_polar(radius, 2.0 * PI * (j as f64 + 0.5) / nodes as f64);
        let v = completed_lambda(p, s)?;
        let reg = match at {
            StarPoint::Zero => p.a0() / s,
            StarPoint::K => p.b0() / (k - s),
        };
        acc += v.value.z() + reg;
        err = err.max(v.value.err);
    }
    Ok(ComplexValue::new(acc / nodes as f64, err))
}

/// Residue of `Lambda(f, s)` at `at`, by the trapezoid rule on a circle.
pub fn lambda_residue(p: &MellinPair, at: Complex64, radius: f64, nodes: usize) -> Result<Complex64> {
    let mut acc = cz(0.0, 0.0);
    for j in 0..nodes {
        let w = Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / nodes as f64);
        acc += completed_lambda(p, at + radius * w)?.value.z() * w;
    }
    Ok(acc * radius / nodes as f64)
}

/// `|Lambda(f, s) - Lambda(W f, k - s)|`, with the two sides split at
/// different points so the identity is not built into the evaluation.
pub fn functional_equation_residual(p: &MellinPair, s: Complex64) -> Result<f64> {
    let lhs = completed_lambda_with(p, s, &LambdaConfig { split: 0.8, ..Default::default() })?;
    let rhs = completed_lambda_with(&p.swap(), p.weight as f64 - s, &LambdaConfig { split: 1.3, ..Default::default() })?;
    Ok(lhs.value.dist(&rhs.value))
}

/// `N^s (2 pi)^-s Gamma(s) (zhat(-a/N, s) zhat(-b/N, s-k+1) + (-1)^k zhat(a/N, s) zhat(b/N, s-k+1))`.
pub fn lambda_h_closed_form(k: u32, a: i64, b: i64, n: u64, s: Complex64) -> Result<ComplexValue> {
    if k == 2 && a.rem_euclid(n as i64) == 0 {
        return Err(Error::InvalidSpec("k = 2 needs a != 0".into()));
    }
    let xa = FractionModOne::from_residue(a, n);
    let xb = FractionModOne::from_residue(b, n);
    let s2 = s - k as f64 + 1.0;
    let cfg = ZetaConfig { tol: 1e-9 };
    let p1 = periodic_zeta_with(xa.neg(), s, &cfg)?;
    let p2 = periodic_zeta_with(xb.neg(), s2, &cfg)?;
    let p3 = periodic_zeta_with(xa, s, &cfg)?;
    let p4 = periodic_zeta_with(xb, s2, &cfg)?;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let inner = p1.z() * p2.z() + sign * p3.z() * p4.z();
    let inner_err = p1.err * p2.abs() + p2.err * p1.abs() + p3.err * p4.abs() + p4.err * p3.abs();
    let pref = ((n as f64 / (2.0 * PI)).ln() * s).exp() * gamma(s);
    let v = pref * inner;
    Ok(ComplexValue::new(v, pref.norm() * inner_err + 16.0 * f64::EPSILON * v.norm()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankinReport {
    pub s: Complex64,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub residual: f64,
    pub lhs_at_k: ComplexValue,
    pub rhs_at_k: ComplexValue,
    pub residual_at_k: f64,
}

/// `M^(s/2) int_0^inf f*(iy) g*(i/(M y)) y^s dy/y`.
fn rankin_lhs(f: &MellinPair, g: &MellinPair, s: Complex64, tol: f64) -> Result<ComplexValue> {
    let m = f.level as f64;
    let (a0, b0) = (f.a0(), g.a0());
    let v = integrate_mellin(
        |y| {
            let ys = ((s - 1.0) * y.ln()).exp();
            // evaluate the factor that decays at this end first
            let (first, second) = if y * m.sqrt() < 1.0 {
                (g.eval_axis(1.0 / (m * y)) - b0, f.eval_axis(y) - a0)
            } else {
                (f.eval_axis(y) - a0, g.eval_axis(1.0 / (m * y)) - b0)
            };
            if first == cz(0.0, 0.0) {
                return first;
            }
            first * second * ys
        },
        -0.5 * m.ln(),
        &QuadConfig::with_tol(tol),
    )?;
    let pref = ((s / 2.0) * m.ln()).exp();
    Ok(v.scale(pref))
}

/// Both forms of the Rankin-type identity with `h = W_M g`:
/// `LHS(s) = Lambda(fh, s+l) - a0 Lambda(h, s+l) - b0 Lambda(f, s)`, and at
/// `s = k` the same with `Lambda*` on `fh` and `f`.
pub fn rankin_integral_check(f: &MellinPair, g: &MellinPair, s: Complex64) -> Result<RankinReport> {
    f.check(g)?;
    let tol = 1e-13;
    let h = g.swap();
    let fh = f.mul(&h)?;
    let (a0, b0) = (f.a0(), g.a0());
    let l = g.weight as f64;
    let k = f.weight as f64;
    let lhs = rankin_lhs(f, g, s, tol)?;
    let rhs = sub3(
        completed_lambda(&fh, s + l)?.value,
        completed_lambda(&h, s + l)?.value,
        a0,
        completed_lambda(f, s)?.value,
        b0,
    );
    let kk = cz(k, 0.0);
    let lhs_k = rankin_lhs(f, g, kk, tol)?;
    let rhs_k = sub3(
        lambda_star(&fh, StarPoint::K)?.value,
        completed_lambda(&h, kk + l)?.value,
        a0,
        lambda_star(f, StarPoint::K)?.value,
        b0,
    );
    Ok(RankinReport { s, residual: lhs.dist(&rhs), residual_at_k: lhs_k.dist(&rhs_k), lhs, rhs, lhs_at_k: lhs_k, rhs_at_k: rhs_k })
}

fn sub3(x: ComplexValue, y: ComplexValue, cy: Complex64, z: ComplexValue, cz_: Complex64) -> ComplexValue {
    x - y.scale(cy) - z.scale(cz_)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Coeff;
    use crate::frac::rat;
    use crate::zeta::hurwitz_zeta;

    fn pair(fam: Family, k: u32, a: i64, b: i64, n: u64) -> MellinPair {
        let spec = EisensteinSpec::new(fam, k, a, b, n).unwrap();
        catalog_pair(&spec, pair_truncation(n * n, k)).unwrap()
    }

    #[test]
    fn dirichlet_examples() {
        let mut f = FourierQSeries::new(1, 400, 1, 1).with_growth(0.0);
        for e in 1..400 {
            f.set(e, Coeff::rational(rat(1, 1)));
        }
        let v = dirichlet_l(&f, cz(3.0, 0.0)).unwrap();
        let z3 = hurwitz_zeta(FractionModOne::zero(), cz(3.0, 0.0)).unwrap();
        assert!(v.dist(&z3) <= v.err + 1e-15);
        assert!(v.err < 1e-5);
        let mut g = FourierQSeries::new(1, 10, 1, 1);
        g.set(5, Coeff::rational(rat(2, 1)));
        let s = cz(3.0, 1.0);
        let w = dirichlet_l(&g, s).unwrap();
        assert!((w.z() - 2.0 * (-s * 5f64.ln()).exp()).norm() < 1e-15);
        assert!(matches!(dirichlet_l(&f, cz(1.5, 0.0)), Err(Error::OutsideConvergence(_))));
    }

    #[test]
    fn h_closed_form_vs_dirichlet() {
        let (k, a, b, n) = (3, 1, 2, 5);
        let s = cz(8.0, 0.5);
        let h = build_series(&EisensteinSpec::new(Family::H, k, a, b, n).unwrap(), 3000).unwrap();
        let l = dirichlet_l(&h, s).unwrap();
        let pref = ((n as f64 / (2.0 * PI)).ln() * s).exp() * gamma(s);
        let c = lambda_h_closed_form(k, a, b, n, s).unwrap();
        assert!((l.z() * pref - c.z()).norm() < 1e-9, "{} {:?}", l.z() * pref, c);
    }

    #[test]
    fn h_closed_form_symmetries() {
        let s = cz(2.5, 0.0);
        let v = lambda_h_closed_form(1, 0, 0, 5, s).unwrap();
        assert!(v.abs() < 1e-14);
        let x = lambda_h_closed_form(3, 1, 2, 5, s).unwrap();
        let y = lambda_h_closed_form(3, -1, -2, 5, s).unwrap();
        assert!((x.z().conj() - y.z()).norm() < 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let p = pair(Family::H, 3, 1, 2, 5);
        for s in [cz(2.5, 0.0), cz(4.0, 0.0), cz(1.2, 0.7)] {
            let q = completed_lambda(&p, s).unwrap();
            let c = lambda_h_closed_form(3, 1, 2, 5, s).unwrap();
            assert!(q.value.dist(&c) < 1e-8, "s={s}: {:?} {:?}", q.value, c);
        }
    }

    #[test]
    fn functional_equation() {
        let p = pair(Family::G, 1, 1, 2, 5).add(&pair(Family::G, 1, 1, -2, 5)).unwrap();
        let r = functional_equation_residual(&p, cz(0.7, 0.0)).unwrap();
        assert!(r < 1e-9, "{r}");
    }

    #[test]
    fn poles_and_regularization() {
        let p = pair(Family::G, 3, 0, 2, 5).add(&pair(Family::H, 3, 0, 1, 5)).unwrap();
        assert!(p.a0().norm() > 0.0 && p.b0().norm() > 0.0);
        assert!(matches!(completed_lambda(&p, cz(0.0, 0.0)), Err(Error::PoleAt0)));
        let r0 = lambda_residue(&p, cz(0.0, 0.0), 0.3, 24).unwrap();
        assert!((r0 + p.a0()).norm() < 1e-8);
        let rk = lambda_residue(&p, cz(3.0, 0.0), 0.3, 24).unwrap();
        assert!((rk - p.b0()).norm() < 1e-8);
        let direct = lambda_star(&p, StarPoint::Zero).unwrap();
        assert!(direct.regularized);
        let contour = lambda_star_by_contour(&p, StarPoint::Zero, 0.3, 24).unwrap();
        assert!(direct.value.dist(&contour) < 1e-8);
        let at_k = lambda_star(&p, StarPoint::K).unwrap();
        let swapped = lambda_star(&p.swap(), StarPoint::Zero).unwrap();
        assert!(at_k.value.dist(&swapped.value) < 1e-9);
        let moved = lambda_star_with(&p, StarPoint::Zero, &LambdaConfig { split: 1.4, ..Default::default() }).unwrap();
        assert!(direct.value.dist(&moved.value) < 1e-9);
    }

    #[test]
    fn entire_when_constants_vanish() {
        // a_0 = 0 on both sides: H^(3)_{0,b} - H^(3)_{0,-b} has a_0 = 0 by parity
        let p = pair(Family::H, 3, 1, 2, 5).sub(&pair(Family::H, 3, -1, -2, 5)).unwrap();
        let p = MellinPair::new(p.f.star(), p.wf.star(), p.level, p.weight);
        let centre = completed_lambda(&p, cz(0.0, 0.0)).unwrap();
        let mean = lambda_star_by_contour(&p, StarPoint::Zero, 0.2, 16).unwrap();
        assert!(centre.value.dist(&mean) < 1e-8);
        assert!(!centre.regularized);
    }

    #[test]
    fn rankin_pair() {
        let f = pair(Family::H, 1, 1, 2, 5).add(&pair(Family::H, 1, 1, -2, 5)).unwrap();
        let g = pair(Family::G, 2, 1, 3, 5).sub(&pair(Family::G, 2, 1, 2, 5)).unwrap();
        let r = rankin_integral_check(&f, &g, cz(2.0, 0.0)).unwrap();
        assert!(r.residual < 1e-7, "{r:?}");
        assert!(r.residual_at_k < 1e-7, "{r:?}");
    }

    #[test]
    fn rankin_with_constant() {
        let f = pair(Family::H, 3, 1, 2, 5);
        let c = FourierQSeries::constant(Coeff::rational(rat(3, 2)), f.f.truncation(), 25, 0);
        let g = MellinPair::new(c.clone(), c, 25, 0);
        let r = rankin_integral_check(&f, &g, cz(1.5, 0.0)).unwrap();
        assert!(r.lhs.abs() == 0.0 && r.rhs.abs() < 1e-10, "{r:?}");
    }
}
