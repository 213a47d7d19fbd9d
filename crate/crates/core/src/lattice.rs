//! Lattice sums: the Eisenstein-Kronecker series at `s = k`, the real-analytic
//! series `E^{a,b}_u`, `F^{a,b}_u`, and their Fourier expansions.
//!
//! Lattice sums are summed row by row: each row `sum_n g(m tau + n)` is a
//! one-dimensional periodic sum with a closed form, so only the row index is
//! truncated, and the slowly decaying part of the rows is summed exactly.

use crate::error::{Error, Result};
use crate::frac::FractionModOne;
use crate::gamma::factorial;
use crate::rz::{delta_fn, hat_delta_fn, DoubleSeriesSpec};
use crate::value::ComplexValue;
use crate::zeta::{hurwitz_shifted, hurwitz_zeta, periodic_zeta};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn binom(n: u32, k: u32) -> f64 {
    crate::bernoulli::binomial(n, k) as f64
}

/// `Q_m` with `Q_0 = t`, `Q_{m+1} = -(1 + t^2) Q_m'`, as coefficient vectors.
fn cot_polys(max: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0, 1.0]];
    for m in 0..max {
        let q = &out[m];
        let d: Vec<f64> = (1..q.len()).map(|i| q[i] * i as f64).collect();
        let mut next = vec![0.0; d.len() + 2];
        for (i, c) in d.iter().enumerate() {
            next[i] -= c;
            next[i + 2] -= c;
        }
        out.push(next);
    }
    out
}

fn horner(p: &[f64], t: Complex64) -> Complex64 {
    p.iter().rev().fold(cz(0.0, 0.0), |acc, &c| acc * t + c)
}

/// `c_p(w) = sum_n (n + w)^-p`, symmetric partial sums when `p = 1`.
pub fn periodic_power_sum(p: u32, w: Complex64) -> Complex64 {
    assert!(p >= 1);
    if w.im < -0.5 {
        let s = if p % 2 == 0 { 1.0 } else { -1.0 };
        return s * periodic_power_sum(p, -w);
    }
    if w.im <= 0.5 {
        let x = w.re - w.re.round();
        let w = cz(x, w.im);
        let t = (PI * w).cos() / (PI * w).sin();
        let q = &cot_polys(p as usize - 1)[p as usize - 1];
        let sign = if p % 2 == 1 { 1.0 } else { -1.0 };
        return sign / factorial(p - 1) * PI.powi(p as i32) * horner(q, t);
    }
    // Lipschitz: (-2 pi i)^p/(p-1)! sum_r r^(p-1) e(r w), plus -i pi when p = 1
    let e = (cz(0.0, 2.0 * PI) * w).exp();
    let mut acc = cz(0.0, 0.0);
    let mut er = e;
    let mut r = 1.0f64;
    loop {
        let term = er * r.powi(p as i32 - 1);
        acc += term;
        if term.norm() < 1e-18 * acc.norm().max(1e-300) || er.norm() == 0.0 {
            break;
        }
        er *= e;
        r += 1.0;
    }
    let mut v = cz(0.0, -2.0 * PI).powu(p) / factorial(p - 1) * acc;
    if p == 1 {
        v += cz(0.0, -PI);
    }
    v
}

/// `sum_j (w + j)^-A (conj(w) + j)^-B` for `Im w != 0`, `A + B >= 2`.
fn phi_row(a_exp: u32, b_exp: u32, w: Complex64) -> Complex64 {
    let wb = w.conj();
    let d = w - wb;
    let mut acc = cz(0.0, 0.0);
    let sb = if b_exp % 2 == 0 { 1.0 } else { -1.0 };
    for i in 0..a_exp {
        let alpha = sb * d.powi(-(b_exp as i32) - i as i32) * binom(b_exp + i - 1, i);
        acc += alpha * periodic_power_sum(a_exp - i, w);
    }
    for i in 0..b_exp {
        let si = if i % 2 == 0 { 1.0 } else { -1.0 };
        let beta = si * d.powi(-(a_exp as i32) - i as i32) * binom(a_exp + i - 1, i);
        acc += beta * periodic_power_sum(b_exp - i, wb);
    }
    acc
}

/// A torsion point `(a tau + b)/N` of the lattice `Z + tau Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionPoint {
    pub a: i64,
    pub b: i64,
    pub n: u64,
}

impl TorsionPoint {
    pub fn new(a: i64, b: i64, n: u64) -> Self {
        TorsionPoint { a, b, n }
    }

    pub fn zero() -> Self {
        TorsionPoint { a: 0, b: 0, n: 1 }
    }

    pub fn value(&self, tau: Complex64) -> Complex64 {
        (self.a as f64 * tau + self.b as f64) / self.n as f64
    }
}

fn rows_needed(im_tau: f64, offset: f64, scale: f64) -> u64 {
    // rows whose decay factor exp(-2 pi (c Im tau - offset)/scale) is below 1e-18
    ((41.5 * scale / (2.0 * PI) + offset) / im_tau).ceil().max(2.0) as u64 + 1
}

/// `K_k(k, tau, z, u) = (k-1)!/(-2 i pi)^k sum'_w chi_u(w) (w + z)^-k` for
/// torsion points `z`, `u` and `k >= 3`. `cutoff` bounds the row index.
pub fn kronecker_lattice_value(k: u32, tau: Complex64, z: TorsionPoint, u: TorsionPoint, cutoff: Option<u64>) -> Result<ComplexValue> {
    if k < 3 {
        return Err(Error::NonConvergent(format!("weight {k} lattice sum is not absolutely convergent")));
    }
    if !(tau.im > 0.0) {
        return Err(Error::InvalidSpec("tau must lie in the upper half-plane".into()));
    }
    let nz = z.n as i64;
    let mu = u.n as f64;
    let alpha = u.a as f64 / mu;
    let beta = u.b as f64 / mu;
    let zv = z.value(tau);
    let c_max = cutoff.unwrap_or_else(|| rows_needed(tau.im, zv.im.abs(), mu)) as i64;
    let c_shift = (-(zv.im / tau.im)).round() as i64;
    let mut acc = cz(0.0, 0.0);
    let mut edge = 0.0f64;
    for c in (c_shift - c_max)..=(c_shift + c_max) {
        let row = if c * nz + z.a == 0 {
            // the real row: exact Hurwitz values
            let mut s = cz(0.0, 0.0);
            for r in 0..u.n as i64 {
                let x = FractionModOne::new(r * nz + z.b, nz * u.n as i64)?;
                let kk = cz(k as f64, 0.0);
                let h = hurwitz_zeta(x, kk)?.z();
                let hm = hurwitz_zeta(x.neg(), kk)?.z();
                let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
                s += Complex64::from_polar(1.0, -2.0 * PI * r as f64 * alpha) * (h + sgn * hm);
            }
            s * mu.powi(-(k as i32))
        } else {
            let w = c as f64 * tau + zv;
            let mut s = cz(0.0, 0.0);
            for r in 0..u.n as i64 {
                s += Complex64::from_polar(1.0, -2.0 * PI * r as f64 * alpha) * periodic_power_sum(k, (w + r as f64) / mu);
            }
            s * mu.powi(-(k as i32))
        };
        let term = Complex64::from_polar(1.0, 2.0 * PI * c as f64 * beta) * row;
        if (c - c_shift).abs() == c_max {
            edge += term.norm();
        }
        acc += term;
    }
    let pref = factorial(k - 1) / cz(0.0, -2.0 * PI).powu(k);
    let v = acc * pref;
    let ratio = (-2.0 * PI * tau.im / mu).exp();
    let err = edge * pref.norm() * ratio / (1.0 - ratio) + 64.0 * f64::EPSILON * v.norm().max(1.0);
    Ok(ComplexValue::new(v, err))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RealAnalyticVariant {
    #[serde(rename = "E")]
    ESeries,
    #[serde(rename = "F")]
    FSeries,
}

/// `E^{a,b}_u` or `F^{a,b}_u` at level `n`: exponents `a+1`, `b+1`.
/// With `a = b = 0` only the Fourier evaluation is available; it gives the
/// Eisenstein-summed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealAnalyticSpec {
    pub a: u32,
    pub b: u32,
    pub u1: i64,
    pub u2: i64,
    #[serde(rename = "N")]
    pub n: u64,
    pub variant: RealAnalyticVariant,
}

impl RealAnalyticSpec {
    pub fn new(variant: RealAnalyticVariant, a: u32, b: u32, u1: i64, u2: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("level must be positive".into()));
        }
        let m = n as i64;
        if a + b == 0 && u1.rem_euclid(m) == 0 && u2.rem_euclid(m) == 0 {
            return Err(Error::NonConvergent("E^{0,0}_0 and F^{0,0}_0 have no finite value".into()));
        }
        Ok(RealAnalyticSpec { a, b, u1: u1.rem_euclid(m), u2: u2.rem_euclid(m), n, variant })
    }

    fn sign(&self) -> f64 {
        if (self.a + self.b) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// The `r = 0` Fourier mode of a row: `(-1)^b 2 i pi C(a+b,a) (w - conj w)^(-a-b-1)`.
    fn c0_coefficient(&self) -> Complex64 {
        let sb = if self.b % 2 == 0 { 1.0 } else { -1.0 };
        cz(0.0, 2.0 * PI) * sb * binom(self.a + self.b, self.a)
    }
}

fn unit(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// `zeta(x, s) + sign zeta(-x, s)` at an integer `s >= 2`.
fn zeta_pair(x: FractionModOne, s: u32, sign: f64) -> Result<Complex64> {
    let s = cz(s as f64, 0.0);
    Ok(hurwitz_zeta(x, s)?.z() + sign * hurwitz_zeta(x.neg(), s)?.z())
}

fn hat_zeta_pair(x: FractionModOne, s: u32, sign: f64) -> Result<Complex64> {
    let s = cz(s as f64, 0.0);
    Ok(periodic_zeta(x, s)?.z() + sign * periodic_zeta(x.neg(), s)?.z())
}

/// First `m > after` with `m = r mod n`.
fn first_above(after: u64, r: i64, n: u64) -> u64 {
    let n_i = n as i64;
    let base = after as i64 + 1;
    (base + (r - base).rem_euclid(n_i)) as u64
}

/// Truncated lattice sum of `E^{a,b}_u` or `F^{a,b}_u` at `tau`. Rows
/// `1 <= |m| <= cutoff` are summed exactly; beyond them only the `r = 0`
/// Fourier mode of each row survives, and those are summed in closed form.
pub fn real_analytic_eval(spec: &RealAnalyticSpec, tau: Complex64, cutoff: Option<u64>) -> Result<ComplexValue> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidSpec("tau must lie in the upper half-plane".into()));
    }
    if spec.a + spec.b == 0 {
        return Err(Error::NonConvergent("E^{0,0} and F^{0,0} need Eisenstein summation".into()));
    }
    let n = spec.n;
    let nf = n as f64;
    let (ae, be) = (spec.a + 1, spec.b + 1);
    let p = spec.a + spec.b + 1;
    let sign = spec.sign();
    let m_max = cutoff.unwrap_or_else(|| rows_needed(tau.im, 0.0, nf)).max(1);
    let scale = nf.powi(-((ae + be) as i32));
    let dt = tau - tau.conj();
    let c0 = spec.c0_coefficient();
    let row = |m: u64, shift: f64| scale * phi_row(ae, be, (m as f64 * tau + shift) / nf);
    let row_c0 = |m: u64| scale * c0 * (m as f64 * dt / nf).powi(-(p as i32));
    let mut acc = cz(0.0, 0.0);
    let mut deviation = 0.0f64;
    let tail;
    match spec.variant {
        RealAnalyticVariant::ESeries => {
            if spec.u1 == 0 {
                acc += scale * zeta_pair(FractionModOne::from_residue(spec.u2, n), ae + be, sign)?;
            }
            for m in 1..=m_max {
                if (m as i64 - spec.u1).rem_euclid(n as i64) == 0 {
                    let v = row(m, spec.u2 as f64);
                    acc += v;
                    if m + n > m_max {
                        deviation = deviation.max((v - row_c0(m)).norm());
                    }
                }
                if (m as i64 + spec.u1).rem_euclid(n as i64) == 0 {
                    let v = row(m, -(spec.u2 as f64));
                    acc += sign * v;
                    if m + n > m_max {
                        deviation = deviation.max((v - row_c0(m)).norm());
                    }
                }
            }
            // sum_{m > M, m = +-u1} of the r = 0 modes
            let pc = cz(p as f64, 0.0);
            let h1 = hurwitz_shifted(first_above(m_max, spec.u1, n) as f64 / nf, pc)?.z();
            let h2 = hurwitz_shifted(first_above(m_max, -spec.u1, n) as f64 / nf, pc)?.z();
            tail = scale * c0 * dt.powi(-(p as i32)) * (h1 + sign * h2);
        }
        RealAnalyticVariant::FSeries => {
            acc += hat_zeta_pair(FractionModOne::from_residue(spec.u2, n), ae + be, sign)?;
            for m in 1..=m_max {
                let mut plus = cz(0.0, 0.0);
                let mut minus = cz(0.0, 0.0);
                for r in 0..n as i64 {
                    let v = row(m, r as f64);
                    plus += unit((r * spec.u2) as f64 / nf) * v;
                    minus += unit(-(r * spec.u2) as f64 / nf) * v;
                }
                let v = unit((m as i64 * spec.u1) as f64 / nf) * plus + sign * unit(-(m as i64 * spec.u1) as f64 / nf) * minus;
                acc += v;
                if m == m_max {
                    let expect = if spec.u2 == 0 {
                        nf * row_c0(m) * (unit((m as i64 * spec.u1) as f64 / nf) + sign * unit(-(m as i64 * spec.u1) as f64 / nf))
                    } else {
                        cz(0.0, 0.0)
                    };
                    deviation = (v - expect).norm();
                }
            }
            tail = if spec.u2 == 0 {
                let pc = cz(p as f64, 0.0);
                let mut s = cz(0.0, 0.0);
                for rho in 0..n as i64 {
                    let h = hurwitz_shifted(first_above(m_max, rho, n) as f64 / nf, pc)?.z();
                    s += (unit((rho * spec.u1) as f64 / nf) + sign * unit(-(rho * spec.u1) as f64 / nf)) * h;
                }
                nf * scale * c0 * dt.powi(-(p as i32)) * s
            } else {
                cz(0.0, 0.0)
            };
        }
    }
    let v = acc + tail;
    let ratio = (-2.0 * PI * tau.im / nf).exp();
    let err = deviation * ratio / (1.0 - ratio) * nf + 256.0 * f64::EPSILON * v.norm().max(1.0);
    Ok(ComplexValue::new(v, err))
}

/// `(a+b-j)!/(j!(top-j)!)` with `top` the summation bound.
fn block_weight(a: u32, b: u32, j: u32, top: u32) -> f64 {
    factorial(a + b - j) / (factorial(j) * factorial(top - j))
}

/// Evaluation through the Fourier expansion: constant blocks plus the four
/// double-series blocks, with each series truncated so its tail is below `eps`.
pub fn real_analytic_fourier_eval(spec: &RealAnalyticSpec, tau: Complex64, eps: f64) -> Result<ComplexValue> {
    if !(tau.im > 0.0) {
        return Err(Error::InvalidSpec("tau must lie in the upper half-plane".into()));
    }
    let RealAnalyticSpec { a, b, u1, u2, n, variant } = *spec;
    let nf = n as f64;
    let sign = spec.sign();
    let p = a + b + 1;
    let dt = tau - tau.conj();
    let x1 = FractionModOne::from_residue(u1, n);
    let x2 = FractionModOne::from_residue(u2, n);
    let sb1 = if b % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^(b+1)
    let mut err = 0.0;
    let mut total;
    // the four series of the two double-series blocks
    let (s_plus, s_minus, n_factor) = match variant {
        RealAnalyticVariant::ESeries => {
            let c1 = if u1 == 0 { nf.powi(-((p + 1) as i32)) * zeta_pair(x2, p + 1, sign)? } else { cz(0.0, 0.0) };
            let c2 = spec.c0_coefficient() * nf.powi(-((p + 1) as i32)) * zeta_pair(x1, p, sign)? * dt.powi(-(p as i32));
            total = c1 + c2;
            ((delta_fn(u1, n), hat_delta_fn(-u2, n)), (delta_fn(-u1, n), hat_delta_fn(u2, n)), 1.0)
        }
        RealAnalyticVariant::FSeries => {
            let c1 = hat_zeta_pair(x2, p + 1, sign)?;
            let c2 = if u2 == 0 { spec.c0_coefficient() * dt.powi(-(p as i32)) * hat_zeta_pair(x1, p, sign)? } else { cz(0.0, 0.0) };
            total = c1 + c2;
            ((hat_delta_fn(-u1, n), delta_fn(-u2, n)), (hat_delta_fn(u1, n), delta_fn(u2, n)), nf)
        }
    };
    let step = cz(0.0, -2.0 * PI / nf);
    let mut series = |t: f64, u: f64, pair: &(crate::rz::ArithmeticFunctionModN, crate::rz::ArithmeticFunctionModN)| -> Result<Complex64> {
        let spec = DoubleSeriesSpec::real(t, u, pair.0.clone(), pair.1.clone())?;
        let v = spec.eval(tau, eps)?;
        err += v.err;
        Ok(v.z())
    };
    for j in 0..=a {
        let t = j as f64 - p as f64;
        let w = sb1 / factorial(b) * block_weight(a, b, j, a) * step.powu(j + 1) * dt.powi(j as i32 - p as i32) * n_factor;
        total += w * (series(t, j as f64, &s_plus)? + sign * series(t, j as f64, &s_minus)?);
    }
    // the conjugate blocks: for F the roles of the two pairs swap
    let (c_first, c_second) = match variant {
        RealAnalyticVariant::ESeries => (&s_plus, &s_minus),
        RealAnalyticVariant::FSeries => (&s_minus, &s_plus),
    };
    for j in 0..=b {
        let t = j as f64 - p as f64;
        let w = sb1 / factorial(a) * block_weight(a, b, j, b) * step.powu(j + 1) * dt.powi(j as i32 - p as i32) * n_factor;
        total += w * (series(t, j as f64, c_first)?.conj() + sign * series(t, j as f64, c_second)?.conj());
    }
    Ok(ComplexValue::new(total, err * 1e2 + 256.0 * f64::EPSILON * total.norm().max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{build_series, EisensteinSpec, Family};

    fn direct(p: u32, w: Complex64) -> Complex64 {
        let mut s = w.powi(-(p as i32));
        for n in 1..200_000 {
            let nf = n as f64;
            s += (w + nf).powi(-(p as i32)) + (w - nf).powi(-(p as i32));
        }
        // leading term of the dropped tail |n| >= 200000
        s + 2.0 / ((p - 1) as f64 * 199_999.5f64.powi(p as i32 - 1))
    }

    #[test]
    fn power_sums_agree() {
        for w in [cz(0.3, 0.2), cz(-0.1, 0.7), cz(0.45, -0.3), cz(0.2, -1.3)] {
            for p in 2..6 {
                let a = periodic_power_sum(p, w);
                let b = direct(p, w);
                assert!((a - b).norm() < 1e-8 * b.norm().max(1.0), "p={p} w={w} {a} {b}");
            }
            let c1 = periodic_power_sum(1, w);
            assert!((c1 - PI * (PI * w).cos() / (PI * w).sin()).norm() < 1e-12);
        }
    }

    #[test]
    fn phi_row_direct() {
        let w = cz(0.3, 0.8);
        for (a, b) in [(1, 2), (2, 2), (3, 1), (1, 1)] {
            let v = phi_row(a, b, w);
            let mut d = cz(0.0, 0.0);
            for j in -100_000i64..=100_000 {
                let jf = j as f64;
                d += (w + jf).powi(-(a as i32)) * (w.conj() + jf).powi(-(b as i32));
            }
            let q = (a + b) as i32;
            let even = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
            d += (1.0 + even) / ((q - 1) as f64 * 100_000.5f64.powi(q - 1));
            assert!((v - d).norm() < 1e-8, "{a},{b}: {v} {d}");
        }
    }

    #[test]
    fn kronecker_matches_series() {
        let n = 5;
        let tau = cz(0.0, 2.0);
        let e = kronecker_lattice_value(3, tau, TorsionPoint::new(1, 0, n), TorsionPoint::zero(), None).unwrap();
        let s = build_series(&EisensteinSpec::new(Family::E, 3, 1, 0, n).unwrap(), 400).unwrap().eval(tau).unwrap();
        assert!(e.dist(&s) < 1e-8, "{e:?} {s:?}");
        let tau = cz(0.0, 1.0);
        let f = kronecker_lattice_value(4, tau, TorsionPoint::zero(), TorsionPoint::new(0, 1, n), None).unwrap();
        let s = build_series(&EisensteinSpec::new(Family::F, 4, 0, 1, n).unwrap(), 800).unwrap().eval(tau).unwrap();
        assert!(f.dist(&s) < 1e-8, "{f:?} {s:?}");
    }

    #[test]
    fn kronecker_parity() {
        let tau = cz(0.2, 1.1);
        for k in 3..6 {
            let a = kronecker_lattice_value(k, tau, TorsionPoint::new(1, 2, 5), TorsionPoint::zero(), None).unwrap();
            let b = kronecker_lattice_value(k, tau, TorsionPoint::new(-1, -2, 5), TorsionPoint::zero(), None).unwrap();
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a.z() - s * b.z()).norm() < 1e-10);
        }
        assert!(matches!(
            kronecker_lattice_value(2, tau, TorsionPoint::zero(), TorsionPoint::zero(), None),
            Err(Error::NonConvergent(_))
        ));
    }

    #[test]
    fn lattice_cutoff_stable() {
        let spec = RealAnalyticSpec::new(RealAnalyticVariant::ESeries, 1, 0, 0, 0, 1).unwrap();
        let tau = cz(0.0, 1.0);
        let a = real_analytic_eval(&spec, tau, Some(12)).unwrap();
        let b = real_analytic_eval(&spec, tau, Some(24)).unwrap();
        assert!(a.dist(&b) <= a.err.max(1e-14));
    }

    #[test]
    fn f_is_dft_of_e() {
        let n = 3;
        let tau = cz(1.0, 1.0);
        let f = real_analytic_eval(&RealAnalyticSpec::new(RealAnalyticVariant::FSeries, 1, 1, 1, 2, n).unwrap(), tau, None).unwrap();
        let mut acc = cz(0.0, 0.0);
        for x in 0..n as i64 {
            for y in 0..n as i64 {
                let e = real_analytic_eval(&RealAnalyticSpec::new(RealAnalyticVariant::ESeries, 1, 1, x, y, n).unwrap(), tau, None).unwrap();
                acc += unit((x + 2 * y) as f64 / n as f64) * e.z();
            }
        }
        assert!((f.z() - acc).norm() < 1e-8);
    }

    #[test]
    fn conjugation_swaps_exponents() {
        let tau = cz(0.1, 0.9);
        let a = real_analytic_eval(&RealAnalyticSpec::new(RealAnalyticVariant::ESeries, 2, 1, 1, 3, 5).unwrap(), tau, None).unwrap();
        let b = real_analytic_eval(&RealAnalyticSpec::new(RealAnalyticVariant::ESeries, 1, 2, 1, 3, 5).unwrap(), tau, None).unwrap();
        assert!((a.z().conj() - b.z()).norm() < 1e-12);
    }

    #[test]
    fn fourier_matches_lattice() {
        let cases = [
            (RealAnalyticVariant::ESeries, 1, 0, 1, 2, 5, cz(0.0, 1.0)),
            (RealAnalyticVariant::ESeries, 2, 1, 0, 3, 7, cz(0.5, 1.5)),
            (RealAnalyticVariant::FSeries, 1, 0, 1, 2, 5, cz(0.0, 1.0)),
            (RealAnalyticVariant::FSeries, 1, 2, 2, 0, 3, cz(0.3, 1.2)),
            (RealAnalyticVariant::ESeries, 0, 2, 0, 0, 3, cz(-0.2, 0.9)),
        ];
        for (v, a, b, u1, u2, n, tau) in cases {
            let spec = RealAnalyticSpec::new(v, a, b, u1, u2, n).unwrap();
            let l = real_analytic_eval(&spec, tau, None).unwrap();
            let f = real_analytic_fourier_eval(&spec, tau, 1e-16).unwrap();
            assert!(l.dist(&f) < 1e-7, "{spec:?}: lattice {l:?} fourier {f:?}");
        }
    }
}
