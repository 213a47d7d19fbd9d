//! The four holomorphic Eisenstein families `E`, `F`, `G`, `H` as exact
//! q-expansions over `Q(zeta_N)`, with the Atkin-Lehner and `SL_2(Z)` checks.

use crate::bernoulli::bernoulli_poly;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::frac::{rat, FractionModOne, Rational};
use crate::qseries::{qs_add, truncation_for, Coeff, FourierQSeries};
use crate::value::ComplexValue;
use crate::zeta::hurwitz_nonpositive;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    E,
    F,
    G,
    H,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            "H" | "h" => Ok(Family::H),
            _ => Err(Error::InvalidSpec(format!("unknown family {s:?} (expected E, F, G or H)"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::H => "H",
        };
        f.write_str(c)
    }
}

/// One series `X^(k)_{a,b}` of level `N`; labels are stored reduced mod `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisensteinSpec {
    pub family: Family,
    pub k: u32,
    pub a: i64,
    pub b: i64,
    #[serde(rename = "N")]
    pub n: u64,
}

impl EisensteinSpec {
    pub fn new(family: Family, k: u32, a: i64, b: i64, n: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec(format!("level N = {n} must be at least 3")));
        }
        if k == 0 {
            return Err(Error::InvalidSpec("weight k must be positive".into()));
        }
        let a = a.rem_euclid(n as i64);
        let b = b.rem_euclid(n as i64);
        if k == 2 {
            match family {
                Family::G if a == 0 => {
                    return Err(Error::InvalidSpec("G of weight 2 requires a != 0 mod N (modularity hypothesis)".into()))
                }
                Family::F | Family::H if a == 0 && b == 0 => {
                    return Err(Error::InvalidSpec(format!(
                        "{family} of weight 2 requires (a,b) != (0,0) mod N (modularity hypothesis)"
                    )))
                }
                _ => {}
            }
        }
        Ok(EisensteinSpec { family, k, a, b, n })
    }

    /// Level of the congruence group: `N` for `E`, `F` and `N^2` for `G`, `H`.
    pub fn level(&self) -> u64 {
        match self.family {
            Family::E | Family::F => self.n,
            Family::G | Family::H => self.n * self.n,
        }
    }

    /// Exponent denominator of the q-expansion.
    pub fn denom(&self) -> u64 {
        match self.family {
            Family::E | Family::F => self.n,
            Family::G | Family::H => 1,
        }
    }

    fn frac(&self, x: i64) -> FractionModOne {
        FractionModOne::from_residue(x, self.n)
    }
}

/// Exact `zh(b/N, 1-k)` for `k >= 1`, as an element of `Q(zeta_N)`.
pub fn hat_zeta_nonpositive(b: i64, n: u64, k: u32) -> Cyclo {
    // zh(b/N, s) = N^-s sum_{r=1}^N zeta_N^(rb) zeta(r/N, s)
    let mut poly = vec![Rational::from_integer(0); n as usize];
    for r in 1..=n as i64 {
        let v = hurwitz_nonpositive(FractionModOne::from_residue(r, n), k);
        poly[(r * b).rem_euclid(n as i64) as usize] += v;
    }
    Cyclo::from_powers(n, poly).scale(&Rational::from_integer((n as i128).pow(k - 1)))
}

fn half_cot_term(n: u64, j: i64) -> Cyclo {
    // (1/2)(1 + zeta^j)/(1 - zeta^j)
    (Cyclo::one() + Cyclo::root(n, j)) * Cyclo::inv_one_minus_root(n, j).scale(&rat(1, 2))
}

fn half_minus_frac(x: FractionModOne) -> Cyclo {
    Cyclo::from_rational(rat(1, 2) - x.to_rational())
}

/// The constant term `a_0` of the series, exactly.
pub fn constant_term(spec: &EisensteinSpec) -> Cyclo {
    let EisensteinSpec { family, k, a, b, n } = *spec;
    let zero = Cyclo::from_int(0);
    match family {
        Family::E | Family::F if k == 1 => {
            if a == 0 && b == 0 {
                zero
            } else if a == 0 {
                half_cot_term(n, b)
            } else {
                half_minus_frac(spec.frac(a))
            }
        }
        Family::E if k == 2 => {
            if a == 0 {
                hat_zeta_nonpositive(b, n, 2)
            } else {
                Cyclo::from_rational(rat(-1, 12))
            }
        }
        Family::E => {
            if a == 0 {
                hat_zeta_nonpositive(b, n, k)
            } else {
                zero
            }
        }
        Family::F => Cyclo::from_rational(-bernoulli_poly(k, &spec.frac(a).to_rational()) / k as i128),
        Family::G if k == 1 => match (a == 0, b == 0) {
            (true, true) | (false, false) => zero,
            (true, false) => half_minus_frac(spec.frac(b)),
            (false, true) => half_minus_frac(spec.frac(a)),
        },
        Family::G => {
            if b == 0 {
                let nk = (n as i128).pow(k - 1);
                Cyclo::from_rational(-bernoulli_poly(k, &spec.frac(a).to_rational()) * nk / k as i128)
            } else {
                zero
            }
        }
        Family::H if k == 1 => {
            let mut acc = zero;
            if a != 0 {
                acc = acc - half_cot_term(n, a);
            }
            if b != 0 {
                acc = acc - half_cot_term(n, b);
            }
            acc
        }
        Family::H => hat_zeta_nonpositive(-b, n, k),
    }
}

/// Accumulates `sum_j c_j zeta_N^j` per exponent before converting to `Cyclo`.
struct RootTable {
    n: u64,
    rows: Vec<Vec<i128>>,
}

impl RootTable {
    fn new(n: u64, trunc: u64) -> Self {
        RootTable { n, rows: vec![Vec::new(); trunc as usize] }
    }

    fn add(&mut self, e: u64, power: i64, c: i128) {
        let row = &mut self.rows[e as usize];
        if row.is_empty() {
            row.resize(self.n as usize, 0);
        }
        row[power.rem_euclid(self.n as i64) as usize] += c;
    }

    fn into_series(self, out: &mut FourierQSeries, scale: &Rational) {
        let n = self.n;
        for (e, row) in self.rows.into_iter().enumerate() {
            if row.iter().all(|&c| c == 0) {
                continue;
            }
            let poly: Vec<Rational> = row.into_iter().map(|c| Rational::from_integer(c) * scale).collect();
            out.set(e as u64, Coeff::Exact(Cyclo::from_powers(n, poly)));
        }
    }
}

fn pow_i(n: i64, k: u32) -> i128 {
    (n as i128).pow(k)
}

/// The q-expansion of `spec` up to (excluding) `q^(trunc/D)`.
pub fn build_series(spec: &EisensteinSpec, trunc: u64) -> Result<FourierQSeries> {
    if trunc == 0 {
        return Err(Error::InvalidSpec("truncation must be positive".into()));
    }
    let EisensteinSpec { family, k, a, b, n } = *spec;
    let ni = n as i64;
    let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
    let mut out = FourierQSeries::new(spec.denom(), trunc, spec.level(), k as i64);
    let mut table = RootTable::new(n, trunc);
    let mut scale = Rational::from_integer(1);
    let t = trunc as i64;
    for m in 1..t {
        for nn in 1..=(t - 1) / m {
            let e = (m * nn) as u64;
            match family {
                Family::E => {
                    let w = pow_i(nn, k - 1);
                    if (m - a).rem_euclid(ni) == 0 {
                        table.add(e, b * nn, w);
                    }
                    if (m + a).rem_euclid(ni) == 0 {
                        table.add(e, -b * nn, sign * w);
                    }
                }
                Family::F => {
                    let w = pow_i(nn, k - 1);
                    if (nn - a).rem_euclid(ni) == 0 {
                        table.add(e, b * m, w);
                    }
                    if (nn + a).rem_euclid(ni) == 0 {
                        table.add(e, -b * m, sign * w);
                    }
                }
                Family::G => {
                    let w = pow_i(m, k - 1);
                    if (m - a).rem_euclid(ni) == 0 && (nn - b).rem_euclid(ni) == 0 {
                        table.add(e, 0, w);
                    }
                    if (m + a).rem_euclid(ni) == 0 && (nn + b).rem_euclid(ni) == 0 {
                        table.add(e, 0, sign * w);
                    }
                }
                Family::H => {
                    let w = pow_i(nn, k - 1);
                    table.add(e, -a * m - b * nn, w);
                    table.add(e, a * m + b * nn, sign * w);
                }
            }
        }
    }
    if family == Family::F {
        scale = Rational::new(1, (n as i128).pow(k - 1));
    }
    table.into_series(&mut out, &scale);
    out.set(0, Coeff::Exact(constant_term(spec)));
    if family == Family::E && k == 2 {
        out.mark_quasi_modular();
    }
    Ok(out)
}

/// `N^(1-k) sum_c zeta_N^(bc) G^(k)_{a,c}(tau/N)`, which reproduces `F^(k)_{a,b}`.
pub fn f_from_g_bridge(k: u32, a: i64, b: i64, n: u64, trunc: u64) -> Result<FourierQSeries> {
    let mut acc: Option<FourierQSeries> = None;
    for c in 0..n as i64 {
        let g = build_series(&EisensteinSpec::new(Family::G, k, a, c, n)?, trunc)?.at_tau_over(n);
        let term = g.scale_exact(&Cyclo::root(n, b * c));
        acc = Some(match acc {
            None => term,
            Some(s) => qs_add(&s, &term),
        });
    }
    let s = acc.expect("n >= 1");
    Ok(s.scale(&Coeff::rational(Rational::new(1, (n as i128).pow(k - 1)))).with_level(n))
}

/// `(W_M f)(tau) = i^k M^(-k/2) tau^(-k) f(-1/(M tau))`.
pub fn atkin_lehner_numeric(f: &FourierQSeries, level: u64, k: i64, tau: Complex64) -> Result<ComplexValue> {
    let m = level as f64;
    let arg = -1.0 / (m * tau);
    let v = f.eval(arg)?;
    let pref = Complex64::i().powi(k as i32) * m.powf(-(k as f64) / 2.0) * tau.powi(-(k as i32));
    Ok(v.scale(pref))
}

/// Residual of `W_{N^2}(G^(k)_{a,b}) = (i^k/N) H^(k)_{a,b}` at `tau`.
pub fn atkin_lehner_residual(k: u32, a: i64, b: i64, n: u64, tau: Complex64, eps: f64) -> Result<f64> {
    let g_spec = EisensteinSpec::new(Family::G, k, a, b, n)?;
    let h_spec = EisensteinSpec::new(Family::H, k, a, b, n)?;
    let m = (n * n) as f64;
    let im_arg = (-1.0 / (m * tau)).im;
    let tg = truncation_for(im_arg, 1, k as f64 + 1.0, eps, 64);
    let th = truncation_for(tau.im, 1, k as f64 + 1.0, eps, 64);
    let g = build_series(&g_spec, tg)?;
    let h = build_series(&h_spec, th)?;
    let lhs = atkin_lehner_numeric(&g, n * n, k as i64, tau)?;
    let rhs = h.eval(tau)?.scale(Complex64::i().powi(k as i32) / n as f64);
    Ok(lhs.dist(&rhs))
}

/// `|(c tau + d)^(-k) F_{a,b}(g tau) - F_{(a,b) g}(tau)|` for `g` in `SL_2(Z)`.
pub fn slash_check_f(k: u32, a: i64, b: i64, n: u64, g: [[i64; 2]; 2], tau: Complex64, eps: f64) -> Result<f64> {
    let [[ga, gb], [gc, gd]] = g;
    if ga * gd - gb * gc != 1 {
        return Err(Error::InvalidSpec(format!("matrix {g:?} does not have determinant 1")));
    }
    let j = gc as f64 * tau + gd as f64;
    let gtau = (ga as f64 * tau + gb as f64) / j;
    let left = EisensteinSpec::new(Family::F, k, a, b, n)?;
    // row vector (a, b) times g
    let right = EisensteinSpec::new(Family::F, k, a * ga + b * gc, a * gb + b * gd, n)?;
    let tl = truncation_for(gtau.im, n, k as f64 + 1.0, eps, 64);
    let tr = truncation_for(tau.im, n, k as f64 + 1.0, eps, 64);
    let lhs = build_series(&left, tl)?.eval(gtau)?.scale(j.powi(-(k as i32)));
    let rhs = build_series(&right, tr)?.eval(tau)?;
    Ok(lhs.dist(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::periodic_zeta;
    use std::f64::consts::PI;

    fn spec(f: Family, k: u32, a: i64, b: i64, n: u64) -> EisensteinSpec {
        EisensteinSpec::new(f, k, a, b, n).unwrap()
    }

    #[test]
    fn constant_examples() {
        assert_eq!(constant_term(&spec(Family::G, 1, 0, 2, 5)).as_rational(), Some(rat(1, 10)));
        assert_eq!(constant_term(&spec(Family::F, 2, 1, 0, 4)).as_rational(), Some(rat(1, 96)));
        assert!(constant_term(&spec(Family::H, 3, 1, 0, 5)).is_zero());
        assert_eq!(constant_term(&spec(Family::E, 2, 0, 0, 5)).as_rational(), Some(rat(-1, 12)));
    }

    #[test]
    fn hat_zeta_exact_matches_numeric() {
        for n in [3u64, 5, 7] {
            for b in 0..n as i64 {
                for k in 1..6u32 {
                    if b == 0 && k == 1 {
                        continue;
                    }
                    let exact = hat_zeta_nonpositive(b, n, k).to_complex();
                    let num = periodic_zeta(FractionModOne::from_residue(b, n), Complex64::new(1.0 - k as f64, 0.0)).unwrap();
                    assert!((exact - num.z()).norm() < 1e-10, "n={n} b={b} k={k}");
                }
            }
        }
    }

    #[test]
    fn invalid_weight_two() {
        assert!(EisensteinSpec::new(Family::G, 2, 0, 1, 5).is_err());
        assert!(EisensteinSpec::new(Family::F, 2, 0, 0, 5).is_err());
        assert!(EisensteinSpec::new(Family::H, 2, 0, 0, 5).is_err());
        assert!(EisensteinSpec::new(Family::E, 2, 0, 0, 5).is_ok());
        assert!(EisensteinSpec::new(Family::G, 1, 0, 1, 2).is_err());
    }

    #[test]
    fn h_parity() {
        for k in 1..5u32 {
            let h1 = build_series(&spec(Family::H, k, 1, 2, 5), 30).unwrap();
            let h2 = build_series(&spec(Family::H, k, -1, -2, 5), 30).unwrap();
            let s: i128 = if k % 2 == 0 { 1 } else { -1 };
            for e in 0..30 {
                assert_eq!(h2.coeff(e), h1.coeff(e).clone().exact().map(|c| Coeff::Exact(c.scale(&Rational::from_integer(s)))).unwrap());
            }
        }
    }

    #[test]
    fn dft_bridge_exact() {
        for (k, a, b) in [(1u32, 1i64, 2i64), (3, 2, 1), (2, 1, 0), (4, 0, 3)] {
            let f = build_series(&spec(Family::F, k, a, b, 5), 100).unwrap();
            let br = f_from_g_bridge(k, a, b, 5, 100).unwrap();
            assert_eq!(br.denom(), 5);
            for e in 0..100 {
                assert_eq!(f.coeff(e), br.coeff(e), "k={k} a={a} b={b} e={e}");
            }
        }
    }

    #[test]
    fn atkin_lehner_examples() {
        let tau = Complex64::new(0.0, 1.0);
        assert!(atkin_lehner_residual(1, 1, 2, 5, tau, 1e-17).unwrap() < 1e-8);
        assert!(atkin_lehner_residual(3, 0, 1, 5, tau, 1e-17).unwrap() < 1e-8);
    }

    #[test]
    fn atkin_lehner_twice() {
        // W_M applied to the numeric function W_M f gives back f
        let g = build_series(&spec(Family::G, 3, 1, 2, 5), 400).unwrap();
        let tau = Complex64::new(0.05, 0.25);
        let wf = |t: Complex64| atkin_lehner_numeric(&g, 25, 3, t).unwrap().z();
        let m = 25.0;
        let arg = -1.0 / (m * tau);
        let ww = Complex64::i().powi(3) * m.powf(-1.5) * tau.powi(-3) * wf(arg);
        let f = g.eval(tau).unwrap().z();
        assert!((ww - f).norm() < 1e-9 * f.norm().max(1.0));
    }

    #[test]
    fn slash_examples() {
        let tau = Complex64::new(0.0, 1.0);
        assert_eq!(slash_check_f(3, 1, 0, 5, [[1, 0], [0, 1]], tau, 1e-17).unwrap(), 0.0);
        assert!(slash_check_f(3, 1, 0, 5, [[0, -1], [1, 0]], tau, 1e-17).unwrap() < 1e-8);
        assert!(slash_check_f(3, 1, 2, 5, [[1, 1], [0, 1]], tau, 1e-17).unwrap() < 1e-10);
        assert!(slash_check_f(1, 2, 1, 5, [[2, 1], [1, 1]], Complex64::new(0.1, 0.9), 1e-17).unwrap() < 1e-8);
    }

    #[test]
    fn g_series_self_consistent() {
        let s = spec(Family::G, 1, 1, 1, 5);
        let a = build_series(&s, 200).unwrap().eval(Complex64::new(0.0, 1.0)).unwrap();
        let b = build_series(&s, 400).unwrap().eval(Complex64::new(0.0, 1.0)).unwrap();
        assert!(a.dist(&b) < 1e-12);
        let _ = PI;
    }
}
