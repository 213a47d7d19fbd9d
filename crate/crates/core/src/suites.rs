//! Named verification suites. Each returns a report with the worst residual
//! against its threshold; the command-line `verify` and the acceptance test
//! both run through here.

use crate::cyclotomic::Cyclo;
use crate::eisenstein::{atkin_lehner_residual, build_series, slash_check_f, EisensteinSpec, Family};
use crate::error::{Error, Result};
use crate::frac::{frac_part, rat, FractionModOne, Rational};
use crate::lattice::{real_analytic_eval, real_analytic_fourier_eval, RealAnalyticSpec, RealAnalyticVariant};
use crate::lfunc::{
    catalog_pair, completed_lambda, functional_equation_residual, lambda_h_closed_form, pair_truncation, rankin_integral_check, MellinPair,
};
use crate::qseries::Coeff;
use crate::regulator::{
    a_series_is_zero, cancellation_residuals, fiber_integral_omega, fiber_integral_psi, fiber_lemma_omega, fiber_lemma_psi, pre_swap_integral_check,
    theorem_both_sides, RegulatorInput, RightForm,
};
use crate::rz::{delta_fn, hat_delta_fn, rz_swap_check, swap_brute_force_s0, ArithmeticFunctionModN, SwapParams};
use crate::zeta::verify_hurwitz_formula;
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Hurwitz,
    Constants,
    Fourier,
    AtkinLehner,
    Slash,
    Lambda,
    Rz,
    Rankin,
    Fibers,
    Cancellation,
    Theorem,
    Preswap,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Hurwitz,
        Suite::Constants,
        Suite::Fourier,
        Suite::AtkinLehner,
        Suite::Slash,
        Suite::Lambda,
        Suite::Rz,
        Suite::Rankin,
        Suite::Fibers,
        Suite::Cancellation,
        Suite::Theorem,
        Suite::Preswap,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Hurwitz => "hurwitz",
            Suite::Constants => "constants",
            Suite::Fourier => "fourier",
            Suite::AtkinLehner => "atkin_lehner",
            Suite::Slash => "slash",
            Suite::Lambda => "lambda",
            Suite::Rz => "rz",
            Suite::Rankin => "rankin",
            Suite::Fibers => "fibers",
            Suite::Cancellation => "cancellation",
            Suite::Theorem => "theorem",
            Suite::Preswap => "preswap",
        }
    }

    /// The identity each suite checks, quoted in failure reports.
    pub fn reference(&self) -> &'static str {
        match self {
            Suite::Hurwitz => "Hurwitz formula relating zeta(x,1-s) to zh(+-x,s)",
            Suite::Constants => "constant-term tables of E, F, G, H",
            Suite::Fourier => "Fourier expansions of E^{a,b}_u and F^{a,b}_u",
            Suite::AtkinLehner => "W_{N^2} G^(k)_{a,b} = (i^k/N) H^(k)_{a,b}",
            Suite::Slash => "F^(k)_{a,b} |_k g = F^(k)_{(a,b)g}",
            Suite::Lambda => "closed form of Lambda(H) and Lambda(f,s) = Lambda(Wf,k-s)",
            Suite::Rz => "exchange identity for products of S-series",
            Suite::Rankin => "Rankin-type unfolding Lambda(fh,s+l) - a0 Lambda(h,s+l)",
            Suite::Fibers => "fiber integrals of psi_{a,b} and Omega_l",
            Suite::Cancellation => "C+F = 0, B+E = 0 or B = 0, D+E = 0 or E = 0",
            Suite::Theorem => "A(k1,k2,u1,u2) + (-1)^(k+1) A(k2,k1,u2,u1) = product formula",
            Suite::Preswap => "integral over y before the exchange at Re(s) << 0",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidSpec(format!("unknown suite {s:?}")))
    }
}

/// One residual within a suite.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub reference: String,
    pub threshold: f64,
    pub passed: bool,
    pub cases: usize,
    pub worst: Option<Check>,
    pub checks: Vec<Check>,
    pub errors: Vec<String>,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Restricts the `(k1, k2, N)` sweeps when set.
    pub k1: Option<u32>,
    pub k2: Option<u32>,
    pub n: Option<u64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 7, k1: None, k2: None, n: None }
    }
}

struct Collector {
    threshold: f64,
    checks: Vec<Check>,
    errors: Vec<String>,
}

impl Collector {
    fn new(threshold: f64) -> Self {
        Collector { threshold, checks: Vec::new(), errors: Vec::new() }
    }

    fn push(&mut self, id: String, residual: f64) {
        let passed = residual <= self.threshold;
        self.checks.push(Check { id, residual, passed });
    }

    fn record<T>(&mut self, id: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(format!("{id}: {e}"));
                None
            }
        }
    }

    fn finish(mut self, suite: Suite, start: Instant) -> SuiteReport {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        let worst = self
            .checks
            .iter()
            .max_by(|a, b| a.residual.partial_cmp(&b.residual).unwrap_or(std::cmp::Ordering::Greater))
            .cloned();
        let passed = self.errors.is_empty() && !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.name().to_string(),
            reference: suite.reference().to_string(),
            threshold: self.threshold,
            passed,
            cases: self.checks.len(),
            worst,
            checks: self.checks,
            errors: self.errors,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

pub fn run(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    match suite {
        Suite::Hurwitz => hurwitz(),
        Suite::Constants => constants(),
        Suite::Fourier => fourier(opts.seed),
        Suite::AtkinLehner => atkin_lehner(),
        Suite::Slash => slash(),
        Suite::Lambda => lambda(),
        Suite::Rz => rz(opts.seed),
        Suite::Rankin => rankin(),
        Suite::Fibers => fibers(),
        Suite::Cancellation => cancellation(opts),
        Suite::Theorem => theorem(opts),
        Suite::Preswap => preswap(),
    }
}

pub fn hurwitz() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-10);
    let ss = [cz(2.0, 0.0), cz(3.0, 0.0), cz(1.5, 0.0), cz(2.0, 1.0), cz(0.5, 2.0)];
    for j in 1..=5 {
        for s in ss {
            let id = format!("x={j}/7 s={s}");
            if let Some(r) = c.record(&id, FractionModOne::new(j, 7).and_then(|x| verify_hurwitz_formula(x, s))) {
                c.push(id, r);
            }
        }
    }
    c.finish(Suite::Hurwitz, start)
}

// ---------------------------------------------------------------------------
// constant terms against special values computed without Bernoulli polynomials

/// Bernoulli numbers `B_0..B_m` (with `B_1 = -1/2`) by the Akiyama-Tanigawa algorithm.
fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(m + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        a.push(rat(1, j as i128 + 1));
        for i in (1..=j).rev() {
            a[i - 1] = (a[i - 1] - a[i]) * Rational::from_integer(i as i128);
        }
        out.push(a[0]);
    }
    if m >= 1 {
        out[1] = -out[1];
    }
    out
}

fn bernoulli_poly_oracle(k: u32, x: &Rational) -> Rational {
    let b = bernoulli_numbers(k as usize);
    let mut acc = Rational::zero();
    let mut binom = Rational::one();
    for j in 0..=k {
        if j > 0 {
            binom = binom * Rational::from_integer((k - j + 1) as i128) / Rational::from_integer(j as i128);
        }
        let mut p = Rational::one();
        for _ in 0..(k - j) {
            p *= x;
        }
        acc += binom * b[j as usize] * p;
    }
    acc
}

/// `Li_{-m}(zeta_N^j) = z A_m(z) / (1-z)^(m+1)` with Eulerian numbers `A(m,i)`.
fn polylog_neg(m: u32, j: i64, n: u64) -> Cyclo {
    let z = Cyclo::root(n, j);
    let inv = Cyclo::inv_one_minus_root(n, j);
    if m == 0 {
        return z * inv;
    }
    // A(m,i) by A(m,i) = (i+1) A(m-1,i) + (m-i) A(m-1,i-1)
    let mut row = vec![1i128];
    for mm in 2..=m as i128 {
        let mut next = vec![0i128; mm as usize];
        for i in 0..mm as usize {
            let left = if i < row.len() { (i as i128 + 1) * row[i] } else { 0 };
            let right = if i >= 1 && i - 1 < row.len() { (mm - i as i128) * row[i - 1] } else { 0 };
            next[i] = left + right;
        }
        row = next;
    }
    let mut poly = Cyclo::from_int(0);
    let mut zp = Cyclo::from_int(1);
    for c in &row {
        poly = poly + zp.clone().scale(&Rational::from_integer(*c));
        zp = zp * z.clone();
    }
    let mut denom = Cyclo::from_int(1);
    for _ in 0..=m {
        denom = denom * inv.clone();
    }
    z * poly * denom
}

/// `zh(j/N, 1-k)` for `k >= 1`.
fn hat_zeta_oracle(j: i64, n: u64, k: u32) -> Cyclo {
    if j.rem_euclid(n as i64) == 0 {
        let b = bernoulli_numbers(k as usize);
        return Cyclo::from_rational(-b[k as usize] / Rational::from_integer(k as i128));
    }
    polylog_neg(k - 1, j, n)
}

fn half_cot(j: i64, n: u64) -> Cyclo {
    Cyclo::from_rational(rat(1, 2)) + polylog_neg(0, j, n)
}

fn frac(a: i64, n: u64) -> Rational {
    frac_part(&rat(a as i128, n as i128))
}

/// The constant-term tables written out branch by branch.
pub fn constant_term_oracle(spec: &EisensteinSpec) -> Cyclo {
    let EisensteinSpec { family, k, a, b, n } = *spec;
    let zero = Cyclo::from_int(0);
    let half_minus = |x: i64| Cyclo::from_rational(rat(1, 2) - frac(x, n));
    let bern = |x: i64| Cyclo::from_rational(-bernoulli_poly_oracle(k, &frac(x, n)) / Rational::from_integer(k as i128));
    match (family, k) {
        (Family::E | Family::F, 1) => match (a == 0, b == 0) {
            (true, true) => zero,
            (true, false) => half_cot(b, n),
            _ => half_minus(a),
        },
        (Family::E, 2) if a != 0 => Cyclo::from_rational(rat(-1, 12)),
        (Family::E, _) => {
            if a == 0 {
                hat_zeta_oracle(b, n, k)
            } else {
                zero
            }
        }
        (Family::F, _) => bern(a),
        (Family::G, 1) => match (a == 0, b == 0) {
            (true, false) => half_minus(b),
            (false, true) => half_minus(a),
            _ => zero,
        },
        (Family::G, _) => {
            if b == 0 {
                bern(a).scale(&Rational::from_integer((n as i128).pow(k - 1)))
            } else {
                zero
            }
        }
        (Family::H, 1) => {
            let mut acc = zero;
            for x in [a, b] {
                if x != 0 {
                    acc = acc - half_cot(x, n);
                }
            }
            acc
        }
        (Family::H, _) => hat_zeta_oracle(-b, n, k),
    }
}

pub fn constants() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(0.0);
    for n in [3u64, 5] {
        for family in [Family::E, Family::F, Family::G, Family::H] {
            for k in 1..=5u32 {
                for a in 0..n as i64 {
                    for b in 0..n as i64 {
                        let Ok(spec) = EisensteinSpec::new(family, k, a, b, n) else { continue };
                        let id = format!("{family}{k}_{{{a},{b}}} N={n}");
                        let Some(s) = c.record(&id, build_series(&spec, 4)) else { continue };
                        let expect = constant_term_oracle(&spec);
                        let ok = matches!(s.coeff(0), Coeff::Exact(ref x) if *x == expect);
                        c.push(id, if ok { 0.0 } else { 1.0 });
                    }
                }
            }
        }
    }
    c.finish(Suite::Constants, start)
}

pub fn fourier(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..12 {
        let n = [3u64, 5, 7][rng.gen_range(0..3)];
        let variant = if rng.gen_bool(0.5) { RealAnalyticVariant::ESeries } else { RealAnalyticVariant::FSeries };
        let (a, b) = loop {
            let (a, b) = (rng.gen_range(0..3u32), rng.gen_range(0..3u32));
            if a + b >= 1 {
                break (a, b);
            }
        };
        let (u1, u2) = (rng.gen_range(0..n as i64), rng.gen_range(0..n as i64));
        let tau = cz(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.6));
        let id = format!("{i:02} {variant:?} a={a} b={b} u=({u1},{u2}) N={n} tau={tau:.3}");
        let r = RealAnalyticSpec::new(variant, a, b, u1, u2, n).and_then(|spec| {
            let l = real_analytic_eval(&spec, tau, None)?;
            let f = real_analytic_fourier_eval(&spec, tau, 1e-15)?;
            Ok(l.dist(&f))
        });
        if let Some(r) = c.record(&id, r) {
            c.push(id, r);
        }
    }
    c.finish(Suite::Fourier, start)
}

pub fn atkin_lehner() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-8);
    for n in [3u64, 5] {
        let nf = n as f64;
        let pts = [cz(0.0, 1.0) / nf, cz(0.3, 1.1) / nf, cz(-0.2, 0.9) / nf];
        for k in 1..=4u32 {
            for a in 0..n as i64 {
                for b in 0..n as i64 {
                    if EisensteinSpec::new(Family::G, k, a, b, n).is_err() {
                        continue;
                    }
                    for (j, t) in pts.iter().enumerate() {
                        let id = format!("G{k}_{{{a},{b}}} N={n} point {j}");
                        if let Some(r) = c.record(&id, atkin_lehner_residual(k, a, b, n, *t, 1e-18)) {
                            c.push(id, r);
                        }
                    }
                }
            }
        }
    }
    c.finish(Suite::AtkinLehner, start)
}

pub fn slash() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-8);
    let mats = [[[1, 0], [0, 1]], [[0, -1], [1, 0]], [[1, 1], [0, 1]], [[2, 1], [1, 1]], [[1, 0], [3, 1]]];
    let tau = cz(0.1, 0.9);
    for n in [3u64, 5] {
        for k in 1..=4u32 {
            for (a, b) in [(1i64, 0i64), (1, 2), (0, 1), (2, 2)] {
                if EisensteinSpec::new(Family::F, k, a, b, n).is_err() {
                    continue;
                }
                for (j, g) in mats.iter().enumerate() {
                    let id = format!("F{k}_{{{a},{b}}} N={n} matrix {j}");
                    if let Some(r) = c.record(&id, slash_check_f(k, a, b, n, *g, tau, 1e-17)) {
                        c.push(id, r);
                    }
                }
            }
        }
    }
    c.finish(Suite::Slash, start)
}

fn pair(family: Family, k: u32, a: i64, b: i64, n: u64) -> Result<MellinPair> {
    catalog_pair(&EisensteinSpec::new(family, k, a, b, n)?, pair_truncation(n * n, k + 1))
}

pub fn lambda() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-8);
    let closed = [
        (3u32, 1i64, 2i64, 5u64, cz(2.5, 0.0)),
        (3, 1, 2, 5, cz(4.0, 0.0)),
        (3, 1, 2, 5, cz(1.2, 0.7)),
        (4, 2, 1, 5, cz(2.5, 0.3)),
        (2, 1, 1, 3, cz(1.5, 1.0)),
        (5, 1, 3, 7, cz(3.0, -0.5)),
    ];
    for (k, a, b, n, s) in closed {
        let id = format!("closed H{k}_{{{a},{b}}} N={n} s={s}");
        let r = pair(Family::H, k, a, b, n).and_then(|p| {
            let q = completed_lambda(&p, s)?;
            Ok(q.value.dist(&lambda_h_closed_form(k, a, b, n, s)?))
        });
        if let Some(r) = c.record(&id, r) {
            c.push(id, r);
        }
    }
    // the functional equation has the tighter threshold
    let mut fe = Collector::new(1e-9);
    let forms: [(&str, fn() -> Result<MellinPair>); 3] = [
        ("G1_{1,2}+G1_{1,-2} N=5", || pair(Family::G, 1, 1, 2, 5)?.add(&pair(Family::G, 1, 1, -2, 5)?)),
        ("G3_{1,2} N=5", || pair(Family::G, 3, 1, 2, 5)),
        ("H2_{1,1}-G2_{2,1} N=3", || pair(Family::H, 2, 1, 1, 3)?.sub(&pair(Family::G, 2, 2, 1, 3)?)),
    ];
    for (name, f) in forms {
        for s in [cz(0.7, 0.0), cz(0.3, 1.4), cz(2.2, -0.6)] {
            let id = format!("functional equation {name} s={s}");
            if let Some(r) = fe.record(&id, f().and_then(|p| functional_equation_residual(&p, s))) {
                fe.push(id, r);
            }
        }
    }
    c.checks.extend(fe.checks);
    c.errors.extend(fe.errors);
    let mut r = c.finish(Suite::Lambda, start);
    r.reference = format!("{}; thresholds 1e-8 (closed form), 1e-9 (functional equation)", r.reference);
    r
}

fn random_function(rng: &mut ChaCha8Rng, n: u64) -> ArithmeticFunctionModN {
    let u = rng.gen_range(0..n as i64);
    let base = if rng.gen_bool(0.5) { delta_fn(u, n) } else { hat_delta_fn(u, n) };
    if rng.gen_bool(0.5) {
        let v = rng.gen_range(0..n as i64);
        let other = if rng.gen_bool(0.5) { delta_fn(v, n) } else { hat_delta_fn(v, n) };
        &base + &other.scale(cz(if rng.gen_bool(0.5) { 1.0 } else { -1.0 }, 0.0))
    } else {
        base
    }
}

pub fn rz(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-7);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let round = |x: f64| (x * 4.0).round() / 4.0;
    for i in 0..20 {
        let n = rng.gen_range(3..=6u64);
        let p = SwapParams {
            t1: cz(round(rng.gen_range(-1.5..2.5)), 0.0),
            u1: cz(round(rng.gen_range(-1.5..2.5)), 0.0),
            t2: cz(round(rng.gen_range(-1.5..2.5)), 0.0),
            u2: cz(round(rng.gen_range(-1.5..2.5)), 0.0),
            alpha1: random_function(&mut rng, n),
            beta1: random_function(&mut rng, n),
            alpha2: random_function(&mut rng, n),
            beta2: random_function(&mut rng, n),
        };
        let s = cz(round(rng.gen_range(-1.0..2.0)), round(rng.gen_range(-1.0..1.0)));
        let id = format!("{i:02} N={n} t=({},{}) u=({},{}) s={s}", p.t1.re, p.t2.re, p.u1.re, p.u2.re);
        if let Some(r) = c.record(&id, rz_swap_check(&p, s, 1e-11)) {
            c.push(id, r.abs_err);
        }
    }
    let mut brute = Collector::new(1e-10);
    let small = [
        (3u64, 1.0, 0.0, 0.0, 2.0, delta_fn(1, 3), delta_fn(2, 3), delta_fn(0, 3), delta_fn(1, 3)),
        (4, 0.0, 1.0, 1.0, 0.0, delta_fn(1, 4), delta_fn(3, 4), delta_fn(2, 4), delta_fn(1, 4)),
        (3, 2.0, 0.0, 0.0, 1.0, delta_fn(2, 3), delta_fn(1, 3), delta_fn(1, 3), delta_fn(0, 3)),
    ];
    for (j, (n, t1, u1, t2, u2, a1, b1, a2, b2)) in small.into_iter().enumerate() {
        let p = SwapParams { t1: cz(t1, 0.0), u1: cz(u1, 0.0), t2: cz(t2, 0.0), u2: cz(u2, 0.0), alpha1: a1, beta1: b1, alpha2: a2, beta2: b2 };
        let id = format!("brute force s=0 instance {j} N={n}");
        let r = rz_swap_check(&p, cz(0.0, 0.0), 1e-13).and_then(|q| Ok(q.lhs.dist(&swap_brute_force_s0(&p, 200)?)));
        if let Some(r) = brute.record(&id, r) {
            brute.push(id, r);
        }
    }
    c.checks.extend(brute.checks);
    c.errors.extend(brute.errors);
    let mut r = c.finish(Suite::Rz, start);
    r.reference = format!("{}; thresholds 1e-7 (random draws), 1e-10 (four-fold sum at s=0)", r.reference);
    r
}

pub fn rankin() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-7);
    let cases: [(&str, fn() -> Result<(MellinPair, MellinPair)>, Complex64); 4] = [
        (
            "H1_{1,2}+H1_{1,-2} x G2_{1,3}-G2_{1,2} N=5",
            || Ok((pair(Family::H, 1, 1, 2, 5)?.add(&pair(Family::H, 1, 1, -2, 5)?)?, pair(Family::G, 2, 1, 3, 5)?.sub(&pair(Family::G, 2, 1, 2, 5)?)?)),
            cz(2.0, 0.0),
        ),
        ("H3_{1,2} x G1_{1,1} N=5", || Ok((pair(Family::H, 3, 1, 2, 5)?, pair(Family::G, 1, 1, 1, 5)?)), cz(1.5, 0.5)),
        ("G2_{1,1} x H1_{2,1} N=3", || Ok((pair(Family::G, 2, 1, 1, 3)?, pair(Family::H, 1, 2, 1, 3)?)), cz(2.5, 0.0)),
        ("H2_{1,0} x G2_{2,1} N=5", || Ok((pair(Family::H, 2, 1, 0, 5)?, pair(Family::G, 2, 2, 1, 5)?)), cz(1.8, -0.4)),
    ];
    for (name, make, s) in cases {
        let r = make().and_then(|(f, g)| rankin_integral_check(&f, &g, s));
        if let Some(r) = c.record(name, r) {
            c.push(format!("{name} s={s}"), r.residual);
            c.push(format!("{name} s=k"), r.residual_at_k);
        }
    }
    c.finish(Suite::Rankin, start)
}

pub fn fibers() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(0.0);
    for k in 0..=6u32 {
        for k1 in 0..=k {
            let k2 = k - k1;
            for right in [RightForm::Holomorphic, RightForm::Antiholomorphic] {
                for conj in [false, true] {
                    for a in 0..=k1 {
                        let id = format!("psi k1={k1} k2={k2} a={a} {right:?} conj={conj}");
                        if let Some(v) = c.record(&id, fiber_integral_psi(k1, k2, a, right, conj)) {
                            c.push(id, if v == fiber_lemma_psi(k1, k2, a, right, conj) { 0.0 } else { 1.0 });
                        }
                        let id = format!("omega k1={k1} k2={k2} l={a} {right:?} conj={conj}");
                        if let Some(v) = c.record(&id, fiber_integral_omega(k1, k2, a, right, conj)) {
                            c.push(id, if v == fiber_lemma_omega(k1, k2, a, right, conj) { 0.0 } else { 1.0 });
                        }
                    }
                }
            }
        }
    }
    c.finish(Suite::Fibers, start)
}

/// Five admissible random `(u1, u2)` per `(k1, k2, N)` with `k <= 4`, `N in {3,5,7}`.
pub fn regulator_sweep(opts: &SuiteOptions) -> Vec<RegulatorInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for k in 0..=4u32 {
        for k1 in 0..=k {
            let k2 = k - k1;
            for n in [3u64, 5, 7] {
                let mut drawn = 0;
                while drawn < 5 {
                    let m = n as i64;
                    let u1 = [rng.gen_range(0..m), rng.gen_range(0..m)];
                    let u2 = [rng.gen_range(0..m), rng.gen_range(0..m)];
                    let Ok(input) = RegulatorInput::new(k1, k2, n, u1, u2) else { continue };
                    drawn += 1;
                    if opts.k1.map_or(true, |x| x == k1) && opts.k2.map_or(true, |x| x == k2) && opts.n.map_or(true, |x| x == n) {
                        out.push(input);
                    }
                }
            }
        }
    }
    out
}

fn label(i: &RegulatorInput) -> String {
    format!("k=({},{}) N={} u1=({},{}) u2=({},{})", i.k1, i.k2, i.n, i.u1[0], i.u1[1], i.u2[0], i.u2[1])
}

pub fn cancellation(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-8);
    for input in regulator_sweep(opts) {
        let id = label(&input);
        if let Some(map) = c.record(&id, cancellation_residuals(&input)) {
            for (name, r) in map {
                c.push(format!("{id} {name}"), r);
            }
        }
    }
    c.finish(Suite::Cancellation, start)
}

/// Runs `f` over `items` on all available cores; results keep the input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("result lock")[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every item evaluated")).collect()
}

pub fn theorem(opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-7);
    let inputs = regulator_sweep(opts);
    let reports = parallel_map(&inputs, theorem_both_sides);
    for (input, r) in inputs.iter().zip(reports) {
        let id = label(input);
        if let Some(r) = c.record(&id, r) {
            c.push(id, r.residual);
        }
    }
    // u2 = (0, b2): the series inside A vanishes identically
    let degenerate: Vec<RegulatorInput> = [(1u32, 0u32, 5u64, [1i64, 2i64], [0i64, 1i64]), (2, 1, 5, [1, 2], [0, 3]), (1, 2, 7, [3, 1], [0, 2])]
        .into_iter()
        .filter_map(|(k1, k2, n, u1, u2)| RegulatorInput::new(k1, k2, n, u1, u2).ok())
        .collect();
    for input in degenerate {
        let id = format!("degenerate {} series of A is zero", label(&input));
        if let Some(z) = c.record(&id, a_series_is_zero(&input)) {
            c.push(id, if z { 0.0 } else { 1.0 });
        }
    }
    c.finish(Suite::Theorem, start)
}

pub fn preswap() -> SuiteReport {
    let start = Instant::now();
    let mut c = Collector::new(1e-6);
    let cases = [
        (0u32, 0u32, [1i64, 2i64], [2i64, 1i64], -6.0),
        (1, 0, [2, 3], [1, 2], -7.0),
        (0, 1, [1, 0], [2, 3], -6.0),
        (0, 1, [2, 1], [3, 4], -5.5),
    ];
    for (k1, k2, u1, u2, s) in cases {
        let Some(input) = c.record("input", RegulatorInput::new(k1, k2, 5, u1, u2)) else { continue };
        for shift in [0.0, -1.0] {
            let sv = cz(s + shift, 0.0);
            let id = format!("{} s={}", label(&input), sv.re);
            if let Some(r) = c.record(&id, pre_swap_integral_check(&input, sv, 1e-10)) {
                c.push(id, r.residual / r.rhs.abs().max(1.0));
            }
        }
    }
    c.finish(Suite::Preswap, start)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_pieces() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(bernoulli_poly_oracle(2, &rat(1, 4)), rat(-1, 48));
        // Li_{-1}(-1) = -1/4
        assert_eq!(polylog_neg(1, 1, 2).as_rational(), Some(rat(-1, 4)));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Hurwitz, Suite::Constants, Suite::Fibers] {
            let r = run(s, &SuiteOptions::default());
            assert!(r.passed, "{r:?}");
        }
    }
}
