//! Property tests over randomized inputs.

use modreg::cyclotomic::Cyclo;
use modreg::eisenstein::{build_series, hat_zeta_nonpositive, EisensteinSpec, Family};
use modreg::frac::{rat, FractionModOne, Rational};
use modreg::lfunc::{catalog_pair, completed_lambda, pair_truncation};
use modreg::qseries::{qs_add, qs_mul, Coeff, FourierQSeries};
use modreg::regulator::RegulatorInput;
use modreg::rz::{s_eval, ArithmeticFunctionModN, DoubleSeriesSpec};
use modreg::zeta::{hurwitz_nonpositive, hurwitz_zeta, periodic_zeta};
use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

const ORDERS: [u64; 5] = [1, 3, 4, 5, 12];

fn cyclo() -> impl Strategy<Value = Cyclo> {
    (prop::sample::select(&ORDERS[..]), prop::collection::vec((-6i128..7, 1i128..5), 12)).prop_map(|(n, c)| {
        let poly: Vec<Rational> = c.into_iter().take(n as usize).map(|(p, q)| rat(p, q)).collect();
        Cyclo::from_powers(n, poly)
    })
}

fn series(denom: u64) -> impl Strategy<Value = FourierQSeries> {
    (prop::collection::vec((0u64..24, cyclo()), 0..8), 12u64..24).prop_map(move |(terms, trunc)| {
        let mut f = FourierQSeries::new(denom, trunc, 5, 2);
        for (e, c) in terms {
            f.add_to(e, Coeff::Exact(c));
        }
        f
    })
}

fn exact_diff_zero(f: &FourierQSeries, g: &FourierQSeries) -> bool {
    let t = f.truncation().min(g.truncation());
    assert_eq!(f.denom(), g.denom());
    (0..t).all(|e| {
        let (a, b) = (f.coeff(e), g.coeff(e));
        (a.exact().unwrap().clone() - b.exact().unwrap().clone()).is_zero()
    })
}

fn zeta_n_complex(x: FractionModOne, s: Complex64, terms: u64) -> Complex64 {
    // direct partial sum plus the leading Euler-Maclaurin tail
    let a = if x.is_zero() { 1.0 } else { x.to_f64() };
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..terms {
        sum += (-s * (m as f64 + a).ln()).exp();
    }
    let m = terms as f64 + a;
    sum + (-(s - 1.0) * m.ln()).exp() / (s - 1.0) + 0.5 * (-s * m.ln()).exp()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn fractions_are_reduced(num in -500i64..500, den in 1i64..200) {
        let x = FractionModOne::new(num, den).unwrap();
        let (p, q) = (x.numerator(), x.denominator());
        prop_assert!(0 <= p && p < q);
        prop_assert!(p == 0 || p.gcd(&q) == 1);
        prop_assert_eq!(x.to_rational(), {
            let r = rat(num as i128, den as i128);
            r - r.floor()
        });
    }

    #[test]
    fn hurwitz_parity_at_nonpositive_integers(n in 1u32..9, a in 0i64..30, m in 2u64..13) {
        let x = FractionModOne::from_residue(a, m);
        prop_assume!(!(n == 1 && x.is_zero()));
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(hurwitz_nonpositive(x, n), hurwitz_nonpositive(x.neg(), n) * sign);
    }

    #[test]
    fn hat_zeta_parity(k in 1u32..8, b in 0i64..20, m in 3u64..9) {
        let lhs = hat_zeta_nonpositive(-b, m, k);
        if k == 1 {
            // at s = 0 only the odd part flips: zh(x,0) + zh(-x,0) = -1
            let sum = lhs + hat_zeta_nonpositive(b, m, 1);
            prop_assert!(sum == Cyclo::from_int(-1));
        } else {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            prop_assert!(lhs == hat_zeta_nonpositive(b, m, k).scale(&rat(sign, 1)));
        }
    }

    #[test]
    fn cyclotomic_ring_axioms(x in cyclo(), y in cyclo(), z in cyclo()) {
        prop_assert!(x.clone() * y.clone() == y.clone() * x.clone());
        prop_assert!((x.clone() * y.clone()) * z.clone() == x.clone() * (y.clone() * z.clone()));
        prop_assert!(x.clone() * (y.clone() + z.clone()) == x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert!((x.clone() * y.clone()).conj() == x.conj() * y.conj());
        let p = (x.clone() * y.clone()).to_complex();
        prop_assert!((p - x.to_complex() * y.to_complex()).norm() < 1e-9 * (1.0 + p.norm()));
    }

    #[test]
    fn series_ring_axioms(f in series(1), g in series(2), h in series(1)) {
        prop_assert!(exact_diff_zero(&qs_mul(&f, &g), &qs_mul(&g, &f)));
        prop_assert!(exact_diff_zero(&qs_mul(&qs_mul(&f, &g), &h), &qs_mul(&f, &qs_mul(&g, &h))));
        prop_assert!(exact_diff_zero(&qs_mul(&f, &qs_add(&g, &h)), &qs_add(&qs_mul(&f, &g), &qs_mul(&f, &h))));
        prop_assert!(exact_diff_zero(&qs_add(&f, &g), &qs_add(&g, &f)));
    }

    #[test]
    fn series_evaluation_is_multiplicative(f in series(1), g in series(2), re in -1.0f64..1.0, im in 0.5f64..2.0) {
        let tau = Complex64::new(re, im);
        let fg = qs_mul(&f, &g).eval(tau).unwrap();
        let prod = f.eval(tau).unwrap() * g.eval(tau).unwrap();
        prop_assert!(fg.dist(&prod) <= fg.err + prod.err + 1e-12 * (1.0 + fg.abs()));
    }

    #[test]
    fn doubling_truncation_stays_within_tail_bound(
        fam in prop::sample::select(vec![Family::E, Family::F, Family::G, Family::H]),
        k in 1u32..6, a in 0i64..5, b in 0i64..5, re in -0.5f64..0.5, im in 0.5f64..1.5,
    ) {
        let Ok(spec) = EisensteinSpec::new(fam, k, a, b, 5) else { return Ok(()); };
        let tau = Complex64::new(re, im);
        let short = build_series(&spec, 60).unwrap().eval(tau).unwrap();
        let long = build_series(&spec, 120).unwrap().eval(tau).unwrap();
        prop_assert!(short.dist(&long) <= short.err + 1e-12 * (1.0 + long.abs()),
            "moved {} with bound {}", short.dist(&long), short.err);
    }

    #[test]
    fn admissibility_matches_hypotheses(
        k1 in 0u32..4, k2 in 0u32..4, n in 1u64..8,
        u1 in prop::array::uniform2(-8i64..8), u2 in prop::array::uniform2(-8i64..8),
    ) {
        let r = |x: i64| x.rem_euclid(n as i64);
        let ok_u = |k: u32, u: [i64; 2]| match k {
            0 => r(u[0]) != 0 || r(u[1]) != 0,
            1 => r(u[1]) != 0,
            _ => true,
        };
        let expected = n >= 3 && ok_u(k1, u1) && ok_u(k2, u2);
        prop_assert_eq!(RegulatorInput::new(k1, k2, n, u1, u2).is_ok(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn zeta_matches_partial_sums(a in 0i64..7, re in 1.6f64..3.0, im in -3.0f64..3.0) {
        let x = FractionModOne::from_residue(a, 7);
        let s = Complex64::new(re, im);
        let v = hurwitz_zeta(x, s).unwrap();
        let direct = zeta_n_complex(x, s, 200_000);
        // the truncated Euler-Maclaurin tail is O(M^-re) with M = 2e5
        prop_assert!(v.err.is_finite() && v.err >= 0.0);
        prop_assert!((v.z() - direct).norm() <= v.err + 1e-8, "residual {}", (v.z() - direct).norm());
        // the periodic zeta at x has the same modulus bound as zeta(s)
        let p = periodic_zeta(x, s).unwrap();
        prop_assert!(p.abs() <= hurwitz_zeta(FractionModOne::zero(), Complex64::new(re, 0.0)).unwrap().abs() + 1e-9);
    }

    #[test]
    fn double_series_conjugation_and_bilinearity(
        ua in -4i64..4, ub in -4i64..4, uc in -4i64..4, t in 0u32..3, u in 0u32..3,
        c in (-2.0f64..2.0, -2.0f64..2.0), y in 0.3f64..2.0,
    ) {
        let n = 5;
        let hat = |v: i64| modreg::rz::hat_delta_fn(v, n);
        let alpha = hat(ua);
        let beta = modreg::rz::delta_fn(ub, n);
        let gamma = hat(uc);
        let spec = DoubleSeriesSpec::real(t as f64, u as f64, alpha.clone(), beta.clone()).unwrap();
        let conj = DoubleSeriesSpec::real(t as f64, u as f64, alpha.conj(), beta.conj()).unwrap();
        for inverted in [false, true] {
            let v = s_eval(&spec, y, inverted, 400).unwrap();
            let w = s_eval(&conj, y, inverted, 400).unwrap();
            prop_assert!(v.conj().dist(&w) < 1e-12 * (1.0 + v.abs()));
        }
        let c = Complex64::new(c.0, c.1);
        let mixed: ArithmeticFunctionModN = &alpha.scale(c) + &gamma;
        let lhs = s_eval(&DoubleSeriesSpec::real(t as f64, u as f64, mixed, beta.clone()).unwrap(), y, false, 400).unwrap();
        let a = s_eval(&spec, y, false, 400).unwrap();
        let g = s_eval(&DoubleSeriesSpec::real(t as f64, u as f64, gamma, beta).unwrap(), y, false, 400).unwrap();
        let rhs = a.scale(c) + g;
        prop_assert!(lhs.dist(&rhs) < 1e-10 * (1.0 + rhs.abs()));
    }

    #[test]
    fn lambda_is_regularized_only_at_poles(
        fam in prop::sample::select(vec![Family::G, Family::H]),
        k in 1u32..5, a in 0i64..5, b in 0i64..5, re in 0.3f64..4.0, im in 0.2f64..3.0,
    ) {
        let Ok(spec) = EisensteinSpec::new(fam, k, a, b, 5) else { return Ok(()); };
        let pair = catalog_pair(&spec, pair_truncation(25, k + 1)).unwrap();
        let v = completed_lambda(&pair, Complex64::new(re, im)).unwrap();
        prop_assert!(!v.regularized);
        prop_assert!(v.value.err.is_finite() && v.value.err >= 0.0);
    }
}
