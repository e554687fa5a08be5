use std::f64::consts::PI;

use nlcs::dynamics::wronskian;
use nlcs::ladder::normal_word;
use nlcs::observables::static_lowering;
use nlcs::oracle::{oracle_g2, oracle_variances};
use nlcs::{
    bogoliubov, build_state, epsilon_ode, expect_word, g2, squeezing_fg, variance_direct, FrameAtTime, MomentTable,
    Nonlinearity, Parity, Truncation,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn ion(eta: f64) -> Nonlinearity {
    Nonlinearity::trapped_ion(eta).unwrap()
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Any), Just(Parity::Even), Just(Parity::Odd)]
}

fn alpha() -> impl Strategy<Value = Complex64> {
    (0.2f64..1.5, 0.0..2.0 * PI).prop_map(|(r, phi)| Complex64::from_polar(r, phi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn states_are_normalised_and_parity_pure(a in alpha(), eta in 0.0f64..0.3, p in parity()) {
        let s = build_state(p, a, &ion(eta), Truncation::default()).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-12);
        for (n, c) in s.coeffs.iter().enumerate() {
            if !p.admits(n) {
                prop_assert_eq!(*c, Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn moments_rotate_with_the_phase_of_alpha(
        r in 0.2f64..1.5,
        eta in 0.0f64..0.3,
        p in parity(),
        phi in prop_oneof![Just(PI / 3.0), Just(PI / 2.0), 0.0..2.0 * PI],
    ) {
        let nl = ion(eta);
        let base = MomentTable::new(&build_state(p, Complex64::new(r, 0.0), &nl, Truncation::default()).unwrap(), 4);
        let turned = MomentTable::new(&build_state(p, Complex64::from_polar(r, phi), &nl, Truncation::default()).unwrap(), 4);
        for j in 0..=4 {
            for k in 0..=4 - j {
                let expected = base.get(j, k).unwrap() * Complex64::from_polar(1.0, (k as f64 - j as f64) * phi);
                let got = turned.get(j, k).unwrap();
                prop_assert!((got - expected).norm() <= 1e-12 * expected.norm().max(1.0));
            }
        }
    }

    #[test]
    fn parity_states_are_symmetric_superpositions(r in 0.2f64..1.5, eta in 0.0f64..0.3, odd in any::<bool>()) {
        let nl = ion(eta);
        let a = Complex64::new(r, 0.0);
        let n = build_state(Parity::Any, a, &nl, Truncation::default()).unwrap().n_trunc + 2;
        let plus = build_state(Parity::Any, a, &nl, Truncation::Fixed(n)).unwrap();
        let minus = build_state(Parity::Any, -a, &nl, Truncation::Fixed(n)).unwrap();
        let (p, sign) = if odd { (Parity::Odd, -1.0) } else { (Parity::Even, 1.0) };
        let target = build_state(p, a, &nl, Truncation::Fixed(n)).unwrap();
        let mix: Vec<Complex64> = plus.coeffs.iter().zip(&minus.coeffs).map(|(x, y)| x + y * sign).collect();
        let norm = mix.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for (m, t) in mix.iter().zip(&target.coeffs) {
            prop_assert!((m / norm - t).norm() <= 1e-12);
        }
    }

    #[test]
    fn moment_table_is_hermitian(a in alpha(), eta in 0.0f64..0.3, p in parity()) {
        let s = build_state(p, a, &ion(eta), Truncation::default()).unwrap();
        let t = MomentTable::new(&s, 4);
        for j in 0..=4 {
            for k in 0..=4 - j {
                prop_assert!((t.get(j, k).unwrap() - t.get(k, j).unwrap().conj()).norm() <= 1e-13);
                prop_assert!((t.get(j, k).unwrap() - expect_word(&s, &normal_word(j, k))).norm() <= 1e-13);
            }
        }
    }

    #[test]
    fn parity_states_have_zero_field_mean(r in 0.2f64..1.5, eta in 0.0f64..0.3, odd in any::<bool>(), t in 0.0f64..20.0, kappa in 0.0f64..0.05) {
        let p = if odd { Parity::Odd } else { Parity::Even };
        let s = build_state(p, Complex64::new(r, 0.0), &ion(eta), Truncation::default()).unwrap();
        let mean = MomentTable::new(&s, 4).expect_sum(&static_lowering(&FrameAtTime::analytic(t, kappa)));
        prop_assert_eq!(mean, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bogoliubov_norm_matches_wronskian(er in -3.0f64..3.0, ei in -3.0f64..3.0, dr in -3.0f64..3.0, di in -3.0f64..3.0) {
        let (e, ed) = (Complex64::new(er, ei), Complex64::new(dr, di));
        let (u, v) = bogoliubov(e, ed);
        let lhs = u.norm_sqr() - v.norm_sqr();
        let rhs = (Complex64::new(0.0, 0.5) * (e * ed.conj() - ed * e.conj())).re;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + e.norm_sqr() + ed.norm_sqr()));
        prop_assert!((wronskian(e, ed) - rhs).abs() <= 1e-12 * (1.0 + e.norm_sqr() + ed.norm_sqr()));
    }

    #[test]
    fn series_and_matrix_observables_agree(a in alpha(), eta in 0.0f64..0.3, p in parity(), t in 0.0f64..20.0, kappa in 0.0f64..0.1) {
        let s = build_state(p, a, &ion(eta), Truncation::default()).unwrap();
        let table = MomentTable::new(&s, 4);
        let frame = FrameAtTime::analytic(t, kappa);
        let dim = s.n_trunc + 8;
        let series = g2(&table, &frame).unwrap();
        let matrix = oracle_g2(&s, &frame, dim).unwrap();
        prop_assert!((series - matrix).abs() <= 1e-10 * matrix.abs());
        let (v1, v2) = variance_direct(&table, &frame);
        let (o1, o2) = oracle_variances(&s, &frame, dim).unwrap();
        prop_assert!((v1 - o1).abs() <= 1e-10 * o1 && (v2 - o2).abs() <= 1e-10 * o2);
    }

    #[test]
    fn uncertainty_floor_holds(a in alpha(), eta in 0.0f64..0.3, p in parity(), t in 0.0f64..20.0, kappa in 0.0f64..0.1) {
        let s = build_state(p, a, &ion(eta), Truncation::default()).unwrap();
        let (f, g) = squeezing_fg(&MomentTable::new(&s, 4), &FrameAtTime::analytic(t, kappa));
        prop_assert!(f * g >= 0.25 - 10.0 * kappa);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ode_conserves_the_wronskian(
        kappa in prop_oneof![Just(0.0), Just(0.01), Just(0.05)],
        tol in prop_oneof![Just(1e-8), Just(1e-10)],
        t_end in 1.0f64..20.0,
    ) {
        let sol = epsilon_ode(t_end, kappa, tol).unwrap();
        for d in sol.wronskian_defects() {
            prop_assert!(d <= 10.0 * tol);
        }
    }
}
