use std::f64::consts::TAU;

use carath_core::functionals::{a_delsarte, a_det, a_herglotz, bound_a, bound_livingston, livingston};
use carath_core::herglotz::{coefficients, evaluate, CoeffSeries, HerglotzMeasure};
use carath_core::schwarz::self_map_from_measure;
use carath_core::series::{multiply, p_from_phi, phi_from_p, reciprocal};
use carath_core::tolerance::agree;
use num_complex::Complex64;
use proptest::prelude::*;

fn measure() -> impl Strategy<Value = HerglotzMeasure> {
    prop::collection::vec((0.0..TAU, 0.01f64..1.0), 1..=8).prop_map(|atoms| {
        let (angles, weights): (Vec<f64>, Vec<f64>) = atoms.into_iter().unzip();
        let total: f64 = weights.iter().sum();
        let masses: Vec<f64> = weights.iter().map(|w| w / total).collect();
        HerglotzMeasure::from_parts(&angles, &masses).unwrap()
    })
}

fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..range, -range..range).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn coefficients_bounded(mu in measure()) {
        let p = coefficients(&mu, 12);
        prop_assert_eq!(p[0], Complex64::new(1.0, 0.0));
        for n in 1..=12 {
            prop_assert!(p[n].norm() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn positive_real_part(mu in measure(), r in 0.0f64..0.99, t in 0.0..TAU) {
        let v = evaluate(&mu, Complex64::from_polar(r, t)).unwrap();
        prop_assert!(v.re > 0.0);
    }

    #[test]
    fn conjugate_measure_conjugates_coefficients(mu in measure()) {
        let p = coefficients(&mu, 8);
        let q = coefficients(&mu.conjugate(), 8);
        for n in 0..=8 {
            prop_assert!((p[n].conj() - q[n]).norm() <= 1e-13);
        }
    }

    #[test]
    fn rotation_scales_coefficients(mu in measure(), by in 0.0..TAU) {
        let p = coefficients(&mu, 6);
        let q = coefficients(&mu.rotate(by), 6);
        for n in 0..=6 {
            prop_assert!((p[n] * Complex64::from_polar(1.0, n as f64 * by) - q[n]).norm() <= 1e-13);
        }
    }

    #[test]
    fn reciprocal_identity(tail in prop::collection::vec(complex(1.0), 1..10)) {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        c.extend(tail);
        let n = c.len() - 1;
        let a = CoeffSeries::new(c).unwrap();
        let prod = multiply(&a, &reciprocal(&a, n).unwrap(), n);
        prop_assert!((prod[0] - 1.0).norm() <= 1e-12);
        for j in 1..=n {
            prop_assert!(prod[j].norm() <= 1e-9);
        }
    }

    #[test]
    fn mobius_round_trip(mu in measure()) {
        let p = coefficients(&mu, 6);
        let back = p_from_phi(&phi_from_p(&p, 6).unwrap(), 6).unwrap();
        for j in 0..=6 {
            prop_assert!((p[j] - back[j]).norm() <= 1e-12);
        }
    }

    #[test]
    fn schwarz_coefficients(mu in measure()) {
        let a = self_map_from_measure(&mu, 3);
        prop_assert!(a[0].norm() <= 1e-15);
        prop_assert!(a[1].norm() <= 1.0 + 1e-12);
        prop_assert!(a[2].norm() <= 1.0 - a[1].norm_sqr() + 1e-9);
    }

    #[test]
    fn livingston_bounded(mu in measure(), w in complex(3.0), n in 2usize..9, k_seed in 0usize..64) {
        let k = 1 + k_seed % (n - 1);
        let p = coefficients(&mu, n);
        prop_assert!(livingston(&p, k, n, w).unwrap().norm() <= bound_livingston(w) + 1e-9);
    }

    #[test]
    fn determinant_bounded_and_routes_agree(mu in measure(), w in complex(2.0), k in 1usize..5, n in 1usize..7) {
        let p = coefficients(&mu, n + k);
        let det = a_det(&p, k, n, w).unwrap();
        prop_assert!(det.norm() <= bound_a(k, w) + 1e-9);
        prop_assert!(agree(det, a_herglotz(&mu, k, n, w).unwrap(), 1e-10));
        if n > k {
            prop_assert!(agree(det, a_delsarte(&p, k, n, w).unwrap(), 1e-10));
        }
    }
}
