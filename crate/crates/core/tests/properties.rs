use std::f64::consts::PI;

use approx::assert_relative_eq;
use proptest::prelude::*;
use sphere_green::fourier::{fourier_sum_s2, g2_direct};
use sphere_green::fundsol::greens_from_angle;
use sphere_green::potentials::{potential_2disc, potential_3ball};
use sphere_green::specfun::elliptic_k;
use sphere_green::{gegenbauer_sum, greens, SpherePoint};

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..40 {
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elliptic_k_matches_agm(k in 0.0f64..0.999) {
        let want = PI / (2.0 * agm(1.0, (1.0 - k * k).sqrt()));
        assert_relative_eq!(elliptic_k(k).unwrap(), want, max_relative = 1e-13);
    }

    #[test]
    fn greens_is_symmetric(d in 2usize..7, t in 0.1f64..3.0, tp in 0.1f64..3.0, ph in -3.0f64..3.0) {
        let mids = vec![1.0; d - 2];
        let p = SpherePoint::new(1.5, t, mids.clone(), 0.0).unwrap();
        let q = SpherePoint::new(1.5, tp, mids, ph).unwrap();
        prop_assume!(sphere_green::geodesic_distance(&p, &q).unwrap().theta > 1e-3);
        let a = greens(d, 1.5, &p, &q).unwrap().value;
        let b = greens(d, 1.5, &q, &p).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-14);
    }

    #[test]
    fn greens_decreases_with_angle(d in 2usize..8, t in 0.05f64..3.0, dt in 0.01f64..0.1) {
        prop_assume!(t + dt < PI);
        let r = 2.0;
        prop_assert!(greens_from_angle(d, r, t).unwrap() > greens_from_angle(d, r, t + dt).unwrap());
    }

    #[test]
    fn s2_fourier_sum_reconstructs(t in 0.2f64..0.6, tp in 1.0f64..1.4, psi in 0.0f64..PI) {
        // both the direct and antipodal ratios stay below 0.6
        let sum = fourier_sum_s2(t, tp, psi, 200).unwrap();
        assert_relative_eq!(sum, g2_direct(t, tp, psi).unwrap(), epsilon = 1e-10);
    }

    #[test]
    fn cap_potentials_continuous(t0 in 0.1f64..2.8, r in 0.5f64..5.0) {
        let h = 1e-9;
        let a = potential_2disc(1.0, r, t0, t0 - h).unwrap().value;
        let b = potential_2disc(1.0, r, t0, t0 + h).unwrap().value;
        prop_assert!((a - b).abs() < 1e-6 * (1.0 + a.abs()));
        let a = potential_3ball(1.0, r, t0, t0 - h).unwrap().value;
        let b = potential_3ball(1.0, r, t0, t0 + h).unwrap().value;
        prop_assert!((a - b).abs() < 1e-6 * (1.0 + a.abs()));
    }
}

#[test]
fn gegenbauer_matches_closed_form_s4() {
    let p = SpherePoint::new(1.0, 0.6, vec![0.8, 1.2], 0.3).unwrap();
    let q = SpherePoint::new(1.0, 1.5, vec![1.4, 0.7], 2.0).unwrap();
    let g = greens(4, 1.0, &p, &q).unwrap().value;
    assert_relative_eq!(gegenbauer_sum(4, 1.0, &p, &q, 120).unwrap(), g, max_relative = 1e-8);
}
