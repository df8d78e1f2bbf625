use canonical_weyl::specfun::{bessel_frak, gamma_complex, kummer_m};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn away_from_poles(z: Complex64) -> bool {
    z.im.abs() > 0.05 || (z.re - z.re.round()).abs() > 0.05 || z.re.round() > 0.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gamma_recurrence(re in -20.0f64..19.0, im in -15.0f64..15.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() <= 20.0 && away_from_poles(z) && away_from_poles(z + 1.0));
        let g1 = gamma_complex(z + 1.0).unwrap();
        let g0 = gamma_complex(z).unwrap();
        prop_assert!((g1 - z * g0).norm() / g1.norm() <= 1e-11, "z={z}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gamma_reflection(re in -6.0f64..6.0, im in -4.0f64..4.0) {
        let z = Complex64::new(re, im);
        prop_assume!(im.abs() > 0.05 || (re - re.round()).abs() > 0.05);
        let one = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap() * (PI * z).sin() / PI;
        prop_assert!((one - 1.0).norm() <= 1e-10, "z={z}: {one}");
    }

    #[test]
    fn kummer_transformation(
        ar in -3.0f64..3.0, ai in -3.0f64..3.0,
        br in 0.3f64..4.0, bi in -2.0f64..2.0,
        r in 0.0f64..100.0, phi in -PI..PI,
    ) {
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        let x = Complex64::from_polar(r, phi);
        let lhs = kummer_m(a, b, x).unwrap();
        let rhs = x.exp() * kummer_m(b - a, b, -x).unwrap();
        let scale = lhs.norm().max(rhs.norm()).max(1e-300);
        prop_assert!((lhs - rhs).norm() / scale <= 1e-10, "a={a} b={b} x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn bessel_closed_forms(x in 0.1f64..50.0) {
        let z = Complex64::new(x, 0.0);
        prop_assert!((bessel_frak(0.5, z).unwrap() - x.sin() / x).norm() <= 1e-10);
        prop_assert!((bessel_frak(-0.5, z).unwrap() - x.cos()).norm() <= 1e-10);
        prop_assert_eq!(bessel_frak(1.3, Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn conjugate_symmetry(re in 0.1f64..8.0, im in -8.0f64..8.0, a in -2.0f64..2.0, b in 0.2f64..3.0, nu in -0.9f64..3.0) {
        let z = Complex64::new(re, im);
        let g = gamma_complex(z).unwrap();
        prop_assert!((gamma_complex(z.conj()).unwrap() - g.conj()).norm() <= 1e-13 * g.norm());
        let (ar, br) = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
        let m = kummer_m(ar, br, z).unwrap();
        prop_assert!((kummer_m(ar, br, z.conj()).unwrap() - m.conj()).norm() <= 1e-12 * m.norm().max(1.0));
        let j = bessel_frak(nu, z).unwrap();
        prop_assert!((bessel_frak(nu, z.conj()).unwrap() - j.conj()).norm() <= 1e-12 * j.norm().max(1.0));
    }
}
