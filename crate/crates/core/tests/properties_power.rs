use canonical_weyl::hamiltonian::Hamiltonian;
use canonical_weyl::power_model::{arg_omega, closed_form_q, q_power_eval, reparam_equivalent, PowerData};
use canonical_weyl::weyl_numeric::weyl_coefficient;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

fn full(r1: f64, r2: f64, k1: f64, k2: f64, s: f64) -> PowerData {
    PowerData::new(r1, r2, k1, k2, s * (k1 * k2).sqrt()).unwrap()
}

fn data_strategy() -> impl Strategy<Value = PowerData> {
    (0.3f64..3.0, 0.3f64..3.0, 0.2f64..4.0, 0.2f64..4.0, -1.0f64..=1.0)
        .prop_map(|(r1, r2, k1, k2, s)| full(r1, r2, k1, k2, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn omega_lies_in_sector(d in data_strategy()) {
        let law = closed_form_q(&d).unwrap();
        prop_assert!(law.omega.arg().abs() <= FRAC_PI_2 * (1.0 - law.alpha.abs()) + 1e-12, "{law:?}");
    }

    #[test]
    fn arg_decreasing_and_odd(r1 in 0.3f64..3.0, r2 in 0.3f64..3.0, k1 in 0.2f64..4.0, k2 in 0.2f64..4.0) {
        let args: Vec<f64> = (0..100)
            .map(|j| arg_omega(&full(r1, r2, k1, k2, -1.0 + 2.0 * j as f64 / 99.0)).unwrap())
            .collect();
        for p in args.windows(2) {
            prop_assert!(p[1] < p[0], "{} then {}", p[0], p[1]);
        }
        for j in 0..100 {
            prop_assert!((args[j] + args[99 - j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn boundary_limit_is_continuous(r1 in 0.3f64..3.0, r2 in 0.3f64..3.0, k1 in 0.2f64..4.0, k2 in 0.2f64..4.0, up in any::<bool>()) {
        prop_assume!((r1 - r2).abs() > 1e-3);
        let sign = if up { 1.0 } else { -1.0 };
        let limit = closed_form_q(&full(r1, r2, k1, k2, sign)).unwrap().omega;
        let gaps: Vec<f64> = (1..=12)
            .map(|k| {
                let w = closed_form_q(&full(r1, r2, k1, k2, sign * (1.0 - 10f64.powi(-k)))).unwrap().omega;
                (w - limit).norm() / limit.norm()
            })
            .collect();
        for p in gaps.windows(2) {
            // until the Γ-ratio modulus hits its rounding floor
            prop_assert!(p[1] <= p[0] || p[1] <= 1e-9, "{gaps:?}");
        }
        prop_assert!(gaps[11] <= 1e-8, "{gaps:?}");
    }

    #[test]
    fn reparametrised_data_are_equivalent(d in data_strategy(), beta in 0.3f64..3.0, c in 0.2f64..5.0, bump in 1e-3f64..0.5) {
        let e = PowerData::with_rho3(
            d.rho().map(|r| beta * r),
            [
                beta * c.powf(d.rho1) * d.kappa1,
                beta * c.powf(d.rho2) * d.kappa2,
                beta * c.powf(d.rho3) * d.kappa3,
            ],
        )
        .unwrap();
        let (b, cc) = reparam_equivalent(&d, &e).expect("equivalent pair");
        prop_assert!((b - beta).abs() <= 1e-12 * beta && (cc - c).abs() <= 1e-9 * c);
        let (l1, l2) = (closed_form_q(&d).unwrap(), closed_form_q(&e).unwrap());
        prop_assert!((l1.alpha - l2.alpha).abs() <= 1e-12);
        prop_assert!((l1.omega - l2.omega).norm() <= 1e-10 * l1.omega.norm(), "{l1:?} vs {l2:?}");
        let mut broken = e;
        broken.kappa2 *= 1.0 + bump;
        broken.kappa3 = broken.kappa3.clamp(-(broken.kappa1 * broken.kappa2).sqrt(), (broken.kappa1 * broken.kappa2).sqrt());
        prop_assert!(reparam_equivalent(&d, &broken).is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn numeric_matches_closed_form(r1 in 0.5f64..2.5, r2 in 0.5f64..2.5, k1 in 0.5f64..2.0, k2 in 0.5f64..2.0, s in -0.9f64..0.9) {
        let d = full(r1, r2, k1, k2, s);
        let law = closed_form_q(&d).unwrap();
        let h = Hamiltonian::power(d).unwrap();
        for z in [Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0), Complex64::new(1.0, 1.0), Complex64::new(-1.0, 2.0)] {
            let want = q_power_eval(&law, z);
            let got = weyl_coefficient(&h, z, 1e-8, 1e6).unwrap();
            prop_assert!((got - want).norm() <= 1e-5 * want.norm(), "z={z}: {got} vs {want}");
        }
    }
}
