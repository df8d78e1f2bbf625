use canonical_weyl::hamiltonian::{
    convergence_distance, trace_normalize, Hamiltonian, Perturbation, RapidData, RapidEntry, Segment, Sym2,
};
use canonical_weyl::power_model::PowerData;
use proptest::prelude::*;

fn power_strategy() -> impl Strategy<Value = PowerData> {
    (0.3f64..3.0, 0.3f64..3.0, 0.2f64..4.0, 0.2f64..4.0, -1.0f64..1.0).prop_map(|(r1, r2, k1, k2, s)| {
        PowerData::new(r1, r2, k1, k2, s * (k1 * k2).sqrt()).unwrap()
    })
}

fn segment_strategy() -> impl Strategy<Value = Segment> {
    (0.05f64..2.0, 0.0f64..3.0, 0.0f64..3.0, -1.0f64..1.0)
        .prop_filter("trace must be positive", |(_, a, b, _)| a + b > 0.1)
        .prop_map(|(len, a, b, s)| Segment {
            len,
            h: Sym2::new(a, b, s * (a * b).sqrt()),
        })
}

fn piecewise_strategy() -> impl Strategy<Value = Hamiltonian> {
    prop::collection::vec(segment_strategy(), 1..5).prop_map(|mut segs| {
        segs.last_mut().unwrap().len = f64::INFINITY;
        Hamiltonian::piecewise(segs).unwrap()
    })
}

fn any_hamiltonian() -> impl Strategy<Value = Hamiltonian> {
    prop_oneof![
        power_strategy().prop_map(|d| Hamiltonian::power(d).unwrap()),
        (power_strategy(), -0.5f64..0.5).prop_map(|(d, a)| {
            Hamiltonian::perturbed_power(d, Perturbation::LogDecay { amplitude: a }).unwrap()
        }),
        (0.5f64..2.0, 0.5f64..2.0, 0.5f64..2.0, any::<bool>()).prop_map(|(rho, kappa, beta, upper)| {
            Hamiltonian::rapid(RapidData {
                rapid_entry: if upper { RapidEntry::Upper } else { RapidEntry::Lower },
                rho,
                kappa,
                beta,
            })
            .unwrap()
        }),
        piecewise_strategy(),
    ]
}

const GRID: [f64; 8] = [1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn primitives_monotone_and_cauchy_schwarz(h in any_hamiltonian()) {
        let ms: Vec<_> = GRID.iter().map(|&t| h.primitive(t).unwrap()).collect();
        for p in ms.windows(2) {
            prop_assert!(p[1].m1 >= p[0].m1 * (1.0 - 1e-12));
            prop_assert!(p[1].m2 >= p[0].m2 * (1.0 - 1e-12));
        }
        for m in &ms {
            prop_assert!(m.m3 * m.m3 <= m.m1 * m.m2 * (1.0 + 1e-12) + 1e-300, "{m:?}");
        }
    }

    #[test]
    fn trace_normalize_is_idempotent(h in any_hamiltonian()) {
        let once = trace_normalize(&h).unwrap();
        let twice = trace_normalize(&once).unwrap();
        for x in [0.01, 0.1, 0.7, 1.5, 3.0] {
            let a = once.primitive(x).unwrap();
            let b = twice.primitive(x).unwrap();
            prop_assert!(a.max_abs_diff(&b) <= 1e-9 * (1.0 + a.max_abs()), "x={x}: {a:?} vs {b:?}");
        }
    }

    #[test]
    fn normalized_is_at_distance_zero(h in any_hamiltonian()) {
        let n = trace_normalize(&h).unwrap();
        let d = convergence_distance(&h, &n, 2.0, 21).unwrap();
        prop_assert!(d <= 1e-8, "distance {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn distance_is_a_pseudometric(a in piecewise_strategy(), b in piecewise_strategy(), c in piecewise_strategy()) {
        let t = 3.0;
        let ab = convergence_distance(&a, &b, t, 31).unwrap();
        let ba = convergence_distance(&b, &a, t, 31).unwrap();
        let bc = convergence_distance(&b, &c, t, 31).unwrap();
        let ac = convergence_distance(&a, &c, t, 31).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-12 * (1.0 + ab));
        prop_assert!(ac <= ab + bc + 1e-10);
        prop_assert!(convergence_distance(&a, &a, t, 31).unwrap() == 0.0);
    }
}
