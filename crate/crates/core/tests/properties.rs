use std::sync::Arc;

use decaynet::families::{random_decaying, random_dominated};
use decaynet::graph::{path, random_connected};
use decaynet::inversion::invert;
use decaynet::norms::{beurling_norm, check_solid, decay_envelope, op_norm, schur_norm};
use decaynet::powers::matrix_power;
use decaynet::stability::lower_stability_bound;
use decaynet::{approx_le, BeurlingParams, GraphMetrics, Lp};
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(2.0), Just(4.0), Just(f64::INFINITY)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_chain(m in 4usize..40, width in 0usize..6, seed in any::<u64>(), alpha in 0.0f64..3.0, r in exponent()) {
        let g = Arc::new(path(m).unwrap());
        let a = random_decaying(&g, width, seed);
        let p = BeurlingParams::new(r, alpha, 1.0).unwrap();
        let s = schur_norm(&a);
        for q in Lp::ALL {
            prop_assert!(approx_le(op_norm(&a, q).unwrap(), s));
        }
        let p10 = BeurlingParams::new(1.0, 0.0, 1.0).unwrap();
        let d1 = GraphMetrics::new(&g, 1.0).unwrap().d1;
        prop_assert!(approx_le(s, d1 * beurling_norm(&a, &p10)));
        prop_assert!(beurling_norm(&a, &p) >= 0.0);
    }

    #[test]
    fn envelope_is_nonincreasing(m in 3usize..30, width in 0usize..5, seed in any::<u64>()) {
        let g = Arc::new(path(m).unwrap());
        let h = decay_envelope(&random_decaying(&g, width, seed));
        prop_assert!(h.values().windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn norm_increases_with_alpha(seed in any::<u64>(), a1 in 0.0f64..2.0, da in 0.0f64..2.0, r in exponent()) {
        let g = Arc::new(random_connected(24, 0.15, seed % 1000).unwrap());
        let a = random_decaying(&g, 3, seed);
        let lo = BeurlingParams::new(r, a1, 1.0).unwrap();
        let hi = BeurlingParams::new(r, a1 + da, 1.0).unwrap();
        prop_assert!(approx_le(beurling_norm(&a, &lo), beurling_norm(&a, &hi)));
    }

    #[test]
    fn solidity(seed in any::<u64>(), alpha in 0.0f64..3.0, r in exponent()) {
        let g = Arc::new(path(20).unwrap());
        let b = random_decaying(&g, 4, seed);
        let a = random_dominated(&b, seed ^ 0x5eed);
        let p = BeurlingParams::new(r, alpha, 1.0).unwrap();
        prop_assert!(check_solid(&a, &b, &p).unwrap());
    }

    #[test]
    fn stability_identity(seed in any::<u64>(), m in 3usize..24) {
        let g = Arc::new(path(m).unwrap());
        let a = decaynet::families::random_band(&g, 2, seed);
        let inv = invert(&a).unwrap();
        for q in Lp::ALL {
            let prod = lower_stability_bound(&a, q).unwrap() * op_norm(&inv, q).unwrap();
            prop_assert!((prod - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn power_norm_is_submultiplicative(seed in any::<u64>(), n in 1u32..6) {
        let g = Arc::new(path(16).unwrap());
        let a = random_decaying(&g, 2, seed);
        let an = matrix_power(&a, n).unwrap();
        let bound = op_norm(&a, Lp::Two).unwrap().powi(n as i32);
        prop_assert!(approx_le(op_norm(&an, Lp::Two).unwrap(), bound));
    }
}
