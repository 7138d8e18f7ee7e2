//! Property tests for the certificate machinery.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirmax::directions::{
    build_n_lacunary, certify_log_order, is_one_lacunary, verify_certificate, BuildSpec, GapEnd,
    LevelRule, RunShape, SlopeSet, DEFAULT_TOL, LOG_ORDER_OFFSET, LOG_ORDER_SLOPE,
};

fn run_shape_strategy() -> impl Strategy<Value = RunShape> {
    (0.34f64..0.49, 1usize..5, prop::bool::ANY).prop_map(|(ratio, count, lower)| {
        RunShape::Geometric {
            ratio,
            count,
            toward: if lower { GapEnd::Lower } else { GapEnd::Upper },
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Round trip: everything the builder accepts, the checker validates.
    #[test]
    fn built_certificates_always_verify(
        base in run_shape_strategy(),
        levels in prop::collection::vec(
            prop_oneof![
                Just(LevelRule::Empty),
                run_shape_strategy().prop_map(LevelRule::EveryGap),
            ],
            0..3,
        ),
    ) {
        let spec = BuildSpec { base, levels };
        match build_n_lacunary(&spec, DEFAULT_TOL) {
            Ok(set) => {
                let cert = set.certificate.as_ref().unwrap();
                let report = verify_certificate(&set, cert, DEFAULT_TOL).unwrap();
                prop_assert!(report.valid, "violations: {:?}", report.violations);
            }
            Err(e) => prop_assert!(false, "builder rejected admissible spec: {e}"),
        }
    }

    // Affine invariance: x -> p x + q applied to the sequence and the
    // witness leaves the outcome unchanged (all three quantities in the
    // defining inequality scale by p). Ratios close to the decision
    // boundaries are excluded; floating-point rescaling could flip those.
    #[test]
    fn one_lacunary_is_affine_invariant(
        ratio in prop_oneof![0.20f64..0.330, 0.336f64..0.496, 0.504f64..0.60],
        count in 3usize..8,
        p in 0.1f64..10.0,
        q in -0.5f64..0.5,
    ) {
        let seq: Vec<f64> = (1..=count).map(|k| 0.9 * ratio.powi(k as i32)).collect();
        let transformed: Vec<f64> = seq.iter().map(|x| p * x + q).collect();
        let original = is_one_lacunary(&seq, 0.0, 1e-9).unwrap();
        let mapped = is_one_lacunary(&transformed, q, 1e-9).unwrap();
        prop_assert_eq!(original.ok, mapped.ok);
        prop_assert_eq!(original.first_violation, mapped.first_violation);
    }
}

#[test]
fn certify_log_order_bound_across_random_sets() {
    // 200 random sets per size; order must stay within the pinned
    // logarithmic envelope and every certificate must verify.
    let mut rng = ChaCha8Rng::seed_from_u64(0x10906);
    for &size in &[2usize, 4, 8, 16, 32, 64, 128, 256, 512, 1024] {
        for case in 0..200 {
            let mut vals = std::collections::BTreeSet::new();
            while vals.len() < size {
                let v: f64 = rng.gen_range(0.0005..0.9995);
                vals.insert(v.to_bits());
            }
            let vals: Vec<f64> = vals.into_iter().map(f64::from_bits).collect();
            let set = SlopeSet::new(&vals).unwrap();
            let cert = certify_log_order(&set).unwrap();
            let bound = LOG_ORDER_SLOPE * (size as f64).log2() + LOG_ORDER_OFFSET;
            assert!(
                (cert.order as f64) <= bound + 1e-9,
                "size {size} case {case}: order {} exceeds {bound}",
                cert.order
            );
            // verifying all 200 x 10 certificates is slow; spot-check
            if case % 20 == 0 {
                let report = verify_certificate(&set, &cert, DEFAULT_TOL).unwrap();
                assert!(report.valid, "size {size} case {case}");
            }
        }
    }
}
