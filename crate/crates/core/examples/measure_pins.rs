//! Regenerates the measured regression constants in `verify::pins`.
//!
//! Run after intentional algorithm changes and paste the printed values:
//!     cargo run --release -p dirmax --example measure_pins

use dirmax::directions::{certify_log_order, geometric_slopes, Slope, SlopeSet};
use dirmax::gridops::{directional_max, GridFunction, ScaleList};
use dirmax::kernels::zeta_constant;
use dirmax::verify::{
    check_sector_overlap, lemma1_point_instance, lemma1_suite, lemma2_point_instance,
    lemma2_suite, LEMMA1_SUITE_SEED, LEMMA2_SUITE_SEED,
};

fn main() {
    let zeta = zeta_constant(1.0, 8.0, 40_000).unwrap();
    println!("ZETA_CONSTANT_1_8: {zeta:?}");

    let vals: Vec<f64> = (1..=64).map(|i| i as f64 / 65.0).collect();
    let set = SlopeSet::new(&vals).unwrap();
    let cert = certify_log_order(&set).unwrap();
    println!("EQUISPACED_64_LOG_ORDER: {}", cert.order);
    println!(
        "equispaced-64 overlap (expect 2): {:?}",
        check_sector_overlap(&cert).last()
    );

    let geo = geometric_slopes(0.4, 8, Slope::new(0.9).unwrap()).unwrap();
    println!(
        "GEOMETRIC_8_OVERLAP: {:?}",
        check_sector_overlap(geo.certificate.as_ref().unwrap()).last()
    );

    let l1 = lemma1_suite(128, 100, LEMMA1_SUITE_SEED).unwrap();
    println!("LEMMA1_SUITE_CONSTANT: {l1:?}");
    let l1p = lemma1_point_instance().unwrap();
    println!("LEMMA1_POINT_MASS_CONSTANT: {l1p:?}");

    let l2 = lemma2_suite(128, 20, LEMMA2_SUITE_SEED).unwrap();
    println!(
        "LEMMA2_SUITE_CONSTANT: {:?}  (tele {:.3e}, scalar {:.6})",
        l2.max_constant, l2.max_telescoping, l2.max_scalar
    );
    let l2p = lemma2_point_instance().unwrap();
    println!("LEMMA2_POINT_MASS_CONSTANT: {l2p:?}");

    // disc-indicator regression under 64 equispaced directions
    let n = 128usize;
    let c = (n / 2) as f64;
    let radius = (n / 8) as f64;
    let disc = GridFunction::from_fn(n, n as f64, |x1, x2| {
        let d2 = (x1 as f64 - c).powi(2) + (x2 as f64 - c).powi(2);
        if d2 <= radius * radius {
            1.0
        } else {
            0.0
        }
    })
    .unwrap();
    let ratio = directional_max(&disc, &set, &ScaleList::dyadic(n)).unwrap().l2() / disc.l2();
    println!("DISC_RATIO_N128_DIRS64: {ratio:?}");
}
