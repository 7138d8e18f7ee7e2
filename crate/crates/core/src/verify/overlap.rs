//! Bounded-overlap counting for doubled gap sectors.

use crate::directions::LacunaryCertificate;
use crate::gridops::SlopeInterval;

/// Number of slope samples used by the overlap counter. Samples sit at
/// half-integer lattice positions (2j+1)/2N so that generic gap midpoints
/// are never hit exactly.
pub const OVERLAP_SAMPLES: usize = 4096;

/// Maximum over a dense set of slope values of the number of neighbor-gap
/// intervals of `points` whose slope-doubled interval contains the value
/// (open-interval membership).
pub fn gap_overlap_multiplicity(points: &[f64]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let doubles: Vec<(f64, f64)> = points
        .windows(2)
        .filter_map(|w| SlopeInterval::new(w[0], w[1]).ok())
        .map(|j| j.doubled_bounds())
        .collect();
    let mut worst = 0usize;
    for j in 0..OVERLAP_SAMPLES {
        let t = (2 * j + 1) as f64 / (2 * OVERLAP_SAMPLES) as f64;
        let count = doubles.iter().filter(|&&(lo, hi)| t > lo && t < hi).count();
        worst = worst.max(count);
    }
    worst
}

/// Per-level overlap multiplicities along the certificate chain. The last
/// entry is the multiplicity of the certified set's own gap partition.
pub fn check_sector_overlap(cert: &LacunaryCertificate) -> Vec<usize> {
    cert.chain
        .iter()
        .map(|level| {
            let pts: Vec<f64> = level.iter().map(|s| s.value()).collect();
            gap_overlap_multiplicity(&pts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::{certify_log_order, geometric_slopes, Slope, SlopeSet};

    #[test]
    fn equispaced_gaps_overlap_exactly_two() {
        // each doubled interval reaches halfway into each neighbor
        for count in [16usize, 32, 64] {
            let vals: Vec<f64> = (1..=count).map(|i| i as f64 / (count + 1) as f64).collect();
            let set = SlopeSet::new(&vals).unwrap();
            let cert = certify_log_order(&set).unwrap();
            // the final level is the full set
            let mult = *check_sector_overlap(&cert).last().unwrap();
            assert_eq!(mult, 2, "count = {count}");
        }
    }

    #[test]
    fn single_interval_has_multiplicity_one() {
        let set = SlopeSet::new(&[0.3, 0.6]).unwrap();
        let cert = certify_log_order(&set).unwrap();
        let mult = *check_sector_overlap(&cert).last().unwrap();
        assert_eq!(mult, 1);
    }

    #[test]
    fn geometric_certificate_multiplicity_is_pinned() {
        let set = geometric_slopes(0.4, 8, Slope::new(0.9).unwrap()).unwrap();
        let cert = set.certificate.as_ref().unwrap();
        let mult = *check_sector_overlap(cert).last().unwrap();
        assert_eq!(mult, crate::verify::pins::GEOMETRIC_8_OVERLAP);
    }
}
