//! Nested interval chains through the gap structure of a certificate.

use serde::{Deserialize, Serialize};

use crate::directions::{Slope, SlopeSet};
use crate::error::{Error, Result};
use crate::gridops::SlopeInterval;

/// Nested intervals J_1 >= J_2 >= ... >= J_n with a common point theta and
/// the gap-distance property `dist((J_k)^c, J_{k+1}) <= |J_{k+1}|`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalChain {
    pub intervals: Vec<SlopeInterval>,
    pub theta: Slope,
}

impl IntervalChain {
    pub fn new(intervals: Vec<SlopeInterval>, theta: Slope) -> Result<Self> {
        let chain = IntervalChain { intervals, theta };
        chain.validate(1e-12)?;
        Ok(chain)
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.intervals.iter().map(|j| j.length()).collect()
    }

    /// Checks nesting, theta membership and the gap-distance condition,
    /// reporting the first offending level.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.intervals.is_empty() {
            return Err(Error::EmptyChain);
        }
        let t = self.theta.value();
        for (i, j) in self.intervals.iter().enumerate() {
            if !(t >= j.a.value() && t <= j.b.value()) {
                return Err(Error::ThetaOutsideChain {
                    theta: t,
                    level: i + 1,
                });
            }
        }
        for (i, w) in self.intervals.windows(2).enumerate() {
            let (outer, inner) = (w[0], w[1]);
            if inner.a.value() < outer.a.value() - tol || inner.b.value() > outer.b.value() + tol {
                return Err(Error::ChainNotNested { level: i + 2 });
            }
            // dist((J_k)^c, J_{k+1}) = min of the two side margins
            let dist = (inner.a.value() - outer.a.value()).min(outer.b.value() - inner.b.value());
            if dist > inner.length() * (1.0 + tol) {
                return Err(Error::ChainCondition { level: i + 2 });
            }
        }
        Ok(())
    }
}

/// Builds the interval chain for `theta` through the certified gap
/// hierarchy: at each level before theta's insertion level, the gap of that
/// level's set containing theta; at the insertion level, the gap having
/// theta as its lower vertex (upper when theta is the level's maximum).
pub fn build_chain(set: &SlopeSet, theta: Slope) -> Result<IntervalChain> {
    let cert = set
        .certificate
        .as_ref()
        .ok_or(Error::MissingCertificate)?;
    if cert.chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let t = theta.value();
    if !set.contains(t) {
        return Err(Error::ThetaNotInSet(t));
    }
    let insertion_level = cert
        .chain
        .iter()
        .position(|level| level.iter().any(|s| s.value() == t))
        .map(|i| i + 1)
        .ok_or(Error::ThetaNotInSet(t))?;

    let mut intervals = Vec::with_capacity(insertion_level);
    for k in 1..=insertion_level {
        let pts: Vec<f64> = cert.chain[k - 1].iter().map(|s| s.value()).collect();
        let interval = if k < insertion_level {
            // theta sits strictly inside a gap of this level
            let i = pts
                .windows(2)
                .position(|w| w[0] < t && t < w[1])
                .ok_or(Error::ChainUnavailable { level: k })?;
            SlopeInterval::new(pts[i], pts[i + 1])?
        } else {
            let i = pts
                .iter()
                .position(|&p| p == t)
                .ok_or(Error::ThetaNotInSet(t))?;
            if i + 1 < pts.len() {
                SlopeInterval::new(pts[i], pts[i + 1])? // theta = lower vertex
            } else if i > 0 {
                SlopeInterval::new(pts[i - 1], pts[i])? // theta = upper vertex
            } else {
                return Err(Error::ChainUnavailable { level: k });
            }
        };
        intervals.push(interval);
    }
    let chain = IntervalChain { intervals, theta };
    chain.validate(1e-12)?;
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directions::{
        build_n_lacunary, geometric_slopes, BuildSpec, GapEnd, LevelRule, RunShape, DEFAULT_TOL,
    };

    #[test]
    fn order_one_chain_has_theta_as_vertex() {
        let set = geometric_slopes(0.4, 5, Slope::new(0.9).unwrap()).unwrap();
        let theta = set.slopes[0];
        let chain = build_chain(&set, theta).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.intervals[0].a.value(), theta.value());
    }

    #[test]
    fn order_two_chain_is_nested_and_satisfies_gap_condition() {
        let spec = BuildSpec {
            base: RunShape::Geometric {
                ratio: 0.4,
                count: 4,
                toward: GapEnd::Lower,
            },
            levels: vec![LevelRule::EveryGap(RunShape::Geometric {
                ratio: 0.4,
                count: 3,
                toward: GapEnd::Lower,
            })],
        };
        let set = build_n_lacunary(&spec, DEFAULT_TOL).unwrap();
        let cert = set.certificate.as_ref().unwrap();
        // a slope inserted at level 2
        let theta = *cert.chain[1]
            .iter()
            .find(|s| !cert.chain[0].contains(s))
            .unwrap();
        let chain = build_chain(&set, theta).unwrap();
        assert_eq!(chain.len(), 2);
        assert!(chain.intervals[1].a.value() >= chain.intervals[0].a.value());
        assert!(chain.intervals[1].b.value() <= chain.intervals[0].b.value());
        chain.validate(DEFAULT_TOL).unwrap();
    }

    #[test]
    fn theta_must_belong_to_set() {
        let set = geometric_slopes(0.4, 5, Slope::new(0.9).unwrap()).unwrap();
        let err = build_chain(&set, Slope::new(0.777).unwrap());
        assert!(matches!(err, Err(Error::ThetaNotInSet(_))));
    }

    #[test]
    fn gap_condition_violation_is_reported_with_level() {
        // J_2 deep inside J_1, far from both endpoints: dist > |J_2|
        let intervals = vec![
            SlopeInterval::new(0.1, 0.9).unwrap(),
            SlopeInterval::new(0.45, 0.5).unwrap(),
        ];
        let err = IntervalChain::new(intervals, Slope::new(0.47).unwrap());
        assert!(matches!(err, Err(Error::ChainCondition { level: 2 })));
    }
}
