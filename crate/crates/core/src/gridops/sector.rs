//! Frequency sectors and sector projections.
//!
//! A frequency point (xi1, xi2) is associated with the direction of slope
//! `m = -xi1/xi2`: the sheared band symbol `phi_hat(h(xi1 + xi2 alpha))`
//! concentrates on the dual line `xi1 + alpha xi2 = 0`, so the sector of a
//! slope interval J = [a, b] collects the frequencies with dual slope in J
//! (symmetric through the origin).

use serde::{Deserialize, Serialize};

use crate::directions::Slope;
use crate::error::{Error, Result};
use crate::gridops::fourier::{apply_multiplier, signed_index};
use crate::gridops::grid::GridFunction;

/// Closed slope interval [a, b] inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeInterval {
    pub a: Slope,
    pub b: Slope,
}

impl SlopeInterval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::BadInterval { a, b });
        }
        Ok(SlopeInterval {
            a: Slope::new(a)?,
            b: Slope::new(b)?,
        })
    }

    pub fn length(&self) -> f64 {
        self.b.value() - self.a.value()
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a.value() + self.b.value())
    }

    pub fn contains(&self, m: f64) -> bool {
        m >= self.a.value() && m <= self.b.value()
    }

    /// Bounds of the slope-doubled interval: same midpoint, twice the length.
    pub fn doubled_bounds(&self) -> (f64, f64) {
        (
            self.midpoint() - self.length(),
            self.midpoint() + self.length(),
        )
    }
}

/// A sector of directions with realized slope bounds. `doubled` records
/// whether the bounds came from a doubling of `interval`; `clipped` records
/// per-end clipping against the chart [0, 1].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Sector {
    pub interval: SlopeInterval,
    pub doubled: bool,
    pub lo: f64,
    pub hi: f64,
    pub clipped: (bool, bool),
}

impl Sector {
    /// The undoubled sector S(J).
    pub fn plain(interval: SlopeInterval) -> Self {
        Sector {
            interval,
            doubled: false,
            lo: interval.a.value(),
            hi: interval.b.value(),
            clipped: (false, false),
        }
    }

    /// Slope-space doubling: same midpoint, twice the slope length, clipped
    /// to the chart. This is the doubling under which the sheared band
    /// supports are contained exactly.
    pub fn doubled_slope(interval: SlopeInterval) -> Self {
        let (lo_raw, hi_raw) = interval.doubled_bounds();
        let lo = lo_raw.max(0.0);
        let hi = hi_raw.min(1.0);
        Sector {
            interval,
            doubled: true,
            lo,
            hi,
            clipped: (lo_raw < 0.0, hi_raw > 1.0),
        }
    }

    /// Whether a dual slope lies in the sector (closed bounds).
    #[inline]
    pub fn contains_slope(&self, m: f64) -> bool {
        m >= self.lo && m <= self.hi
    }
}

/// Angle-space doubling: same bisectrix angle, twice the angular width,
/// converted back to slope bounds and clipped to the chart.
pub fn sector_double(interval: SlopeInterval) -> Sector {
    let ta = interval.a.value().atan();
    let tb = interval.b.value().atan();
    let mid = 0.5 * (ta + tb);
    let half = tb - ta; // doubled half-width
    let lo_raw = (mid - half).tan();
    let hi_raw = (mid + half).tan();
    let lo = lo_raw.max(0.0);
    let hi = hi_raw.min(1.0);
    Sector {
        interval,
        doubled: true,
        lo,
        hi,
        clipped: (lo_raw < 0.0, hi_raw > 1.0),
    }
}

/// Dual slope of a discrete frequency pair, or None on the line k2 = 0.
#[inline]
pub fn dual_slope(k1: i64, k2: i64) -> Option<f64> {
    if k2 == 0 {
        None
    } else {
        Some(-(k1 as f64) / k2 as f64)
    }
}

#[inline]
fn negate_index(p: usize, n: usize) -> usize {
    (n - p) % n
}

/// Membership of a storage index in the sector, symmetrized over the
/// index-negation pairing so the mask preserves conjugate symmetry. The DC
/// bin belongs to every sector; other bins on k2 = 0 belong to none.
fn member(sector: &Sector, n: usize, p1: usize, p2: usize) -> bool {
    let raw = |a: usize, b: usize| -> bool {
        let k1 = signed_index(a, n);
        let k2 = signed_index(b, n);
        if k1 == 0 && k2 == 0 {
            return true;
        }
        match dual_slope(k1, k2) {
            Some(m) => sector.contains_slope(m),
            None => false,
        }
    };
    raw(p1, p2) || raw(negate_index(p1, n), negate_index(p2, n))
}

/// Fourier projection onto the sector: zeroes every discrete frequency
/// outside it (DC kept).
pub fn sector_project(f: &GridFunction, sector: &Sector) -> Result<GridFunction> {
    if !(sector.lo < sector.hi) {
        return Err(Error::DegenerateSector);
    }
    let n = f.n();
    let sec = *sector;
    apply_multiplier(f, move |k1, k2| {
        let p1 = k1.rem_euclid(n as i64) as usize;
        let p2 = k2.rem_euclid(n as i64) as usize;
        if member(&sec, n, p1, p2) {
            1.0
        } else {
            0.0
        }
    })
}

/// Projection onto the complement (DC excluded, since the sector keeps it).
pub fn sector_project_complement(f: &GridFunction, sector: &Sector) -> Result<GridFunction> {
    if !(sector.lo < sector.hi) {
        return Err(Error::DegenerateSector);
    }
    let n = f.n();
    let sec = *sector;
    apply_multiplier(f, move |k1, k2| {
        let p1 = k1.rem_euclid(n as i64) as usize;
        let p2 = k2.rem_euclid(n as i64) as usize;
        if member(&sec, n, p1, p2) {
            0.0
        } else {
            1.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn mode(n: usize, k1: i64, k2: i64) -> GridFunction {
        let step = 2.0 * PI / n as f64;
        GridFunction::from_fn(n, n as f64, |x1, x2| {
            (step * (k1 * x1 as i64 + k2 * x2 as i64) as f64 + 0.2).cos()
        })
        .unwrap()
    }

    #[test]
    fn doubling_in_angle_preserves_bisectrix() {
        let j = SlopeInterval::new(0.2, 0.4).unwrap();
        let s = sector_double(j);
        let want_lo = ((0.2f64.atan() + 0.4f64.atan()) / 2.0 - (0.4f64.atan() - 0.2f64.atan())).tan();
        let want_hi = ((0.2f64.atan() + 0.4f64.atan()) / 2.0 + (0.4f64.atan() - 0.2f64.atan())).tan();
        assert!((s.lo - want_lo).abs() < 1e-15);
        assert!((s.hi - want_hi).abs() < 1e-15);
        // bisectrix is unchanged
        let mid_orig = (0.2f64.atan() + 0.4f64.atan()) / 2.0;
        let mid_doubled = (s.lo.atan() + s.hi.atan()) / 2.0;
        assert!((mid_orig - mid_doubled).abs() < 1e-12);
        // the base interval is inside the doubled one
        assert!(s.lo < 0.2 && s.hi > 0.4);
    }

    #[test]
    fn doubling_clips_and_records() {
        let j = SlopeInterval::new(0.05, 0.6).unwrap();
        let s = sector_double(j);
        assert!(s.clipped.0);
        assert_eq!(s.lo, 0.0);
        let d = Sector::doubled_slope(j);
        assert!(d.clipped.0);
        assert_eq!(d.lo, 0.0);
    }

    #[test]
    fn identity_on_interior_modes() {
        // dual slope of (k1, k2) = (-3, 8) is 3/8 = 0.375
        let f = mode(32, -3, 8);
        let sector = Sector::plain(SlopeInterval::new(0.3, 0.45).unwrap());
        let out = sector_project(&f, &sector).unwrap();
        for (a, b) in out.samples().iter().zip(f.samples()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn annihilates_exterior_modes() {
        let f = mode(32, -3, 8); // dual slope 0.375
        let sector = Sector::plain(SlopeInterval::new(0.5, 0.7).unwrap());
        let out = sector_project(&f, &sector).unwrap();
        for &v in out.samples() {
            assert!(v.abs() < 1e-12);
        }
        // horizontal-frequency modes (k2 = 0) belong to no sector
        let g = mode(32, 5, 0);
        let out = sector_project(&g, &sector).unwrap();
        for &v in out.samples() {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn idempotent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = GridFunction::from_fn(32, 32.0, |_, _| rng.gen_range(-1.0..1.0)).unwrap();
        let sector = Sector::doubled_slope(SlopeInterval::new(0.3, 0.42).unwrap());
        let once = sector_project(&f, &sector).unwrap();
        let twice = sector_project(&once, &sector).unwrap();
        let rel = twice.sub(&once).unwrap().l2() / once.l2().max(1e-300);
        assert!(rel < 1e-12);
    }

    #[test]
    fn parseval_partition() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let f = GridFunction::from_fn(64, 64.0, |_, _| rng.gen_range(-1.0..1.0)).unwrap();
        let sector = Sector::plain(SlopeInterval::new(0.2, 0.6).unwrap());
        let inside = sector_project(&f, &sector).unwrap();
        let outside = sector_project_complement(&f, &sector).unwrap();
        let total = f.l2().powi(2);
        let parts = inside.l2().powi(2) + outside.l2().powi(2);
        assert!(
            (total - parts).abs() / total < 1e-9,
            "{total} vs {parts}"
        );
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert!(SlopeInterval::new(0.4, 0.4).is_err());
    }
}
