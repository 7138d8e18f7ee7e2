//! One-dimensional kernels and their Fourier symbols.
//!
//! The building block is the Fejer kernel `K_r(x) = 4 sin^2(rx/2) / (r x^2)`,
//! whose transform is the unit triangle on [-r, r] (normalized so the profile
//! peaks at 1). Band kernels are the combinations
//! `psi_r = 2 K_{2r} - K_r` and `psi_{r,R} = psi_R - psi_r`; the transform of
//! `psi_{r,R}` is the trapezoid that vanishes on [0, r], rises linearly on
//! [r, 2r], sits at 1 on [2r, R] and falls to 0 on [R, 2R].
//!
//! Profiles are exact piecewise-linear data; spatial kernels carry a factor
//! 2*pi relative to them (`int psi_{r,R}(x) e^{ix xi} dx = 2 pi * profile(xi)`).

use serde::{Deserialize, Serialize};

use crate::directions::Slope;
use crate::error::{Error, Result};

/// Parameters of the two-dimensional multiplier operator: band radii
/// (r, R) with 0 <= r < R/2, window width h > 0 and shear slope alpha.
#[derive(Debug, Clone, Copy)]
pub struct KernelParams {
    pub r: f64,
    pub big_r: f64,
    pub h: f64,
    pub alpha: Slope,
}

impl KernelParams {
    pub fn new(r: f64, big_r: f64, h: f64, alpha: Slope) -> Result<Self> {
        check_band(r, big_r)?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::BadWindowWidth(h));
        }
        Ok(KernelParams { r, big_r, h, alpha })
    }
}

fn check_band(r: f64, big_r: f64) -> Result<()> {
    if !(r >= 0.0) || !(big_r > 0.0) || !(r < big_r / 2.0) || !r.is_finite() || !big_r.is_finite()
    {
        return Err(Error::BadKernelParams { r, big_r });
    }
    Ok(())
}

/// Piecewise-linear even profile of one frequency variable. Values live in
/// [0, 1]; the profile is 0 beyond the last breakpoint and is evaluated at
/// |xi| (even symmetry).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolProfile {
    pub breakpoints: Vec<(f64, f64)>,
}

impl SymbolProfile {
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Self {
        debug_assert!(breakpoints.windows(2).all(|w| w[0].0 <= w[1].0));
        SymbolProfile { breakpoints }
    }

    /// Evaluates the profile at a (signed) frequency.
    pub fn eval(&self, xi: f64) -> f64 {
        let x = xi.abs();
        let bp = &self.breakpoints;
        if bp.is_empty() {
            return 0.0;
        }
        if x <= bp[0].0 {
            return bp[0].1;
        }
        for w in bp.windows(2) {
            let (x0, v0) = w[0];
            let (x1, v1) = w[1];
            if x <= x1 {
                if x1 == x0 {
                    return v1;
                }
                let t = (x - x0) / (x1 - x0);
                return v0 + t * (v1 - v0);
            }
        }
        0.0
    }

    /// Last breakpoint frequency; the profile vanishes beyond it.
    pub fn support_end(&self) -> f64 {
        self.breakpoints.last().map(|b| b.0).unwrap_or(0.0)
    }
}

/// Fejer kernel `K_r(x)`; at x = 0 the removable singularity equals r.
pub fn fejer(r: f64, x: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::BadFejerRadius(r));
    }
    Ok(fejer_unchecked(r, x))
}

#[inline]
fn fejer_unchecked(r: f64, x: f64) -> f64 {
    if (r * x).abs() < 1e-8 {
        return r;
    }
    let s = (0.5 * r * x).sin();
    4.0 * s * s / (r * x * x)
}

/// Spatial band kernel `psi_{r,R}(x) = psi_R(x) - psi_r(x)` with
/// `psi_r = 2 K_{2r} - K_r` and `psi_0 = 0`.
pub fn psi(r: f64, big_r: f64, x: f64) -> Result<f64> {
    check_band(r, big_r)?;
    Ok(psi_single(big_r, x) - psi_single(r, x))
}

#[inline]
fn psi_single(r: f64, x: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    2.0 * fejer_unchecked(2.0 * r, x) - fejer_unchecked(r, x)
}

/// Exact transform profile of `psi_{r,R}`: breakpoints
/// {(0,0), (r,0), (2r,1), (R,1), (2R,0)}, or {(0,1), (R,1), (2R,0)} for r = 0.
pub fn psi_hat(r: f64, big_r: f64) -> Result<SymbolProfile> {
    check_band(r, big_r)?;
    let bp = if r == 0.0 {
        vec![(0.0, 1.0), (big_r, 1.0), (2.0 * big_r, 0.0)]
    } else {
        vec![
            (0.0, 0.0),
            (r, 0.0),
            (2.0 * r, 1.0),
            (big_r, 1.0),
            (2.0 * big_r, 0.0),
        ]
    };
    Ok(SymbolProfile::new(bp))
}

/// Window `phi(x) = sin^2(x/2) / (2 pi (x/2)^2)`, the normalized Fejer-square
/// window: phi >= 0, integral 1, transform `max(0, 1 - |xi|)`.
/// `window_phi(h, x)` evaluates the rescaled `phi_h(x) = phi(x/h)/h`.
pub fn window_phi(h: f64, x: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::BadWindowWidth(h));
    }
    let u = x / h;
    let v = if u.abs() < 1e-8 {
        1.0 / (2.0 * std::f64::consts::PI)
    } else {
        let s = (0.5 * u).sin();
        s * s / (2.0 * std::f64::consts::PI * (0.5 * u) * (0.5 * u))
    };
    Ok(v / h)
}

/// Transform profile of `phi_h`: the triangle `max(0, 1 - |h xi|)`, i.e.
/// breakpoints {(0,1), (1/h, 0)}.
pub fn window_phi_hat(h: f64) -> Result<SymbolProfile> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::BadWindowWidth(h));
    }
    Ok(SymbolProfile::new(vec![(0.0, 1.0), (1.0 / h, 0.0)]))
}

/// Dyadic majorant of |psi_{r,R}|: weights gamma_k on nested symmetric
/// intervals omega_k = (-2^k/R, 2^k/R). Every interval contains (-1/R, 1/R)
/// and the weights sum to exactly 1/2.
#[derive(Debug, Clone)]
pub struct ZetaMajorant {
    /// (gamma_k, half-width of omega_k), k = 0..=K.
    pub terms: Vec<(f64, f64)>,
}

impl ZetaMajorant {
    /// Value of `sum_k gamma_k 1_{omega_k}(x) / |omega_k|` at x.
    pub fn eval(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.terms
            .iter()
            .filter(|(_, hw)| ax < *hw)
            .map(|(g, hw)| g / (2.0 * hw))
            .sum()
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|(g, _)| g).sum()
    }

    /// Largest covered |x|.
    pub fn support_end(&self) -> f64 {
        self.terms.last().map(|(_, hw)| *hw).unwrap_or(0.0)
    }
}

/// Builds the dyadic majorant family for `psi_{r,R}`. The interval ladder
/// covers the range where r x^2 <= 1 (R x^2 <= 1 when r = 0) plus four extra
/// dyadic tail steps; weights are proportional to 2^{-k/2}.
pub fn zeta_majorant(r: f64, big_r: f64) -> Result<ZetaMajorant> {
    check_band(r, big_r)?;
    let x_max = if r > 0.0 {
        1.0 / r.sqrt()
    } else {
        1.0 / big_r.sqrt()
    };
    let k_max = (big_r * x_max).log2().ceil().max(0.0) as usize + 4;
    let raw: Vec<f64> = (0..=k_max).map(|k| 0.5f64.powf(0.5 * k as f64)).collect();
    let total: f64 = raw.iter().sum();
    let terms = raw
        .iter()
        .enumerate()
        .map(|(k, &g)| (g / (2.0 * total), 2.0f64.powi(k as i32) / big_r))
        .collect();
    Ok(ZetaMajorant { terms })
}

/// Measures the majorization constant `max |psi_{r,R}(x)| / zeta(x)` over a
/// dense grid covering the majorant's support.
pub fn zeta_constant(r: f64, big_r: f64, samples: usize) -> Result<f64> {
    let zeta = zeta_majorant(r, big_r)?;
    let x_end = zeta.support_end();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let x = (i as f64 + 0.5) / samples as f64 * x_end;
        let num = psi(r, big_r, x)?.abs();
        let den = zeta.eval(x);
        if den > 0.0 {
            worst = worst.max(num / den);
        }
    }
    Ok(worst)
}

/// Cut radii of a nested interval chain: r_0 = 0, r_k = 2/(h |J_k|), and
/// m = max{k : r_k < 2R} (0 when none).
#[derive(Debug, Clone)]
pub struct CutRadii {
    /// r_0..r_n, with r_0 = 0.
    pub radii: Vec<f64>,
    pub m: usize,
}

pub fn cut_radii(h: f64, lengths: &[f64], big_r: f64) -> Result<CutRadii> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::BadWindowWidth(h));
    }
    if !(big_r > 0.0) {
        return Err(Error::BadKernelParams { r: 0.0, big_r });
    }
    let mut radii = vec![0.0];
    let mut prev = f64::INFINITY;
    for (i, &len) in lengths.iter().enumerate() {
        if !(len > 0.0) || len > prev * (1.0 + 1e-12) {
            return Err(Error::BadChainLengths { index: i });
        }
        prev = len;
        radii.push(2.0 / (h * len));
    }
    let m = radii
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &r)| r < 2.0 * big_r)
        .map(|(k, _)| k)
        .max()
        .unwrap_or(0);
    Ok(CutRadii { radii, m })
}

/// One frequency band of a split: `psi_{r_lo, r_hi}`, tagged with the chain
/// level its lower radius came from (0 for the innermost piece).
#[derive(Debug, Clone, Copy)]
pub struct SplitPiece {
    pub r_lo: f64,
    pub r_hi: f64,
    pub level: usize,
}

/// Admissible band split derived from cut radii. Radii whose transition
/// bands would overlap the previous piece (r_k < 4 r_prev) or crowd the
/// outer radius (r_k >= R/2) are merged away; the total of the pieces'
/// profiles telescopes exactly to the full `psi_R` profile.
#[derive(Debug, Clone)]
pub struct SplitPlan {
    pub pieces: Vec<SplitPiece>,
    /// Levels whose radii were merged into a coarser piece.
    pub merged_levels: Vec<usize>,
}

pub fn split_radii(cut: &CutRadii, big_r: f64) -> SplitPlan {
    let mut kept: Vec<(f64, usize)> = Vec::new();
    let mut merged = Vec::new();
    for k in 1..=cut.m {
        let r = cut.radii[k];
        let prev = kept.last().map(|&(r, _)| r).unwrap_or(0.0);
        if r >= 4.0 * prev && r < big_r / 2.0 && r > 0.0 {
            kept.push((r, k));
        } else {
            merged.push(k);
        }
    }
    let mut pieces = Vec::with_capacity(kept.len() + 1);
    let mut lo = 0.0;
    let mut level = 0;
    for &(r, k) in &kept {
        pieces.push(SplitPiece {
            r_lo: lo,
            r_hi: r,
            level,
        });
        lo = r;
        level = k;
    }
    pieces.push(SplitPiece {
        r_lo: lo,
        r_hi: big_r,
        level,
    });
    SplitPlan {
        pieces,
        merged_levels: merged,
    }
}
