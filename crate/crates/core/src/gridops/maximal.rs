//! Sheared-window maximal operators on periodic grids.
//!
//! `parallelogram_max` computes, for each cell x, the maximum over the scale
//! list of the average of |f| over the sheared window
//! `{(x1+i, x2+round(i*alpha)+j) : |i| <= d1, |j| <= d2}` (periodic wrap,
//! round half to even). The computation is separable: vertical window sums
//! are built once per d2 and shared across directions, then each direction
//! accumulates sheared row sums incrementally over growing d1, snapshotting
//! at each requested scale. One division by the window cell count happens at
//! the snapshot, matching the brute-force evaluation order.

use rayon::prelude::*;

use crate::directions::SlopeSet;
use crate::error::{Error, Result};
use crate::gridops::grid::GridFunction;

/// Scale list of (d1, d2) half-widths in grid cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleList(Vec<(usize, usize)>);

impl ScaleList {
    pub fn new(scales: Vec<(usize, usize)>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::EmptyScales);
        }
        if scales.iter().any(|&(a, b)| a == 0 || b == 0) {
            return Err(Error::Config("scale half-widths must be >= 1".into()));
        }
        Ok(ScaleList(scales))
    }

    /// Full dyadic product {1, 2, 4, ..., n/4} x {1, 2, 4, ..., n/4}.
    pub fn dyadic(n: usize) -> Self {
        let mut ds = Vec::new();
        let mut d = 1;
        while d <= n / 4 {
            ds.push(d);
            d *= 2;
        }
        let mut scales = Vec::new();
        for &d1 in &ds {
            for &d2 in &ds {
                scales.push((d1, d2));
            }
        }
        ScaleList(scales)
    }

    /// Product of explicit per-axis half-width lists.
    pub fn product(d1s: &[usize], d2s: &[usize]) -> Result<Self> {
        let mut scales = Vec::new();
        for &d1 in d1s {
            for &d2 in d2s {
                scales.push((d1, d2));
            }
        }
        Self::new(scales)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Scales clipped to n/2, with a warning when clipping occurred.
    fn clipped(&self, n: usize) -> Vec<(usize, usize)> {
        let mut clipped = false;
        let out: Vec<(usize, usize)> = self
            .0
            .iter()
            .map(|&(d1, d2)| {
                let c1 = d1.min(n / 2);
                let c2 = d2.min(n / 2);
                if c1 != d1 || c2 != d2 {
                    clipped = true;
                }
                (c1, c2)
            })
            .collect();
        if clipped {
            log::warn!("scale half-widths exceeding n/2 = {} were clipped", n / 2);
        }
        out
    }
}

/// Shear offset of row i for slope alpha: round(i * alpha), ties to even.
#[inline]
pub fn shear_offset(i: i64, alpha: f64) -> i64 {
    (i as f64 * alpha).round_ties_even() as i64
}

#[inline]
fn add_shifted(dst: &mut [f64], src: &[f64], off: usize) {
    let n = dst.len();
    debug_assert!(off < n);
    let split = n - off;
    for (d, s) in dst[..split].iter_mut().zip(&src[off..]) {
        *d += *s;
    }
    for (d, s) in dst[split..].iter_mut().zip(&src[..off]) {
        *d += *s;
    }
}

/// Vertical window sums along the second axis for one half-width d2.
fn vertical_sums(abs_samples: &[f64], n: usize, d2: usize) -> Vec<f64> {
    let mut v = vec![0.0; n * n];
    for x1 in 0..n {
        let row = &abs_samples[x1 * n..(x1 + 1) * n];
        let out = &mut v[x1 * n..(x1 + 1) * n];
        let mut sum = 0.0;
        for j in -(d2 as isize)..=(d2 as isize) {
            sum += row[j.rem_euclid(n as isize) as usize];
        }
        out[0] = sum;
        for x2 in 1..n {
            let enter = (x2 as isize + d2 as isize).rem_euclid(n as isize) as usize;
            let leave = (x2 as isize - 1 - d2 as isize).rem_euclid(n as isize) as usize;
            sum += row[enter] - row[leave];
            out[x2] = sum;
        }
    }
    v
}

/// Precomputed per-(grid, scales) state shared by all directions.
struct MaxContext {
    n: usize,
    /// (d2, ascending d1 list, vertical sums for d2)
    groups: Vec<(usize, Vec<usize>, Vec<f64>)>,
}

fn build_context(f: &GridFunction, scales: &ScaleList) -> MaxContext {
    let n = f.n();
    let abs: Vec<f64> = f.samples().iter().map(|v| v.abs()).collect();
    let pairs = scales.clipped(n);
    let mut d2s: Vec<usize> = pairs.iter().map(|&(_, d2)| d2).collect();
    d2s.sort_unstable();
    d2s.dedup();
    let groups = d2s
        .into_iter()
        .map(|d2| {
            let mut d1s: Vec<usize> = pairs
                .iter()
                .filter(|&&(_, b)| b == d2)
                .map(|&(d1, _)| d1)
                .collect();
            d1s.sort_unstable();
            d1s.dedup();
            let v = vertical_sums(&abs, n, d2);
            (d2, d1s, v)
        })
        .collect();
    MaxContext { n, groups }
}

/// Accumulates the sheared maxima for one direction into `out` (pointwise
/// max with existing contents). Row-parallel when `par` is set.
fn apply_direction(ctx: &MaxContext, alpha: f64, out: &mut [f64], par: bool) {
    let n = ctx.n;
    for (d2, d1s, v) in &ctx.groups {
        let d1_max = *d1s.last().expect("nonempty scale group") as i64;
        // offsets for i and -i, reduced mod n
        let offsets: Vec<(usize, usize, usize, usize)> = (1..=d1_max)
            .map(|t| {
                let so_p = shear_offset(t, alpha).rem_euclid(n as i64) as usize;
                let so_m = shear_offset(-t, alpha).rem_euclid(n as i64) as usize;
                let row_p = (t as usize) & (n - 1);
                let row_m = (n - (t as usize & (n - 1))) & (n - 1);
                (row_p, so_p, row_m, so_m)
            })
            .collect();
        let snapshot: Vec<(i64, f64)> = d1s
            .iter()
            .map(|&d1| (d1 as i64, ((2 * d1 + 1) * (2 * d2 + 1)) as f64))
            .collect();

        let row_task = |x1: usize, out_row: &mut [f64]| {
            let mut acc = v[x1 * n..(x1 + 1) * n].to_vec();
            let mut next_snap = 0;
            // d1 = 0 is never requested (half-widths >= 1)
            for t in 1..=d1_max {
                let (row_p, so_p, row_m, so_m) = offsets[(t - 1) as usize];
                let rp = (x1 + row_p) & (n - 1);
                let rm = (x1 + row_m) & (n - 1);
                add_shifted(&mut acc, &v[rp * n..(rp + 1) * n], so_p);
                add_shifted(&mut acc, &v[rm * n..(rm + 1) * n], so_m);
                while next_snap < snapshot.len() && snapshot[next_snap].0 == t {
                    let count = snapshot[next_snap].1;
                    for (o, a) in out_row.iter_mut().zip(&acc) {
                        let avg = *a / count;
                        if avg > *o {
                            *o = avg;
                        }
                    }
                    next_snap += 1;
                }
            }
        };

        if par {
            out.par_chunks_mut(n)
                .enumerate()
                .for_each(|(x1, row)| row_task(x1, row));
        } else {
            for (x1, row) in out.chunks_mut(n).enumerate() {
                row_task(x1, row);
            }
        }
    }
}

/// Maximal averages over sheared parallelogram windows for one slope.
/// `alpha` may be 0 (axis-parallel rectangles).
pub fn parallelogram_max(f: &GridFunction, alpha: f64, scales: &ScaleList) -> Result<GridFunction> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::SlopeOutOfRange(alpha));
    }
    let ctx = build_context(f, scales);
    let mut out = vec![0.0; f.n() * f.n()];
    apply_direction(&ctx, alpha, &mut out, true);
    GridFunction::new(f.n(), f.len_physical(), out)
}

/// Axis-parallel (strong) maximal operator: `parallelogram_max` with slope 0.
pub fn strong_max(f: &GridFunction, scales: &ScaleList) -> Result<GridFunction> {
    parallelogram_max(f, 0.0, scales)
}

/// Pointwise maximum of `parallelogram_max` over all slopes of the set.
/// Directions are processed in parallel; the reduction is a pointwise max,
/// so the output is independent of the partition.
pub fn directional_max(f: &GridFunction, omega: &SlopeSet, scales: &ScaleList) -> Result<GridFunction> {
    if omega.is_empty() {
        return Err(Error::EmptyDirections);
    }
    let ctx = build_context(f, scales);
    let n = f.n();
    let alphas = omega.values();
    let merged = alphas
        .par_iter()
        .fold(
            || None::<Vec<f64>>,
            |acc, &alpha| {
                let mut buf = acc.unwrap_or_else(|| vec![0.0; n * n]);
                apply_direction(&ctx, alpha, &mut buf, false);
                Some(buf)
            },
        )
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(mut x), Some(y)) => {
                    for (xi, yi) in x.iter_mut().zip(&y) {
                        if *yi > *xi {
                            *xi = *yi;
                        }
                    }
                    Some(x)
                }
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            },
        )
        .expect("at least one direction");
    GridFunction::new(n, f.len_physical(), merged)
}
