//! Direction sets on the slope chart (0,1) and their lacunarity certificates.
//!
//! A set is 1-lacunary when its points, read toward a limit witness `v_inf`,
//! satisfy the two-sided gap condition `|gap|/2 < dist-to-limit < |gap|` for
//! every consecutive pair. An order-N certificate is a nested chain
//! `O_1 c O_2 c ... c O_N` where each level inserts (possibly empty)
//! 1-lacunary runs into the gaps of the previous one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for the strict lacunary inequalities.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Guaranteed bound for [`certify_log_order`]: order <= `LOG_ORDER_SLOPE *
/// log2(n) + LOG_ORDER_OFFSET` for a set of n slopes. The construction
/// inserts at least the count-median of every populated gap per level, so
/// gap populations at least halve each level.
pub const LOG_ORDER_SLOPE: f64 = 1.0;
pub const LOG_ORDER_OFFSET: f64 = 1.0;

/// A direction identified with the line of slope `value` against the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Slope(f64);

impl Slope {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(Slope(value))
        } else {
            Err(Error::SlopeOutOfRange(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Witness for one inserted 1-lacunary run: the host gap, the run's limit
/// slope and the chain level (1-based) it was inserted at. The base level
/// records the whole chart (0,1) as its gap. `v_inf` may lie outside (0,1);
/// only distances to it enter the lacunary condition.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RunWitness {
    pub level: usize,
    pub gap: (f64, f64),
    pub v_inf: f64,
}

/// Nested chain of slope sets with per-run lacunary witnesses.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LacunaryCertificate {
    pub order: usize,
    pub chain: Vec<Vec<Slope>>,
    pub witnesses: Vec<RunWitness>,
}

/// A strictly increasing finite set of slopes with an optional certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlopeSet {
    pub slopes: Vec<Slope>,
    pub certificate: Option<LacunaryCertificate>,
}

impl SlopeSet {
    /// Builds a set from raw values; sorts and rejects duplicates.
    pub fn new(values: &[f64]) -> Result<Self> {
        let mut slopes = values
            .iter()
            .map(|&v| Slope::new(v))
            .collect::<Result<Vec<_>>>()?;
        slopes.sort_by(|a, b| a.value().total_cmp(&b.value()));
        for pair in slopes.windows(2) {
            if pair[0].value() == pair[1].value() {
                return Err(Error::DuplicateSlope(pair[0].value()));
            }
        }
        Ok(SlopeSet {
            slopes,
            certificate: None,
        })
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn values(&self) -> Vec<f64> {
        self.slopes.iter().map(|s| s.value()).collect()
    }

    pub fn contains(&self, v: f64) -> bool {
        self.slopes.iter().any(|s| s.value() == v)
    }
}

/// Outcome of the 1-lacunary test. `first_violation` is the 1-based index of
/// the first consecutive pair breaking the two-sided condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LacunaryCheck {
    pub ok: bool,
    pub first_violation: Option<usize>,
}

#[inline]
fn strictly_less(a: f64, b: f64, tol: f64) -> bool {
    // Strict inequality with relative tolerance: a < b * (1 - tol).
    a < b * (1.0 - tol)
}

/// Tests the two-sided lacunary condition for a monotone sequence tending
/// toward `v_inf`. The sequence must have at least two elements and be
/// strictly monotone with `v_inf` on its limit side (outside the range).
pub fn is_one_lacunary(seq: &[f64], v_inf: f64, tol: f64) -> Result<LacunaryCheck> {
    if seq.len() < 2 {
        return Err(Error::SequenceTooShort {
            needed: 2,
            got: seq.len(),
        });
    }
    if !v_inf.is_finite() || seq.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateInput("non-finite slope value".into()));
    }
    let increasing = seq[1] > seq[0];
    for (i, pair) in seq.windows(2).enumerate() {
        let ok = if increasing {
            pair[1] > pair[0]
        } else {
            pair[1] < pair[0]
        };
        if !ok {
            return Err(Error::NonMonotone { index: i + 1 });
        }
    }
    let (lo, hi) = (
        seq.iter().cloned().fold(f64::INFINITY, f64::min),
        seq.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    );
    if v_inf > lo && v_inf < hi {
        return Err(Error::WitnessInsideRange { v_inf, lo, hi });
    }
    let toward = if increasing { v_inf >= hi } else { v_inf <= lo };
    if !toward {
        return Err(Error::WitnessWrongSide { v_inf });
    }

    for (k, pair) in seq.windows(2).enumerate() {
        let gap = (pair[0] - pair[1]).abs();
        let dist = (pair[1] - v_inf).abs();
        if !(strictly_less(0.5 * gap, dist, tol) && strictly_less(dist, gap, tol)) {
            return Ok(LacunaryCheck {
                ok: false,
                first_violation: Some(k + 1),
            });
        }
    }
    Ok(LacunaryCheck {
        ok: true,
        first_violation: None,
    })
}

/// Which endpoint of a gap an inserted run tends toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapEnd {
    Lower,
    Upper,
}

/// One inserted run, either explicit slopes with their limit witness or a
/// geometric run generated inside the host gap.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum RunShape {
    Explicit { slopes: Vec<f64>, v_inf: f64 },
    Geometric { ratio: f64, count: usize, toward: GapEnd },
}

/// Insertion rule for one certificate level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum LevelRule {
    /// Insert nothing anywhere; the chain level repeats the previous set.
    Empty,
    /// Apply the same generated run in every gap of the previous level.
    EveryGap(RunShape),
    /// Explicit runs, each resolved to the gap containing it.
    Runs(Vec<RunShape>),
}

/// Recursive insertion description consumed by [`build_n_lacunary`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildSpec {
    /// Base 1-lacunary run occupying the chart (0,1).
    pub base: RunShape,
    /// Rules for levels 2..=N.
    pub levels: Vec<LevelRule>,
}

fn geometric_run_in_gap(lo: f64, hi: f64, ratio: f64, count: usize, toward: GapEnd) -> (Vec<f64>, f64) {
    let width = hi - lo;
    let mut pts = Vec::with_capacity(count);
    match toward {
        GapEnd::Lower => {
            for j in 1..=count {
                pts.push(lo + width * ratio.powi(j as i32));
            }
            pts.reverse(); // increasing order
            (pts, lo)
        }
        GapEnd::Upper => {
            for j in 1..=count {
                pts.push(hi - width * ratio.powi(j as i32));
            }
            (pts, hi)
        }
    }
}

/// Orients a sorted run toward its witness: decreasing when the witness is
/// below, increasing when above.
fn oriented(run_sorted: &[f64], v_inf: f64) -> Vec<f64> {
    let mut seq = run_sorted.to_vec();
    if !seq.is_empty() && v_inf <= seq[0] {
        seq.reverse();
    }
    seq
}

fn validate_run(
    level: usize,
    gap: (f64, f64),
    run_sorted: &[f64],
    v_inf: f64,
    tol: f64,
) -> Result<()> {
    for &p in run_sorted {
        if p <= gap.0 || p >= gap.1 {
            return Err(Error::RunOutsideGap {
                level,
                lo: gap.0,
                hi: gap.1,
            });
        }
    }
    if run_sorted.len() >= 2 {
        let check = is_one_lacunary(&oriented(run_sorted, v_inf), v_inf, tol)?;
        if !check.ok {
            return Err(Error::RunNotLacunary {
                level,
                lo: gap.0,
                hi: gap.1,
                pair: check.first_violation.unwrap_or(0),
            });
        }
    }
    Ok(())
}

/// Constructs an N-lacunary set level by level, validating every inserted
/// run against its host gap and recording witnesses.
pub fn build_n_lacunary(spec: &BuildSpec, tol: f64) -> Result<SlopeSet> {
    let chart = (0.0, 1.0);
    let (base_pts, base_vinf) = match &spec.base {
        RunShape::Explicit { slopes, v_inf } => {
            let mut s = slopes.clone();
            s.sort_by(f64::total_cmp);
            (s, *v_inf)
        }
        RunShape::Geometric { ratio, count, toward } => {
            if !(*ratio > 1.0 / 3.0 && *ratio < 0.5) {
                return Err(Error::RatioOutOfRange(*ratio));
            }
            geometric_run_in_gap(chart.0, chart.1, *ratio, *count, *toward)
        }
    };
    if base_pts.is_empty() {
        return Err(Error::EmptyDirections);
    }
    validate_run(1, chart, &base_pts, base_vinf, tol)?;

    let mut chain: Vec<Vec<f64>> = vec![base_pts.clone()];
    let mut witnesses = vec![RunWitness {
        level: 1,
        gap: chart,
        v_inf: base_vinf,
    }];
    let mut current = base_pts;

    for (li, rule) in spec.levels.iter().enumerate() {
        let level = li + 2;
        let gaps: Vec<(f64, f64)> = current.windows(2).map(|w| (w[0], w[1])).collect();
        let mut inserted: Vec<f64> = Vec::new();
        match rule {
            LevelRule::Empty => {}
            LevelRule::EveryGap(shape) => {
                for &(lo, hi) in &gaps {
                    let (pts, v_inf) = match shape {
                        RunShape::Geometric { ratio, count, toward } => {
                            if !(*ratio > 1.0 / 3.0 && *ratio < 0.5) {
                                return Err(Error::RatioOutOfRange(*ratio));
                            }
                            geometric_run_in_gap(lo, hi, *ratio, *count, *toward)
                        }
                        RunShape::Explicit { .. } => {
                            return Err(Error::Config(
                                "EveryGap rules must use generated (Geometric) runs".into(),
                            ))
                        }
                    };
                    if pts.is_empty() {
                        continue;
                    }
                    validate_run(level, (lo, hi), &pts, v_inf, tol)?;
                    witnesses.push(RunWitness {
                        level,
                        gap: (lo, hi),
                        v_inf,
                    });
                    inserted.extend_from_slice(&pts);
                }
            }
            LevelRule::Runs(runs) => {
                for shape in runs {
                    let (pts, v_inf) = match shape {
                        RunShape::Explicit { slopes, v_inf } => {
                            let mut s = slopes.clone();
                            s.sort_by(f64::total_cmp);
                            (s, *v_inf)
                        }
                        RunShape::Geometric { .. } => {
                            return Err(Error::Config(
                                "explicit per-gap runs must list their slopes".into(),
                            ))
                        }
                    };
                    if pts.is_empty() {
                        continue;
                    }
                    // Resolve to the gap containing the run.
                    let gap = gaps
                        .iter()
                        .find(|&&(lo, hi)| pts[0] > lo && pts[pts.len() - 1] < hi)
                        .copied()
                        .ok_or(Error::RunOutsideGap {
                            level,
                            lo: pts[0],
                            hi: pts[pts.len() - 1],
                        })?;
                    validate_run(level, gap, &pts, v_inf, tol)?;
                    witnesses.push(RunWitness {
                        level,
                        gap,
                        v_inf,
                    });
                    inserted.extend_from_slice(&pts);
                }
            }
        }
        let mut next = current.clone();
        next.extend_from_slice(&inserted);
        next.sort_by(f64::total_cmp);
        for pair in next.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateSlope(pair[0]));
            }
        }
        chain.push(next.clone());
        current = next;
    }

    let order = chain.len();
    let chain_slopes = chain
        .into_iter()
        .map(|level| level.into_iter().map(Slope::new).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let slopes = chain_slopes.last().expect("nonempty chain").clone();
    Ok(SlopeSet {
        slopes,
        certificate: Some(LacunaryCertificate {
            order,
            chain: chain_slopes,
            witnesses,
        }),
    })
}

/// One violation found by [`verify_certificate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ChainEmpty,
    OrderMismatch { declared: usize, actual: usize },
    InclusionViolation { level: usize },
    FinalSetMismatch,
    MissingWitness { level: usize, gap: (f64, f64) },
    RunNotLacunary { level: usize, gap: (f64, f64), pair: usize },
    WitnessRejected { level: usize, gap: (f64, f64) },
}

/// Report of a total certificate check; `valid` iff no violations.
#[derive(Debug, Clone)]
pub struct CertReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

fn is_subset(a: &[f64], b: &[f64]) -> bool {
    // Both sorted.
    let mut it = b.iter();
    'outer: for &x in a {
        for &y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Splits the inserted points of one level into maximal runs keyed by the
/// host gap of the previous level. `prev` empty means the base level, hosted
/// by the whole chart.
fn maximal_runs(prev: &[f64], cur: &[f64]) -> Vec<((f64, f64), Vec<f64>)> {
    let inserted: Vec<f64> = cur.iter().cloned().filter(|v| !prev.contains(v)).collect();
    if inserted.is_empty() {
        return Vec::new();
    }
    if prev.is_empty() {
        return vec![((0.0, 1.0), inserted)];
    }
    let mut runs: Vec<((f64, f64), Vec<f64>)> = Vec::new();
    for &p in &inserted {
        let lo = prev
            .iter()
            .rev()
            .find(|&&q| q < p)
            .copied()
            .unwrap_or(0.0);
        let hi = prev.iter().find(|&&q| q > p).copied().unwrap_or(1.0);
        match runs.last_mut() {
            Some((gap, pts)) if *gap == (lo, hi) => pts.push(p),
            _ => runs.push(((lo, hi), vec![p])),
        }
    }
    runs
}

/// Total checker: inclusions hold, the final chain level equals the set, and
/// every inserted run passes the 1-lacunary test with its recorded witness.
pub fn verify_certificate(set: &SlopeSet, cert: &LacunaryCertificate, tol: f64) -> Result<CertReport> {
    if cert.chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let mut violations = Vec::new();
    if cert.order != cert.chain.len() {
        violations.push(Violation::OrderMismatch {
            declared: cert.order,
            actual: cert.chain.len(),
        });
    }
    let chain: Vec<Vec<f64>> = cert
        .chain
        .iter()
        .map(|l| l.iter().map(|s| s.value()).collect())
        .collect();
    for (k, pair) in chain.windows(2).enumerate() {
        if !is_subset(&pair[0], &pair[1]) {
            violations.push(Violation::InclusionViolation { level: k + 2 });
        }
    }
    let set_vals = set.values();
    if chain.last().map(|l| l.as_slice()) != Some(set_vals.as_slice()) {
        violations.push(Violation::FinalSetMismatch);
    }

    for (li, cur) in chain.iter().enumerate() {
        let level = li + 1;
        let prev: &[f64] = if li == 0 { &[] } else { &chain[li - 1] };
        for (gap, run) in maximal_runs(prev, cur) {
            let witness = cert
                .witnesses
                .iter()
                .find(|w| w.level == level && w.gap == gap);
            let Some(w) = witness else {
                violations.push(Violation::MissingWitness { level, gap });
                continue;
            };
            if run.len() < 2 {
                continue; // single-point run: vacuously 1-lacunary
            }
            match is_one_lacunary(&oriented(&run, w.v_inf), w.v_inf, tol) {
                Ok(check) if check.ok => {}
                Ok(check) => violations.push(Violation::RunNotLacunary {
                    level,
                    gap,
                    pair: check.first_violation.unwrap_or(0),
                }),
                Err(_) => violations.push(Violation::WitnessRejected { level, gap }),
            }
        }
    }
    Ok(CertReport {
        valid: violations.is_empty(),
        violations,
    })
}

/// Classical geometric run `anchor * ratio^k`, k = 1..=count, certified
/// order 1 with limit 0. The ratio must lie in (1/3, 1/2) for the strict
/// two-sided condition.
pub fn geometric_slopes(ratio: f64, count: usize, anchor: Slope) -> Result<SlopeSet> {
    if !(ratio > 1.0 / 3.0 && ratio < 0.5) {
        return Err(Error::RatioOutOfRange(ratio));
    }
    if count == 0 {
        return Err(Error::EmptyDirections);
    }
    let mut vals: Vec<f64> = (1..=count)
        .map(|k| anchor.value() * ratio.powi(k as i32))
        .collect();
    vals.reverse();
    if vals.len() >= 2 {
        let check = is_one_lacunary(&oriented(&vals, 0.0), 0.0, DEFAULT_TOL)?;
        if !check.ok {
            return Err(Error::RunNotLacunary {
                level: 1,
                lo: 0.0,
                hi: 1.0,
                pair: check.first_violation.unwrap_or(0),
            });
        }
    }
    let slopes = vals
        .iter()
        .map(|&v| Slope::new(v))
        .collect::<Result<Vec<_>>>()?;
    let chain = vec![slopes.clone()];
    Ok(SlopeSet {
        slopes,
        certificate: Some(LacunaryCertificate {
            order: 1,
            chain,
            witnesses: vec![RunWitness {
                level: 1,
                gap: (0.0, 1.0),
                v_inf: 0.0,
            }],
        }),
    })
}

/// Feasible witness window for a full run toward one side, or None.
///
/// For a decreasing run (w_1 > w_2 > ... > w_m) toward a witness v below,
/// every pair requires v in (w_{k+1} - g_k, w_{k+1} - g_k/2); the run is
/// 1-lacunary iff the intersection of these windows is nonempty.
fn witness_window(sorted: &[f64], toward: GapEnd) -> Option<f64> {
    if sorted.len() < 2 {
        return None;
    }
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    match toward {
        GapEnd::Lower => {
            for w in sorted.windows(2) {
                let g = w[1] - w[0];
                lo = lo.max(w[0] - g);
                hi = hi.min(w[0] - 0.5 * g);
            }
        }
        GapEnd::Upper => {
            for w in sorted.windows(2) {
                let g = w[1] - w[0];
                lo = lo.max(w[1] + 0.5 * g);
                hi = hi.min(w[1] + g);
            }
        }
    }
    // Keep a real margin so the strict checks pass afterwards.
    let width = hi - lo;
    if width > 1e-9 * sorted[sorted.len() - 1].abs().max(1e-300) {
        Some(0.5 * (lo + hi))
    } else {
        None
    }
}

/// Greedy geometric cascade toward the lower gap endpoint: from distance d,
/// the next point must sit at distance in (d/3, d/2); among those take the
/// one closest to 0.4*d, ties toward the smaller slope.
fn cascade_picks(gap_lo: f64, start: f64, candidates: &[f64]) -> Vec<f64> {
    let mut picks = Vec::new();
    let mut d = start - gap_lo;
    loop {
        let lo_d = d / 3.0;
        let hi_d = d / 2.0;
        let target = gap_lo + 0.4 * d;
        let mut best: Option<f64> = None;
        for &c in candidates {
            let cd = c - gap_lo;
            if cd > lo_d * (1.0 + 1e-9) && cd < hi_d * (1.0 - 1e-9) && !picks.contains(&c) {
                let better = match best {
                    None => true,
                    Some(b) => {
                        let (da, db) = ((c - target).abs(), (b - target).abs());
                        da < db || (da == db && c < b)
                    }
                };
                if better {
                    best = Some(c);
                }
            }
        }
        match best {
            Some(b) => {
                picks.push(b);
                d = b - gap_lo;
            }
            None => break,
        }
    }
    picks
}

/// Certifies an arbitrary finite set with order O(log n).
///
/// Per level, every populated gap either absorbs all its remaining points as
/// one 1-lacunary run (when a feasible witness exists) or inserts its
/// count-median followed by a geometric cascade toward the lower endpoint.
/// The median insertion halves gap populations, giving the logarithmic bound.
pub fn certify_log_order(set: &SlopeSet) -> Result<LacunaryCertificate> {
    if set.len() < 2 {
        return Err(Error::SequenceTooShort {
            needed: 2,
            got: set.len(),
        });
    }
    let all = set.values();
    let tol = DEFAULT_TOL;

    // gaps as (lo, hi, remaining points inside), starting from the chart
    let mut gaps: Vec<(f64, f64, Vec<f64>)> = vec![(0.0, 1.0, all.clone())];
    let mut chain: Vec<Vec<f64>> = Vec::new();
    let mut witnesses: Vec<RunWitness> = Vec::new();
    let mut placed: Vec<f64> = Vec::new();
    let mut level = 0usize;

    while gaps.iter().any(|(_, _, pts)| !pts.is_empty()) {
        level += 1;
        let mut next_gaps: Vec<(f64, f64, Vec<f64>)> = Vec::new();
        for (lo, hi, pts) in gaps {
            if pts.is_empty() {
                next_gaps.push((lo, hi, pts));
                continue;
            }
            // Fast path: all remaining points as a single run.
            let mut run: Option<(Vec<f64>, f64)> = None;
            if pts.len() == 1 {
                run = Some((pts.clone(), lo));
            } else {
                for toward in [GapEnd::Lower, GapEnd::Upper] {
                    if let Some(v) = witness_window(&pts, toward) {
                        if is_one_lacunary(&oriented(&pts, v), v, tol)
                            .map(|c| c.ok)
                            .unwrap_or(false)
                        {
                            run = Some((pts.clone(), v));
                            break;
                        }
                    }
                }
            }
            let (run_pts, v_inf) = match run {
                Some(r) => r,
                None => {
                    // Median by count, then geometric cascade toward `lo`.
                    let median = pts[(pts.len() - 1) / 2];
                    let mut picks = vec![median];
                    picks.extend(cascade_picks(lo, median, &pts));
                    picks.sort_by(f64::total_cmp);
                    let ok = picks.len() < 2
                        || is_one_lacunary(&oriented(&picks, lo), lo, tol)
                            .map(|c| c.ok)
                            .unwrap_or(false);
                    if ok {
                        (picks, lo)
                    } else {
                        (vec![median], lo)
                    }
                }
            };
            witnesses.push(RunWitness {
                level,
                gap: (lo, hi),
                v_inf,
            });
            placed.extend_from_slice(&run_pts);
            // Split the gap by the inserted points.
            let mut bounds = vec![lo];
            bounds.extend_from_slice(&run_pts);
            bounds.push(hi);
            for w in bounds.windows(2) {
                let inside: Vec<f64> = pts
                    .iter()
                    .cloned()
                    .filter(|&p| p > w[0] && p < w[1])
                    .collect();
                next_gaps.push((w[0], w[1], inside));
            }
        }
        placed.sort_by(f64::total_cmp);
        chain.push(placed.clone());
        gaps = next_gaps;
    }

    // Base level witness covers the whole chart.
    if let Some(w) = witnesses.iter_mut().find(|w| w.level == 1) {
        w.gap = (0.0, 1.0);
    }
    let order = chain.len();
    let chain_slopes = chain
        .into_iter()
        .map(|l| l.into_iter().map(Slope::new).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(LacunaryCertificate {
        order,
        chain: chain_slopes,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric_seq(ratio: f64, count: usize) -> Vec<f64> {
        (1..=count).map(|k| ratio.powi(k as i32)).collect()
    }

    #[test]
    fn one_lacunary_accepts_ratio_04() {
        // 0.5*0.6*l^k < l^{k+1} < 0.6*l^k holds iff l in (1/3, 1/2)
        let seq = geometric_seq(0.4, 6);
        let check = is_one_lacunary(&seq, 0.0, DEFAULT_TOL).unwrap();
        assert!(check.ok);
    }

    #[test]
    fn one_lacunary_rejects_ratio_05_at_first_pair() {
        // boundary equality: dist-to-limit equals half the gap exactly
        let seq = geometric_seq(0.5, 6);
        let check = is_one_lacunary(&seq, 0.0, DEFAULT_TOL).unwrap();
        assert!(!check.ok);
        assert_eq!(check.first_violation, Some(1));
    }

    #[test]
    fn one_lacunary_rejects_ratio_025() {
        let seq = geometric_seq(0.25, 6);
        let check = is_one_lacunary(&seq, 0.0, DEFAULT_TOL).unwrap();
        assert!(!check.ok);
    }

    #[test]
    fn one_lacunary_guards_inputs() {
        assert!(matches!(
            is_one_lacunary(&[0.4], 0.0, DEFAULT_TOL),
            Err(Error::SequenceTooShort { .. })
        ));
        assert!(matches!(
            is_one_lacunary(&[0.4, 0.5, 0.45], 0.0, DEFAULT_TOL),
            Err(Error::NonMonotone { .. })
        ));
        assert!(matches!(
            is_one_lacunary(&[0.4, 0.2], 0.3, DEFAULT_TOL),
            Err(Error::WitnessInsideRange { .. })
        ));
        assert!(matches!(
            is_one_lacunary(&[0.4, 0.2], 0.9, DEFAULT_TOL),
            Err(Error::WitnessWrongSide { .. })
        ));
    }

    #[test]
    fn build_order_one() {
        let spec = BuildSpec {
            base: RunShape::Geometric {
                ratio: 0.4,
                count: 5,
                toward: GapEnd::Lower,
            },
            levels: vec![],
        };
        let set = build_n_lacunary(&spec, DEFAULT_TOL).unwrap();
        let cert = set.certificate.as_ref().unwrap();
        assert_eq!(cert.order, 1);
        assert!(verify_certificate(&set, cert, DEFAULT_TOL).unwrap().valid);
    }

    #[test]
    fn build_order_two_geometric_insertions() {
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
        assert_eq!(cert.order, 2);
        assert_eq!(set.len(), 4 + 3 * 3); // 4 base points, a 3-term run in each of the 3 gaps
        assert!(verify_certificate(&set, cert, DEFAULT_TOL).unwrap().valid);
    }

    #[test]
    fn build_empty_level_keeps_set() {
        let spec = BuildSpec {
            base: RunShape::Geometric {
                ratio: 0.4,
                count: 3,
                toward: GapEnd::Lower,
            },
            levels: vec![LevelRule::Empty],
        };
        let set = build_n_lacunary(&spec, DEFAULT_TOL).unwrap();
        let cert = set.certificate.as_ref().unwrap();
        assert_eq!(cert.order, 2);
        assert_eq!(cert.chain[0], cert.chain[1]);
        assert!(verify_certificate(&set, cert, DEFAULT_TOL).unwrap().valid);
    }

    #[test]
    fn verify_flags_broken_inclusion() {
        let spec = BuildSpec {
            base: RunShape::Geometric {
                ratio: 0.4,
                count: 3,
                toward: GapEnd::Lower,
            },
            levels: vec![LevelRule::Empty, LevelRule::Empty],
        };
        let set = build_n_lacunary(&spec, DEFAULT_TOL).unwrap();
        let mut cert = set.certificate.clone().unwrap();
        cert.chain[1] = vec![Slope::new(0.7).unwrap()]; // breaks both inclusions
        let report = verify_certificate(&set, &cert, DEFAULT_TOL).unwrap();
        assert!(!report.valid);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::InclusionViolation { .. })));
    }

    #[test]
    fn verify_flags_perturbed_witness() {
        let spec = BuildSpec {
            base: RunShape::Geometric {
                ratio: 0.4,
                count: 4,
                toward: GapEnd::Lower,
            },
            levels: vec![],
        };
        let set = build_n_lacunary(&spec, DEFAULT_TOL).unwrap();
        let mut cert = set.certificate.clone().unwrap();
        // Push the witness far enough that the check must flip.
        cert.witnesses[0].v_inf = -10.0;
        let report = verify_certificate(&set, &cert, DEFAULT_TOL).unwrap();
        assert!(!report.valid);
    }

    #[test]
    fn geometric_slopes_basic() {
        let set = geometric_slopes(0.4, 5, Slope::new(0.9).unwrap()).unwrap();
        assert_eq!(set.len(), 5);
        let cert = set.certificate.as_ref().unwrap();
        assert_eq!(cert.order, 1);
        assert!(verify_certificate(&set, cert, DEFAULT_TOL).unwrap().valid);
    }

    #[test]
    fn geometric_slopes_rejects_boundary_ratio() {
        assert!(matches!(
            geometric_slopes(0.5, 8, Slope::new(0.9).unwrap()),
            Err(Error::RatioOutOfRange(_))
        ));
        assert!(matches!(
            geometric_slopes(1.0 / 3.0, 8, Slope::new(0.9).unwrap()),
            Err(Error::RatioOutOfRange(_))
        ));
    }

    #[test]
    fn geometric_single_slope() {
        let set = geometric_slopes(0.45, 1, Slope::new(0.9).unwrap()).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.certificate.as_ref().unwrap().order, 1);
    }

    #[test]
    fn certify_pair_is_order_one() {
        let set = SlopeSet::new(&[0.1, 0.9]).unwrap();
        let cert = certify_log_order(&set).unwrap();
        assert_eq!(cert.order, 1);
        assert!(verify_certificate(&set, &cert, DEFAULT_TOL).unwrap().valid);
    }

    #[test]
    fn certify_equispaced_64() {
        let vals: Vec<f64> = (1..=64).map(|i| i as f64 / 65.0).collect();
        let set = SlopeSet::new(&vals).unwrap();
        let cert = certify_log_order(&set).unwrap();
        assert!(verify_certificate(&set, &cert, DEFAULT_TOL).unwrap().valid);
        // order <= log2(64) + 1; the exact value is a pinned regression
        assert!(cert.order <= 7, "order = {}", cert.order);
        assert_eq!(cert.order, crate::verify::pins::EQUISPACED_64_LOG_ORDER);
    }

    #[test]
    fn certify_respects_log_bound_across_sizes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for &size in &[2usize, 3, 5, 8, 16, 33, 64, 200] {
            let mut vals: Vec<f64> = Vec::new();
            while vals.len() < size {
                let v: f64 = rng.gen_range(0.001..0.999);
                if !vals.contains(&v) {
                    vals.push(v);
                }
            }
            let set = SlopeSet::new(&vals).unwrap();
            let cert = certify_log_order(&set).unwrap();
            assert!(verify_certificate(&set, &cert, DEFAULT_TOL).unwrap().valid);
            let bound = LOG_ORDER_SLOPE * (size as f64).log2() + LOG_ORDER_OFFSET;
            assert!(
                (cert.order as f64) <= bound + 1e-9,
                "size {size}: order {} > bound {bound}",
                cert.order
            );
        }
    }

    #[test]
    fn certify_does_not_inflate_geometric_run() {
        let set = geometric_slopes(0.4, 8, Slope::new(0.9).unwrap()).unwrap();
        let plain = SlopeSet::new(&set.values()).unwrap();
        let cert = certify_log_order(&plain).unwrap();
        assert!(cert.order <= 2, "order = {}", cert.order);
        assert!(verify_certificate(&plain, &cert, DEFAULT_TOL).unwrap().valid);
    }

    #[test]
    fn slope_set_rejects_duplicates_and_range() {
        assert!(SlopeSet::new(&[0.2, 0.2]).is_err());
        assert!(SlopeSet::new(&[0.0]).is_err());
        assert!(SlopeSet::new(&[1.0]).is_err());
    }
}
