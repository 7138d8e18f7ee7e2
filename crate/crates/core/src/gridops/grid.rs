//! Real-valued samples on an n-by-n periodic grid.
//!
//! Storage is row-major in the first coordinate: `samples[x1 * n + x2]`.
//! The binary format "DMG1" is the 8-byte magic `DMAXGRD1`, `u32` n
//! (little-endian), `f64` physical side length L, then the n^2 samples as
//! little-endian `f64` in storage order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const DMG1_MAGIC: &[u8; 8] = b"DMAXGRD1";

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    len: f64,
    samples: Vec<f64>,
}

impl GridFunction {
    pub fn new(n: usize, len: f64, samples: Vec<f64>) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::BadGridDim(n));
        }
        if !(len > 0.0) || !len.is_finite() {
            return Err(Error::BadSideLength(len));
        }
        if samples.len() != n * n {
            return Err(Error::BadSampleCount {
                got: samples.len(),
                expected: n * n,
            });
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample);
        }
        Ok(GridFunction { n, len, samples })
    }

    pub fn zeros(n: usize, len: f64) -> Result<Self> {
        Self::new(n, len, vec![0.0; n * n])
    }

    pub fn from_fn(n: usize, len: f64, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut samples = vec![0.0; n * n];
        for x1 in 0..n {
            for x2 in 0..n {
                samples[x1 * n + x2] = f(x1, x2);
            }
        }
        Self::new(n, len, samples)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len_physical(&self) -> f64 {
        self.len
    }

    /// Grid spacing L / n.
    #[inline]
    pub fn spacing(&self) -> f64 {
        self.len / self.n as f64
    }

    #[inline]
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    #[inline]
    pub fn at(&self, x1: usize, x2: usize) -> f64 {
        self.samples[x1 * self.n + x2]
    }

    /// Plain Euclidean norm of the sample vector.
    pub fn l2(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn linf(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.n, self.len, self.samples.iter().map(|v| c * v).collect())
    }

    /// Pointwise sum; grids must share n and L.
    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::BadGridDim(other.n));
        }
        Self::new(
            self.n,
            self.len,
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.add(&other.scaled(-1.0)?)
    }

    pub fn abs(&self) -> Self {
        GridFunction {
            n: self.n,
            len: self.len,
            samples: self.samples.iter().map(|v| v.abs()).collect(),
        }
    }

    /// Pointwise maximum in place.
    pub fn max_assign(&mut self, other: &GridFunction) {
        for (a, b) in self.samples.iter_mut().zip(&other.samples) {
            if *b > *a {
                *a = *b;
            }
        }
    }

    pub fn write_dmg1(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(DMG1_MAGIC)?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&self.len.to_le_bytes())?;
        for v in &self.samples {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_dmg1(path: &Path) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)
            .map_err(|_| Error::GridFormat("truncated header".into()))?;
        if &magic != DMG1_MAGIC {
            return Err(Error::GridFormat("bad magic".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)
            .map_err(|_| Error::GridFormat("truncated dimension".into()))?;
        let n = u32::from_le_bytes(b4) as usize;
        let mut b8 = [0u8; 8];
        r.read_exact(&mut b8)
            .map_err(|_| Error::GridFormat("truncated side length".into()))?;
        let len = f64::from_le_bytes(b8);
        let mut samples = Vec::with_capacity(n.saturating_mul(n));
        for _ in 0..n * n {
            r.read_exact(&mut b8)
                .map_err(|_| Error::GridFormat("truncated samples".into()))?;
            samples.push(f64::from_le_bytes(b8));
        }
        Self::new(n, len, samples)
    }

    /// 8-bit PGM with values normalized to the sample range, for viewing.
    pub fn write_pgm(&self, path: &Path) -> Result<()> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &v in &self.samples {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let span = if hi > lo { hi - lo } else { 1.0 };
        let mut w = BufWriter::new(File::create(path)?);
        write!(w, "P5\n{} {}\n255\n", self.n, self.n)?;
        for &v in &self.samples {
            let b = ((v - lo) / span * 255.0).round().clamp(0.0, 255.0) as u8;
            w.write_all(&[b])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dimensions() {
        assert!(GridFunction::zeros(8, 8.0).is_err());
        assert!(GridFunction::zeros(24, 24.0).is_err());
        assert!(GridFunction::zeros(16, 16.0).is_ok());
    }

    #[test]
    fn rejects_non_finite() {
        let mut s = vec![0.0; 256];
        s[3] = f64::NAN;
        assert!(GridFunction::new(16, 16.0, s).is_err());
    }

    #[test]
    fn dmg1_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.dmg1");
        let g = GridFunction::from_fn(16, 4.0, |a, b| (a * 31 + b) as f64 * 0.125).unwrap();
        g.write_dmg1(&path).unwrap();
        let h = GridFunction::read_dmg1(&path).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn dmg1_rejects_corrupt_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.dmg1");
        std::fs::write(&path, b"NOTAGRID????????").unwrap();
        assert!(matches!(
            GridFunction::read_dmg1(&path),
            Err(Error::GridFormat(_))
        ));
    }
}
