//! dirmax-ref: reference brute-force parallelogram averaging.
//!
//! Deliberately self-contained (own argument parsing, own DMG1 reader and
//! writer, literal double-loop window sums) so it shares no code path with
//! the main engine. Used as the byte-exactness oracle in tests.
//!
//! Usage:
//!   dirmax-ref --input IN.dmg1 --alpha A [--alpha A2 ...] \
//!              --scales d1xd2[,d1xd2...] --output OUT.dmg1

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::process::ExitCode;

struct Grid {
    n: usize,
    len: f64,
    samples: Vec<f64>,
}

fn read_dmg1(path: &str) -> Result<Grid, String> {
    let mut r = BufReader::new(File::open(path).map_err(|e| format!("{path}: {e}"))?);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(|e| e.to_string())?;
    if &magic != b"DMAXGRD1" {
        return Err("bad magic".into());
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4).map_err(|e| e.to_string())?;
    let n = u32::from_le_bytes(b4) as usize;
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8).map_err(|e| e.to_string())?;
    let len = f64::from_le_bytes(b8);
    let mut samples = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        r.read_exact(&mut b8).map_err(|e| e.to_string())?;
        samples.push(f64::from_le_bytes(b8));
    }
    Ok(Grid { n, len, samples })
}

fn write_dmg1(path: &str, g: &Grid) -> Result<(), String> {
    let mut w = BufWriter::new(File::create(path).map_err(|e| format!("{path}: {e}"))?);
    w.write_all(b"DMAXGRD1").map_err(|e| e.to_string())?;
    w.write_all(&(g.n as u32).to_le_bytes()).map_err(|e| e.to_string())?;
    w.write_all(&g.len.to_le_bytes()).map_err(|e| e.to_string())?;
    for v in &g.samples {
        w.write_all(&v.to_le_bytes()).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())
}

fn brute_max(g: &Grid, alphas: &[f64], scales: &[(usize, usize)]) -> Grid {
    let n = g.n;
    let m = n as i64;
    let mut out = vec![0.0f64; n * n];
    for &alpha in alphas {
        for &(d1, d2) in scales {
            let d1 = d1.min(n / 2) as i64;
            let d2 = d2.min(n / 2) as i64;
            let count = ((2 * d1 + 1) * (2 * d2 + 1)) as f64;
            for x1 in 0..n as i64 {
                for x2 in 0..n as i64 {
                    let mut sum = 0.0;
                    for i in -d1..=d1 {
                        let row = ((x1 + i).rem_euclid(m) as usize) * n;
                        let shear = (i as f64 * alpha).round_ties_even() as i64;
                        for j in -d2..=d2 {
                            let col = (x2 + shear + j).rem_euclid(m) as usize;
                            sum += g.samples[row + col].abs();
                        }
                    }
                    let avg = sum / count;
                    let cell = &mut out[(x1 as usize) * n + x2 as usize];
                    if avg > *cell {
                        *cell = avg;
                    }
                }
            }
        }
    }
    Grid {
        n,
        len: g.len,
        samples: out,
    }
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("dirmax-ref: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let mut input = None;
    let mut output = None;
    let mut alphas: Vec<f64> = Vec::new();
    let mut scales: Vec<(usize, usize)> = Vec::new();

    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        let Some(value) = it.next() else {
            return fail(&format!("missing value for {flag}"));
        };
        match flag.as_str() {
            "--input" => input = Some(value.clone()),
            "--output" => output = Some(value.clone()),
            "--alpha" => match value.parse::<f64>() {
                Ok(a) if (0.0..1.0).contains(&a) => alphas.push(a),
                _ => return fail(&format!("bad alpha {value}")),
            },
            "--scales" => {
                for part in value.split(',') {
                    let Some((a, b)) = part.split_once('x') else {
                        return fail(&format!("bad scale entry {part}"));
                    };
                    match (a.parse::<usize>(), b.parse::<usize>()) {
                        (Ok(d1), Ok(d2)) if d1 >= 1 && d2 >= 1 => scales.push((d1, d2)),
                        _ => return fail(&format!("bad scale entry {part}")),
                    }
                }
            }
            other => return fail(&format!("unknown flag {other}")),
        }
    }
    let (Some(input), Some(output)) = (input, output) else {
        return fail("--input and --output are required");
    };
    if alphas.is_empty() || scales.is_empty() {
        return fail("need at least one --alpha and one --scales entry");
    }
    let grid = match read_dmg1(&input) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let out = brute_max(&grid, &alphas, &scales);
    match write_dmg1(&output, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
