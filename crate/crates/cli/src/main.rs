//! dirmax: build lacunary direction sets, apply directional maximal
//! operators to grids, run the verification gates and the norm-growth
//! experiments.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/format error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirmax::directions::{build_n_lacunary, certify_log_order, geometric_slopes, BuildSpec, Slope, SlopeSet};
use dirmax::gridops::{directional_max, GridFunction, ScaleList};
use dirmax::verify::{
    self, all_passed, first_failure, run_experiment, write_outputs, ExperimentConfig, GateCheck,
    IntervalChain,
};

#[derive(Parser)]
#[command(name = "dirmax", version, about = "planar directional maximal operator laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a direction set with a lacunarity certificate.
    Gen(GenArgs),
    /// Apply the directional maximal operator to a DMG1 grid.
    Apply(ApplyArgs),
    /// Run a verification gate suite.
    Verify(VerifyArgs),
    /// Run an experiment config and write CSV + JSON reports.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Geometric run with this ratio (requires --count; ratio in (1/3, 1/2)).
    #[arg(long, conflicts_with_all = ["equispaced", "built"])]
    geometric: Option<f64>,
    /// Number of slopes for --geometric.
    #[arg(long, requires = "geometric")]
    count: Option<usize>,
    /// Anchor slope for --geometric (slopes are anchor * ratio^k).
    #[arg(long, default_value_t = 0.9)]
    anchor: f64,
    /// Equispaced slopes i/(n+1), certified to logarithmic order.
    #[arg(long, conflicts_with = "built")]
    equispaced: Option<usize>,
    /// Build spec JSON describing base run and per-level insertions.
    #[arg(long)]
    built: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApplyArgs {
    /// Input grid (DMG1).
    #[arg(long)]
    input: PathBuf,
    /// Direction-set JSON (as written by `gen`).
    #[arg(long)]
    directions: PathBuf,
    /// Scale lattice: "dyadic" or explicit "d1xd2,d1xd2,...".
    #[arg(long, default_value = "dyadic")]
    scales: String,
    /// Output grid; ".pgm" extension writes a normalized PGM view.
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which gate to run.
    #[arg(value_parser = ["kernels", "lemma1", "lemma2", "overlap"])]
    which: String,
    /// Interval-chain JSON for `lemma2` (fields: theta, intervals [{a,b}]).
    #[arg(long)]
    chain_file: Option<PathBuf>,
    /// Direction family for `overlap`: "equispaced:N", "geometric:RATIO:N"
    /// or a path to a direction-set JSON.
    #[arg(long)]
    family: Option<String>,
    /// Grid size for the sampled suites.
    #[arg(long, default_value_t = 128)]
    n: usize,
    /// Instance count for the sampled suites.
    #[arg(long)]
    count: Option<usize>,
    /// Seed override for the sampled suites.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment config JSON.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for the CSV and JSON reports.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Output file stem (defaults to the config file stem).
    #[arg(long)]
    stem: Option<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Experiment(args) => cmd_experiment(args),
    }
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let set = if let Some(ratio) = args.geometric {
        let count = args
            .count
            .ok_or_else(|| anyhow::anyhow!("--geometric requires --count"))?;
        geometric_slopes(ratio, count, Slope::new(args.anchor)?)?
    } else if let Some(count) = args.equispaced {
        if count == 0 {
            anyhow::bail!("--equispaced needs at least one slope");
        }
        let vals: Vec<f64> = (1..=count).map(|i| i as f64 / (count + 1) as f64).collect();
        let mut set = SlopeSet::new(&vals)?;
        if set.len() >= 2 {
            set.certificate = Some(certify_log_order(&set)?);
        }
        set
    } else if let Some(path) = &args.built {
        let spec: BuildSpec = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        build_n_lacunary(&spec, dirmax::directions::DEFAULT_TOL)?
    } else {
        anyhow::bail!("choose one of --geometric, --equispaced, --built");
    };
    let text = serde_json::to_string_pretty(&set)?;
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    if let Some(cert) = &set.certificate {
        eprintln!("generated {} slopes, certificate order {}", set.len(), cert.order);
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_scales(spec: &str, n: usize) -> anyhow::Result<ScaleList> {
    if spec == "dyadic" {
        return Ok(ScaleList::dyadic(n));
    }
    let mut pairs = Vec::new();
    for part in spec.split(',') {
        let (a, b) = part
            .split_once('x')
            .ok_or_else(|| anyhow::anyhow!("bad scale entry {part:?}; expected d1xd2"))?;
        pairs.push((a.trim().parse()?, b.trim().parse()?));
    }
    Ok(ScaleList::new(pairs)?)
}

fn cmd_apply(args: ApplyArgs) -> anyhow::Result<ExitCode> {
    let grid = GridFunction::read_dmg1(&args.input)?;
    let set: SlopeSet = serde_json::from_str(&std::fs::read_to_string(&args.directions)?)?;
    let scales = parse_scales(&args.scales, grid.n())?;
    let out = directional_max(&grid, &set, &scales)?;
    let ratio = out.l2() / grid.l2().max(f64::MIN_POSITIVE);
    if args.output.extension().and_then(|e| e.to_str()) == Some("pgm") {
        out.write_pgm(&args.output)?;
    } else {
        out.write_dmg1(&args.output)?;
    }
    println!("l2_ratio = {ratio}");
    Ok(ExitCode::SUCCESS)
}

fn print_checks(checks: &[GateCheck]) -> ExitCode {
    for c in checks {
        println!(
            "{} {} - {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    if all_passed(checks) {
        ExitCode::SUCCESS
    } else {
        if let Some(f) = first_failure(checks) {
            eprintln!("first failing check: {}", f.name);
        }
        ExitCode::from(1)
    }
}

fn parse_family(spec: &str) -> anyhow::Result<SlopeSet> {
    if let Some(rest) = spec.strip_prefix("equispaced:") {
        let count: usize = rest.parse()?;
        let vals: Vec<f64> = (1..=count).map(|i| i as f64 / (count + 1) as f64).collect();
        let mut set = SlopeSet::new(&vals)?;
        set.certificate = Some(certify_log_order(&set)?);
        return Ok(set);
    }
    if let Some(rest) = spec.strip_prefix("geometric:") {
        let mut parts = rest.split(':');
        let ratio: f64 = parts
            .next()
            .ok_or_else(|| anyhow::anyhow!("geometric:RATIO:COUNT"))?
            .parse()?;
        let count: usize = parts
            .next()
            .ok_or_else(|| anyhow::anyhow!("geometric:RATIO:COUNT"))?
            .parse()?;
        let anchor: f64 = match parts.next() {
            Some(a) => a.parse()?,
            None => 0.9,
        };
        return Ok(geometric_slopes(ratio, count, Slope::new(anchor)?)?);
    }
    let mut set: SlopeSet = serde_json::from_str(&std::fs::read_to_string(spec)?)?;
    if set.certificate.is_none() && set.len() >= 2 {
        set.certificate = Some(certify_log_order(&set)?);
    }
    Ok(set)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    match args.which.as_str() {
        "kernels" => Ok(print_checks(&verify::kernels_gate()?)),
        "lemma1" => {
            let count = args.count.unwrap_or(100);
            let seed = args.seed.unwrap_or(verify::LEMMA1_SUITE_SEED);
            Ok(print_checks(&verify::lemma1_gate(args.n, count, seed)?))
        }
        "lemma2" => {
            if let Some(path) = &args.chain_file {
                let chain: IntervalChain = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                let checks = verify::chain_gate(&chain, args.n, args.seed.unwrap_or(1))?;
                return Ok(print_checks(&checks));
            }
            let count = args.count.unwrap_or(20);
            let seed = args.seed.unwrap_or(verify::LEMMA2_SUITE_SEED);
            Ok(print_checks(&verify::lemma2_gate(args.n, count, seed)?))
        }
        "overlap" => {
            let family = args
                .family
                .as_deref()
                .ok_or_else(|| anyhow::anyhow!("overlap needs --family"))?;
            let set = parse_family(family)?;
            let (checks, mults) = verify::overlap_gate(&set)?;
            println!("multiplicity {}", mults.last().copied().unwrap_or(0));
            Ok(print_checks(&checks))
        }
        other => anyhow::bail!("unknown gate {other}"),
    }
}

fn cmd_experiment(args: ExperimentArgs) -> anyhow::Result<ExitCode> {
    let cfg: ExperimentConfig = serde_json::from_str(&std::fs::read_to_string(&args.config)?)?;
    let report = run_experiment(&cfg)?;
    let stem = match &args.stem {
        Some(s) => s.clone(),
        None => Path::new(&args.config)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("experiment")
            .to_string(),
    };
    let (csv_path, json_path) = write_outputs(&report, &args.out_dir, &stem)?;
    println!(
        "wrote {} rows to {} and {}",
        report.rows.len(),
        csv_path.display(),
        json_path.display()
    );
    Ok(ExitCode::SUCCESS)
}
