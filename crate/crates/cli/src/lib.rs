//! `ghzppt` command-line driver.
//!
//! Exit codes for `classify`: 0 = full n-partite entangled, 1 = some split is
//! PPT (biseparable), 2 = input error. Other subcommands exit 0 on success;
//! `oracle-check` exits 1 when analytic and dense verdicts disagree.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ghzppt::json::{parse_state, report_to_json, state_to_json};
use ghzppt::oracle::MAX_ORACLE_QUBITS;
use ghzppt::state::MAX_DENSE_QUBITS;
use ghzppt::{
    classify_with_tolerance, dense_verdicts, enumerate_bipartitions, enumerate_canonical_betas,
    full_entanglement_threshold, ghz_closed_form_threshold, ghz_vector, is_ppt, is_ppt_dense, noise_thresholds,
    pt_spectrum_vs_coefficients, random_corpus, random_state, ClassificationReport, GhzDiagonalState, OracleTolerances,
    Sign, PPT_TOLERANCE,
};

pub const EXIT_FULL_ENTANGLED: i32 = 0;
pub const EXIT_BISEPARABLE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Largest `n` for `classify` and `threshold`.
pub const MAX_CLASSIFY_QUBITS: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "ghzppt", version, about = "Entanglement classification of GHZ-diagonal states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a state from JSON.
    Classify(InputArgs),
    /// Cross-check analytic and dense PPT verdicts on random states.
    OracleCheck(OracleArgs),
    /// Print random states as JSON.
    Random(RandomArgs),
    /// White-noise thresholds per split and for full entanglement.
    Threshold(InputArgs),
    /// Print the GHZ basis for n qubits.
    Basis(BasisArgs),
    /// Time the analytic and dense paths (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Path to a state file, `-` for stdin, or inline JSON.
    #[arg(long)]
    pub input: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Coefficients at or above `-tol` count as nonnegative.
    #[arg(long, default_value_t = PPT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, default_value_t = PPT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// More than one state prints one compact JSON document per line.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Repetitions per measurement; the median is reported.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[arg(long, default_value_t = 8)]
    pub analytic_min: usize,
    #[arg(long, default_value_t = 14)]
    pub analytic_max: usize,
    #[arg(long, default_value_t = 4)]
    pub dense_min: usize,
    #[arg(long, default_value_t = 8)]
    pub dense_max: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses `args` (including the program name) and runs the command against
/// the process's stdio.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs a parsed command. Diagnostics go to `err` as a single line.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a, out),
        Command::OracleCheck(a) => cmd_oracle_check(&a, out),
        Command::Random(a) => cmd_random(&a, out),
        Command::Threshold(a) => cmd_threshold(&a, out),
        Command::Basis(a) => cmd_basis(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_INPUT_ERROR
        }
    }
}

fn read_input(input: &str) -> anyhow::Result<String> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(input).with_context(|| format!("reading {input}"))
}

fn load_state(input: &str) -> anyhow::Result<GhzDiagonalState> {
    let state = parse_state(&read_input(input)?)?;
    if state.n() > MAX_CLASSIFY_QUBITS {
        bail!("n: {} exceeds the classify cap of {MAX_CLASSIFY_QUBITS}", state.n());
    }
    Ok(state)
}

fn check_tol(tol: f64) -> anyhow::Result<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        bail!("tol: must be a nonnegative number, got {tol}");
    }
    Ok(())
}

pub fn cmd_classify(args: &InputArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    check_tol(args.tol)?;
    let state = load_state(&args.input)?;
    let report = classify_with_tolerance(&state, args.tol)?;
    match args.format {
        Format::Json => writeln!(out, "{}", report_to_json(&report))?,
        Format::Table => write_report_table(&report, out)?,
    }
    Ok(if report.full_entangled { EXIT_FULL_ENTANGLED } else { EXIT_BISEPARABLE })
}

fn write_report_table(report: &ClassificationReport, out: &mut dyn Write) -> io::Result<()> {
    let verdict = if report.full_entangled {
        format!("full {}-partite entangled", report.n)
    } else {
        "not full entangled".to_string()
    };
    writeln!(
        out,
        "n = {}: {} ({}/{} splits PPT)",
        report.n,
        verdict,
        report.ppt_partitions.len(),
        report.partitions.len()
    )?;
    let width = report.partitions.iter().map(|v| v.partition.split_string().len()).max().unwrap_or(0).max(5);
    writeln!(out, "{:<width$} {:<4} worst", "split", "ppt")?;
    for v in &report.partitions {
        writeln!(
            out,
            "{:<width$} {:<4} {}[{}] = {}",
            v.partition.split_string(),
            if v.is_ppt { "yes" } else { "no" },
            v.worst.coefficient,
            v.worst.beta,
            v.worst.value
        )?;
    }
    Ok(())
}

pub fn cmd_oracle_check(args: &OracleArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    check_tol(args.tol)?;
    if !(2..=MAX_ORACLE_QUBITS).contains(&args.n) {
        bail!("n: {} outside the oracle range 2..={MAX_ORACLE_QUBITS}", args.n);
    }
    let band = OracleTolerances::default().psd;
    let mut mismatches = 0usize;
    let mut boundary = 0usize;
    let mut margin = f64::INFINITY;
    let mut spectrum_deviation = 0.0f64;
    let states = random_corpus(args.n, args.seed, args.count)?;
    for state in &states {
        for (partition, min_eig) in dense_verdicts(state)? {
            let dense_ppt = min_eig >= -band;
            let analytic = ghzppt::is_ppt_with_tolerance(state, partition, args.tol)?.is_ppt;
            margin = margin.min(min_eig.abs());
            if analytic != dense_ppt {
                if min_eig.abs() <= band {
                    boundary += 1;
                } else {
                    mismatches += 1;
                }
            }
            if args.n == 2 {
                spectrum_deviation = spectrum_deviation.max(pt_spectrum_vs_coefficients(state, partition)?);
            }
        }
    }
    let splits = (1usize << (args.n - 1)) - 1;
    match args.format {
        Format::Json => {
            let mut doc = json!({
                "n": args.n,
                "count": args.count,
                "seed": args.seed,
                "comparisons": args.count * splits,
                "mismatches": mismatches,
                "boundary_disagreements": boundary,
                "worst_margin": margin,
            });
            if args.n == 2 {
                doc["spectrum_deviation"] = json!(spectrum_deviation);
            }
            writeln!(out, "{doc}")?;
        }
        Format::Table => {
            writeln!(out, "n = {}, states = {}, seed = {}", args.n, args.count, args.seed)?;
            writeln!(out, "comparisons            {}", args.count * splits)?;
            writeln!(out, "mismatches             {mismatches}")?;
            writeln!(out, "boundary disagreements {boundary}")?;
            writeln!(out, "worst margin           {margin:e}")?;
            if args.n == 2 {
                writeln!(out, "spectrum deviation     {spectrum_deviation:e}")?;
            }
        }
    }
    Ok(if mismatches == 0 { 0 } else { 1 })
}

pub fn cmd_random(args: &RandomArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if args.count == 1 {
        writeln!(out, "{}", state_to_json(&random_state(args.n, args.seed)?))?;
        return Ok(0);
    }
    for state in random_corpus(args.n, args.seed, args.count)? {
        let compact: serde_json::Value = serde_json::from_str(&state_to_json(&state))?;
        writeln!(out, "{compact}")?;
    }
    Ok(0)
}

pub fn cmd_threshold(args: &InputArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let state = load_state(&args.input)?;
    let per_split = noise_thresholds(&state)?;
    let full = full_entanglement_threshold(&state)?;
    let closed = state.is_pure_ghz(PPT_TOLERANCE).then(|| ghz_closed_form_threshold(state.n()));
    match args.format {
        Format::Json => {
            let doc = json!({
                "n": state.n(),
                "partitions": per_split
                    .iter()
                    .map(|(p, t)| json!({"alpha1": p.alpha1().to_bit_string(), "threshold": t}))
                    .collect::<Vec<_>>(),
                "full_entanglement_threshold": full,
                "ghz_closed_form": closed,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Table => {
            let width = per_split.iter().map(|(p, _)| p.split_string().len()).max().unwrap_or(0).max(5);
            writeln!(out, "{:<width$} threshold", "split")?;
            for (p, t) in &per_split {
                writeln!(out, "{:<width$} {t}", p.split_string())?;
            }
            writeln!(out, "full entanglement threshold: {full}")?;
            if let Some(c) = closed {
                writeln!(out, "pure GHZ: closed form 2^n/(2^n+2) = {c}")?;
            }
        }
    }
    Ok(0)
}

pub fn cmd_basis(args: &BasisArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if !(1..=MAX_DENSE_QUBITS).contains(&args.n) {
        bail!("n: {} outside 1..={MAX_DENSE_QUBITS}", args.n);
    }
    let mut rows = Vec::new();
    for beta in enumerate_canonical_betas(args.n)? {
        for sign in Sign::BOTH {
            let v = ghz_vector(beta, sign);
            rows.push((beta, sign, v));
        }
    }
    match args.format {
        Format::Json => {
            let doc: Vec<_> = rows
                .iter()
                .map(|(b, s, v)| {
                    json!({
                        "beta": b.to_bit_string(),
                        "sign": s.to_string(),
                        "support": v.support(),
                        "amplitudes": v.entries().iter().map(|e| e.1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::from(doc))?;
        }
        Format::Table => {
            for (b, s, v) in &rows {
                let support: Vec<String> = v.support().iter().map(u64::to_string).collect();
                let amps: Vec<String> = v.entries().iter().map(|e| format!("{:+.17}", e.1)).collect();
                writeln!(out, "{b} {s} [{}] [{}]", support.join(", "), amps.join(", "))?;
            }
        }
    }
    Ok(0)
}

fn median_ms(count: usize, mut f: impl FnMut() -> anyhow::Result<()>) -> anyhow::Result<f64> {
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let start = Instant::now();
        f()?;
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    samples.sort_by(f64::total_cmp);
    Ok(samples[samples.len() / 2])
}

pub const BENCH_HEADER: &str = "path,n,partitions,median_ms";

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if args.count == 0 {
        bail!("count: must be positive");
    }
    if args.analytic_min < 2 || args.analytic_max > MAX_CLASSIFY_QUBITS {
        bail!("analytic range must lie in 2..={MAX_CLASSIFY_QUBITS}");
    }
    if args.dense_min < 2 || args.dense_max > MAX_ORACLE_QUBITS {
        bail!("dense range must lie in 2..={MAX_ORACLE_QUBITS}");
    }
    writeln!(out, "{BENCH_HEADER}")?;
    for n in args.analytic_min..=args.analytic_max {
        let state = random_state(n, args.seed ^ n as u64)?;
        let ms = median_ms(args.count, || {
            classify_with_tolerance(&state, PPT_TOLERANCE)?;
            Ok(())
        })?;
        writeln!(out, "analytic_classify,{n},{},{ms:.6}", (1usize << (n - 1)) - 1)?;
    }
    for n in args.dense_min..=args.dense_max {
        let state = random_state(n, args.seed ^ n as u64)?;
        let split = *enumerate_bipartitions(n)?.first().ok_or_else(|| anyhow!("no split"))?;
        let analytic = median_ms(args.count, || {
            is_ppt(&state, split)?;
            Ok(())
        })?;
        writeln!(out, "analytic_single_partition,{n},1,{analytic:.6}")?;
        let dense = median_ms(args.count, || {
            is_ppt_dense(&state, split)?;
            Ok(())
        })?;
        writeln!(out, "dense_single_partition,{n},1,{dense:.6}")?;
    }
    Ok(0)
}
