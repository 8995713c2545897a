//! The `adrt` command-line tool.
//!
//! Exit codes: 0 on success, 1 when validation fails (bad files, oracle
//! mismatch), 2 for usage errors and out-of-range arguments or sizes.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::bench::{fit_scaling, run_bench, write_bench_csv, BenchConfig, MAX_BENCH_LEVEL};
use crate::dline::{adrt_direct_full, digital_line};
use crate::error::{AdrtError, Result};
use crate::forward::adrt_single_quadrant_with_ledger;
use crate::inverse::iadrt_with_ledger;
use crate::io::{read_image, read_transform, write_image, write_transform, ImageFormat};
use crate::ledger::inverse_total;
use crate::quadrant::Quadrant;
use crate::random::{integer_image, rng};

/// Seed used by `oracle` and `bench` when none is given.
pub const DEFAULT_SEED: u64 = 0xADD7;
/// Largest size the brute-force oracle accepts.
pub const MAX_ORACLE_LEVEL: u32 = 7;
const MAX_LINE_LEVEL: u32 = 24;

#[derive(Debug, Parser)]
#[command(name = "adrt", version, about = "Approximate discrete Radon transform and its exact inverse")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform an image and write one transform file per quadrant.
    Forward {
        #[arg(long)]
        input: PathBuf,
        /// Output file. With `--quadrant all`, `.q0` .. `.q3` are inserted
        /// before the extension.
        #[arg(long)]
        output: PathBuf,
        /// 0, 1, 2, 3 or all.
        #[arg(long, default_value = "0")]
        quadrant: String,
        /// Input format; inferred from the extension when omitted.
        #[arg(long)]
        format: Option<ImageFormat>,
    },
    /// Reconstruct an image from a transform file.
    Inverse {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        format: Option<ImageFormat>,
        /// Warn about and clear nonzero padding instead of failing.
        #[arg(long)]
        lenient: bool,
    },
    /// Forward and inverse transform with an error and cost report.
    Roundtrip {
        #[arg(long)]
        input: PathBuf,
        /// JSON report path; printed to stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        format: Option<ImageFormat>,
    },
    /// Compare the fast transform with direct digital-line sums.
    Oracle {
        #[arg(long = "n")]
        n: u32,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Dump the pixels of one digital line as CSV.
    Lines {
        #[arg(long = "m")]
        m: u32,
        #[arg(long = "h", allow_hyphen_values = true)]
        h: i64,
        #[arg(long = "s")]
        s: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time forward and inverse transforms across sizes.
    Bench {
        #[arg(long, default_value_t = 4)]
        min_n: u32,
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// CSV output; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 4096)]
        memory_budget_mib: u64,
    },
}

/// JSON document written by `roundtrip`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundtripReport {
    pub n: u32,
    pub max_abs_err: f64,
    pub additions: u64,
    pub subtractions: u64,
    pub total_expected: u64,
    pub forward_seconds: f64,
    pub inverse_seconds: f64,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("adrt: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &AdrtError) -> i32 {
    match e {
        AdrtError::Dimension(_) | AdrtError::Index(_) | AdrtError::Precondition(_) => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Forward {
            input,
            output,
            quadrant,
            format,
        } => forward(&input, &output, &quadrant, format),
        Command::Inverse {
            input,
            output,
            format,
            lenient,
        } => inverse(&input, &output, format, lenient),
        Command::Roundtrip {
            input,
            report,
            format,
        } => roundtrip(&input, report.as_deref(), format),
        Command::Oracle { n, trials, seed } => oracle(n, trials, seed),
        Command::Lines { m, h, s, output } => lines(m, h, s, output.as_deref()),
        Command::Bench {
            min_n,
            max_n,
            reps,
            seed,
            output,
            memory_budget_mib,
        } => bench(
            BenchConfig {
                min_n,
                max_n,
                reps,
                seed,
                memory_budget_bytes: memory_budget_mib.saturating_mul(1 << 20),
            },
            output.as_deref(),
        ),
    }
}

fn parse_quadrants(spec: &str) -> Result<Vec<Quadrant>> {
    if spec.eq_ignore_ascii_case("all") {
        Ok(Quadrant::ALL.to_vec())
    } else {
        Ok(vec![spec.parse()?])
    }
}

/// `out.adrt` becomes `out.q<k>.adrt`.
pub fn quadrant_path(output: &Path, q: Quadrant) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match output.extension() {
        Some(ext) => format!("{stem}.q{q}.{}", ext.to_string_lossy()),
        None => format!("{stem}.q{q}"),
    };
    output.with_file_name(name)
}

fn forward(input: &Path, output: &Path, quadrant: &str, format: Option<ImageFormat>) -> Result<i32> {
    let quadrants = parse_quadrants(quadrant)?;
    let img = read_image(input, format)?;
    let all = quadrants.len() > 1;
    for q in quadrants {
        let (t, _) = adrt_single_quadrant_with_ledger(&q.apply(&img));
        let path = if all { quadrant_path(output, q) } else { output.to_path_buf() };
        write_transform(&path, &t, Some(q))?;
    }
    Ok(0)
}

fn inverse(input: &Path, output: &Path, format: Option<ImageFormat>, lenient: bool) -> Result<i32> {
    let file = read_transform(input, !lenient)?;
    let mut t = file.transform;
    if file.padding_violations > 0 {
        eprintln!(
            "adrt: warning: {} nonzero padding entries in {} cleared",
            file.padding_violations,
            input.display()
        );
        t.clear_padding();
    }
    let (img, _) = iadrt_with_ledger(&t)?;
    let img = match file.quadrant {
        Some(q) => q.invert(&img),
        None => img,
    };
    write_image(&img, output, format)?;
    Ok(0)
}

fn roundtrip(input: &Path, report: Option<&Path>, format: Option<ImageFormat>) -> Result<i32> {
    let img = read_image(input, format)?;
    let start = Instant::now();
    let (top, _) = adrt_single_quadrant_with_ledger(&img);
    let forward_seconds = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let (back, ledger) = iadrt_with_ledger(&top)?;
    let inverse_seconds = start.elapsed().as_secs_f64();
    let doc = RoundtripReport {
        n: img.level(),
        max_abs_err: back.max_abs_diff(&img).unwrap_or(f64::INFINITY),
        additions: ledger.additions(),
        subtractions: ledger.subtractions(),
        total_expected: inverse_total(img.level()),
        forward_seconds,
        inverse_seconds,
    };
    let json = serde_json::to_string_pretty(&doc).expect("report serializes");
    match report {
        Some(path) => std::fs::write(path, json + "\n").map_err(|e| AdrtError::io(path, e))?,
        None => println!("{json}"),
    }
    Ok(0)
}

fn oracle(n: u32, trials: usize, seed: u64) -> Result<i32> {
    if n > MAX_ORACLE_LEVEL {
        return Err(AdrtError::Index(format!(
            "oracle supports n <= {MAX_ORACLE_LEVEL}, got {n}"
        )));
    }
    let mut rng = rng(seed);
    let mut failures = 0;
    for trial in 0..trials {
        let img = integer_image(&mut rng, n, u16::MAX as u32);
        let (fast, _) = adrt_single_quadrant_with_ledger(&img);
        let direct = adrt_direct_full(&img, n)?;
        let mismatches = fast
            .as_raw()
            .iter()
            .zip(direct.as_raw())
            .filter(|(a, b)| a.to_bits() != b.to_bits())
            .count();
        if mismatches > 0 {
            failures += 1;
            eprintln!("trial {trial}: {mismatches} entries differ");
        }
    }
    println!(
        "oracle n={n} trials={trials} seed={seed}: {} passed, {failures} failed",
        trials - failures
    );
    Ok(if failures == 0 { 0 } else { 1 })
}

fn lines(m: u32, h: i64, s: usize, output: Option<&Path>) -> Result<i32> {
    if m > MAX_LINE_LEVEL {
        return Err(AdrtError::Index(format!("line level {m} exceeds {MAX_LINE_LEVEL}")));
    }
    let line = digital_line(m, h, s)?;
    let mut text = String::from("i,j\n");
    for (i, j) in line.pixels() {
        text.push_str(&format!("{i},{j}\n"));
    }
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| AdrtError::io(path, e))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn bench(config: BenchConfig, output: Option<&Path>) -> Result<i32> {
    if config.max_n > MAX_BENCH_LEVEL {
        return Err(AdrtError::Index(format!(
            "bench supports n <= {MAX_BENCH_LEVEL}, got {}",
            config.max_n
        )));
    }
    let report = run_bench(&config)?;
    match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| AdrtError::io(path, e))?;
            write_bench_csv(&report, BufWriter::new(file))?;
        }
        None => write_bench_csv(&report, io::stdout().lock())?,
    }
    if let Some(t) = &report.truncated {
        eprintln!("adrt: bench truncated at n={}: {}", t.n, t.reason);
    }
    match fit_scaling(&report.records) {
        Ok(fit) => eprintln!(
            "log-log slope: forward {:.3}, inverse {:.3}",
            fit.forward_slope, fit.inverse_slope
        ),
        Err(e) => eprintln!("adrt: no scaling fit: {e}"),
    }
    io::stdout().flush().ok();
    Ok(0)
}
