//! Timing and operation-count runs across image sizes.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{AdrtError, Result};
use crate::forward::adrt_single_quadrant_with_ledger;
use crate::image::Image;
use crate::inverse::iadrt_with_ledger;
use crate::ledger::inverse_total;
use crate::random::seeded_integer_image;

pub const MAX_BENCH_LEVEL: u32 = 12;

/// One benchmarked size. Times are medians; `*_seconds` use the default
/// rayon pool and `*_seconds_serial` a single worker.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: u32,
    pub pixels: u64,
    pub forward_seconds: f64,
    pub inverse_seconds: f64,
    pub additions: u64,
    pub subtractions: u64,
    pub expected_total: u64,
    pub repetitions: usize,
    pub max_abs_err: f64,
    pub forward_seconds_serial: f64,
    pub inverse_seconds_serial: f64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub min_n: u32,
    pub max_n: u32,
    pub reps: usize,
    pub seed: u64,
    /// Sizes whose estimated working set exceeds this are not run.
    pub memory_budget_bytes: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            min_n: 4,
            max_n: 10,
            reps: 3,
            seed: crate::cli::DEFAULT_SEED,
            memory_budget_bytes: 4 << 30,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Set when the run stopped before `max_n`.
    pub truncated: Option<Truncation>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Truncation {
    pub n: u32,
    pub reason: String,
}

/// Rough peak working set of a roundtrip at level `n`: the image, its copy,
/// and two adjacent levels of at most `2N` values each, plus scratch.
pub fn estimated_bytes(n: u32) -> u64 {
    64 * (1u64 << (2 * n))
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.min_n < 1 || config.min_n > config.max_n || config.max_n > MAX_BENCH_LEVEL {
        return Err(AdrtError::Precondition(format!(
            "bench needs 1 <= min_n <= max_n <= {MAX_BENCH_LEVEL}, got {}..={}",
            config.min_n, config.max_n
        )));
    }
    if config.reps < 3 {
        return Err(AdrtError::Precondition(format!(
            "bench needs at least 3 repetitions, got {}",
            config.reps
        )));
    }
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| AdrtError::Analysis(format!("cannot build single-worker pool: {e}")))?;

    let mut report = BenchReport::default();
    for n in config.min_n..=config.max_n {
        let need = estimated_bytes(n);
        if need > config.memory_budget_bytes {
            report.truncated = Some(Truncation {
                n,
                reason: format!(
                    "estimated {need} bytes exceeds budget of {} bytes",
                    config.memory_budget_bytes
                ),
            });
            break;
        }
        let img = seeded_integer_image(n, config.seed.wrapping_add(n as u64));
        let parallel = measure(&img, config.reps)?;
        let single = serial.install(|| measure(&img, config.reps))?;
        if parallel.output_bits != single.output_bits || parallel.ops != single.ops {
            return Err(AdrtError::Analysis(format!(
                "serial and parallel runs disagree at n={n}"
            )));
        }
        report.records.push(BenchRecord {
            n,
            pixels: 1u64 << (2 * n),
            forward_seconds: parallel.forward,
            inverse_seconds: parallel.inverse,
            additions: parallel.ops.0,
            subtractions: parallel.ops.1,
            expected_total: inverse_total(n),
            repetitions: config.reps,
            max_abs_err: parallel.max_abs_err,
            forward_seconds_serial: single.forward,
            inverse_seconds_serial: single.inverse,
        });
    }
    Ok(report)
}

struct Measurement {
    forward: f64,
    inverse: f64,
    ops: (u64, u64),
    max_abs_err: f64,
    output_bits: Vec<u64>,
}

fn measure(img: &Image, reps: usize) -> Result<Measurement> {
    // warm-up run, discarded
    let (top, _) = adrt_single_quadrant_with_ledger(img);
    iadrt_with_ledger(&top)?;

    let mut forward = Vec::with_capacity(reps);
    let mut inverse = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let (top, _) = adrt_single_quadrant_with_ledger(img);
        forward.push(start.elapsed().as_secs_f64());
        let start = Instant::now();
        let (back, ledger) = iadrt_with_ledger(&top)?;
        inverse.push(start.elapsed().as_secs_f64());
        last = Some((top, back, ledger));
    }
    let (top, back, ledger) = last.expect("reps >= 1");
    Ok(Measurement {
        forward: median(&mut forward),
        inverse: median(&mut inverse),
        ops: (ledger.additions(), ledger.subtractions()),
        max_abs_err: back.max_abs_diff(img).unwrap_or(f64::INFINITY),
        output_bits: top.as_raw().iter().map(|v| v.to_bits()).collect(),
    })
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[k]
    } else {
        0.5 * (xs[k - 1] + xs[k])
    }
}

/// Writes the records as CSV with a header row. A truncated run ends with a
/// `#truncated,<n>,<reason>` marker row.
pub fn write_bench_csv(report: &BenchReport, out: impl Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let wrap = |e: csv::Error| AdrtError::Analysis(format!("writing bench csv: {e}"));
    for r in &report.records {
        writer.serialize(r).map_err(wrap)?;
    }
    if report.records.is_empty() {
        writer
            .write_record(BENCH_COLUMNS)
            .map_err(wrap)?;
    }
    if let Some(t) = &report.truncated {
        writer.flush().map_err(|e| AdrtError::Analysis(e.to_string()))?;
        let mut inner = writer
            .into_inner()
            .map_err(|e| AdrtError::Analysis(e.to_string()))?;
        writeln!(inner, "#truncated,{},{}", t.n, t.reason.replace(',', ";"))
            .map_err(|e| AdrtError::Analysis(e.to_string()))?;
        return Ok(());
    }
    writer.flush().map_err(|e| AdrtError::Analysis(e.to_string()))
}

pub const BENCH_COLUMNS: [&str; 11] = [
    "n",
    "pixels",
    "forward_seconds",
    "inverse_seconds",
    "additions",
    "subtractions",
    "expected_total",
    "repetitions",
    "max_abs_err",
    "forward_seconds_serial",
    "inverse_seconds_serial",
];

/// Least-squares slopes of `log(time)` against `log(N)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub forward_slope: f64,
    pub inverse_slope: f64,
}

/// Fits forward and inverse times separately. Needs at least four records
/// whose pixel counts span a factor of eight or more.
pub fn fit_scaling(records: &[BenchRecord]) -> Result<ScalingFit> {
    let fwd: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.pixels as f64, r.forward_seconds))
        .collect();
    let inv: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.pixels as f64, r.inverse_seconds))
        .collect();
    Ok(ScalingFit {
        forward_slope: loglog_slope(&fwd)?,
        inverse_slope: loglog_slope(&inv)?,
    })
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 4 {
        return Err(AdrtError::Analysis(format!(
            "need at least 4 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(AdrtError::Analysis("sizes and times must be positive".into()));
    }
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(0.0, f64::max);
    if hi / lo < 8.0 {
        return Err(AdrtError::Analysis(format!(
            "sizes span {lo}..{hi}, less than three octaves"
        )));
    }
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}
