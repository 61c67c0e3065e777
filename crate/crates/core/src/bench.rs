//! Exact-versus-reduced comparisons: hull error series, false-positive rates
//! and sweeps over the symbol budget.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use crate::error::Result;
use crate::lang::Spec;
use crate::monitor::{Monitor, ReductionConfig, Verdict};
use crate::trace::{format_real, TraceEvent};
use crate::zonotope::{hull_error, Method};

/// Bounds and verdicts of one monitor run at one step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub hulls: BTreeMap<String, (f64, f64)>,
    pub verdicts: Vec<Verdict>,
}

/// One step of an exact run next to a reduced run of the same trace.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRecord {
    pub step: u64,
    pub exact: StepOutcome,
    pub approx: StepOutcome,
}

/// Runs a monitor over `trace`, recording the retained-state bounds after
/// each step.
pub fn run_monitor(
    spec: &Spec,
    trace: &[TraceEvent],
    config: Option<ReductionConfig>,
) -> Result<Vec<StepOutcome>> {
    let mut m = Monitor::new(spec, config)?;
    trace
        .iter()
        .map(|ev| {
            let report = m.step(ev)?;
            Ok(StepOutcome {
                hulls: m.state_hull(),
                verdicts: report.verdicts,
            })
        })
        .collect()
}

fn zip_runs(exact: &[StepOutcome], approx: Vec<StepOutcome>) -> Vec<PairRecord> {
    exact
        .iter()
        .zip(approx)
        .enumerate()
        .map(|(step, (e, a))| PairRecord {
            step: step as u64,
            exact: e.clone(),
            approx: a,
        })
        .collect()
}

pub fn run_pair(spec: &Spec, trace: &[TraceEvent], config: ReductionConfig) -> Result<Vec<PairRecord>> {
    let exact = run_monitor(spec, trace, None)?;
    let approx = run_monitor(spec, trace, Some(config))?;
    Ok(zip_runs(&exact, approx))
}

/// Mean hull error per step over the streams both runs bound.
pub fn approximation_error(records: &[PairRecord]) -> Vec<f64> {
    records
        .iter()
        .map(|r| {
            let (exact, approx): (Vec<_>, Vec<_>) = r
                .exact
                .hulls
                .iter()
                .filter_map(|(name, &e)| r.approx.hulls.get(name).map(|&a| (e, a)))
                .unzip();
            hull_error(&exact, &approx).expect("paired hulls have equal length")
        })
        .collect()
}

/// Per trigger message: the fraction of (step, trace) pairs where the reduced
/// monitor fires and the exact one does not.
pub fn false_positive_rate(runs: &[Vec<PairRecord>]) -> BTreeMap<String, f64> {
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for records in runs {
        for r in records {
            for (e, a) in r.exact.verdicts.iter().zip(&r.approx.verdicts) {
                let entry = counts.entry(e.message.clone()).or_default();
                entry.1 += 1;
                if a.fired && !e.fired {
                    entry.0 += 1;
                }
            }
        }
    }
    counts
        .into_iter()
        .map(|(msg, (fp, n))| (msg, if n == 0 { 0.0 } else { fp as f64 / n as f64 }))
        .collect()
}

/// Least-squares slope of `series` against its index.
pub fn trend_slope(series: &[f64]) -> f64 {
    let n = series.len() as f64;
    if series.len() < 2 {
        return 0.0;
    }
    let mean_x = (n - 1.0) / 2.0;
    let mean_y = series.iter().sum::<f64>() / n;
    let (num, den) = series
        .iter()
        .enumerate()
        .fold((0.0, 0.0), |(num, den), (i, &y)| {
            let dx = i as f64 - mean_x;
            (num + dx * (y - mean_y), den + dx * dx)
        });
    num / den
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, n) = xs.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

/// Results for one (method, k) cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub method: Method,
    pub limit: usize,
    /// Hull error averaged over steps, then over traces.
    pub mean_error: f64,
    /// Hull error per step, averaged over traces.
    pub error_series: Vec<f64>,
    pub fpr: BTreeMap<String, f64>,
}

/// Evaluates every (method, k) pair on every trace. The exact reference run
/// is shared across the grid; traces are processed in parallel.
pub fn sweep_k(
    spec: &Spec,
    traces: &[Vec<TraceEvent>],
    methods: &[Method],
    limits: &[usize],
) -> Result<Vec<SweepRow>> {
    let exact: Vec<Vec<StepOutcome>> = traces
        .par_iter()
        .map(|t| run_monitor(spec, t, None))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(methods.len() * limits.len());
    for &method in methods {
        for &limit in limits {
            let config = ReductionConfig::new(method, limit);
            let runs: Vec<Vec<PairRecord>> = traces
                .par_iter()
                .zip(&exact)
                .map(|(t, e)| Ok(zip_runs(e, run_monitor(spec, t, Some(config))?)))
                .collect::<Result<_>>()?;
            let errors: Vec<Vec<f64>> = runs.iter().map(|r| approximation_error(r)).collect();
            let len = errors.iter().map(Vec::len).max().unwrap_or(0);
            let error_series = (0..len)
                .map(|i| mean(errors.iter().filter_map(|e| e.get(i).copied())))
                .collect();
            rows.push(SweepRow {
                method,
                limit,
                mean_error: mean(errors.iter().map(|e| mean(e.iter().copied()))),
                error_series,
                fpr: false_positive_rate(&runs),
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep_to(writer: impl Write, rows: &[SweepRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["method", "k", "mean_error"])?;
    for r in rows {
        wtr.write_record([r.method.to_string(), r.limit.to_string(), format_real(r.mean_error)])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_error_series_to(writer: impl Write, rows: &[SweepRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["step", "method", "k", "error"])?;
    for r in rows {
        for (step, e) in r.error_series.iter().enumerate() {
            wtr.write_record([
                step.to_string(),
                r.method.to_string(),
                r.limit.to_string(),
                format_real(*e),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_fpr_to(writer: impl Write, rows: &[SweepRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["method", "k", "trigger", "fpr"])?;
    for r in rows {
        for (trigger, fpr) in &r.fpr {
            wtr.write_record([
                r.method.to_string(),
                r.limit.to_string(),
                trigger.clone(),
                format_real(*fpr),
            ])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Writes `sweep.csv`, `errors.csv` and `fpr.csv` into `dir`.
pub fn write_all(dir: impl AsRef<Path>, rows: &[SweepRow]) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    write_sweep_to(std::fs::File::create(dir.join("sweep.csv"))?, rows)?;
    write_error_series_to(std::fs::File::create(dir.join("errors.csv"))?, rows)?;
    write_fpr_to(std::fs::File::create(dir.join("fpr.csv"))?, rows)?;
    Ok(())
}
