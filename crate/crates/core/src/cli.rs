//! Command-line front end: `monitor`, `simulate` and `bench`.
//!
//! Exit codes: 0 on success, 1 when `monitor` saw a trigger fire, 2 on any
//! error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{sweep_k, write_all};
use crate::error::{Error, Result};
use crate::lang::{parse, Spec};
use crate::monitor::{Monitor, ReductionConfig};
use crate::simulate::{gen_confined, gen_omni, write_truth, NoiseParams, WalkParams};
use crate::trace::{read_trace, write_hulls, write_trace, write_verdicts, HullSeries};
use crate::zonotope::{Method, ReductionOptions};

#[derive(Debug, Parser)]
#[command(name = "zonomon", version, about = "Monitor noisy sensor streams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Confined,
    Omni,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a specification over a trace and write verdicts.
    Monitor {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        reduce: Option<Method>,
        /// Symbol budget; requires --reduce.
        #[arg(long, requires = "reduce")]
        limit: Option<usize>,
        #[arg(long)]
        preserve_calibration: bool,
        /// Also write per-step stream bounds.
        #[arg(long)]
        hulls: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a noisy trace and its ground truth.
    Simulate {
        #[arg(long, value_enum)]
        scenario: Scenario,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Calibration bound; defaults to the scenario's specification.
        #[arg(long)]
        delta: Option<f64>,
        /// Per-sample bound; defaults to the scenario's specification.
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        truth: PathBuf,
    },
    /// Compare reduced monitors against the exact one over many traces.
    Bench {
        #[arg(long)]
        spec: PathBuf,
        /// Glob pattern selecting trace files.
        #[arg(long)]
        traces: String,
        #[arg(long, value_delimiter = ',', default_value = "box,girard,combastel,pca")]
        methods: Vec<Method>,
        #[arg(long, value_delimiter = ',', required = true)]
        limits: Vec<usize>,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn load_spec(path: &Path) -> Result<Spec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|diags| {
        diags
            .iter()
            .map(|d| format!("{}:{d}", path.display()))
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn with_path(path: &Path) -> impl Fn(Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

/// Runs one parsed command and returns its exit code, printing diagnostics to
/// standard error.
pub fn execute(cli: Cli) -> i32 {
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32, String> {
    match command {
        Command::Monitor {
            spec,
            trace,
            reduce,
            limit,
            preserve_calibration,
            hulls,
            out,
        } => {
            let parsed = load_spec(&spec)?;
            let events = read_trace(&trace, &parsed).map_err(with_path(&trace))?;
            let config = reduce.map(|method| ReductionConfig {
                method,
                limit: limit.unwrap_or(usize::MAX),
                options: ReductionOptions {
                    preserve_calibration,
                },
            });
            let mut monitor = Monitor::new(&parsed, config).map_err(|e| e.to_string())?;
            let mut verdicts = Vec::new();
            let mut series: HullSeries = Vec::new();
            for (row, ev) in events.iter().enumerate() {
                let report = monitor
                    .step(ev)
                    .map_err(|e| format!("{}: event {}: {e}", trace.display(), row + 1))?;
                verdicts.extend(report.verdicts);
                series.push(report.hulls);
            }
            write_verdicts(&out, &verdicts).map_err(with_path(&out))?;
            if let Some(path) = hulls {
                write_hulls(&path, &series).map_err(with_path(&path))?;
            }
            Ok(if verdicts.iter().any(|v| v.fired) { 1 } else { 0 })
        }
        Command::Simulate {
            scenario,
            steps,
            seed,
            delta,
            mu,
            out,
            truth,
        } => {
            let mut noise = match scenario {
                Scenario::Confined => NoiseParams::confined(seed),
                Scenario::Omni => NoiseParams::omni(seed),
            };
            noise.delta_max = delta.unwrap_or(noise.delta_max);
            noise.mu_max = mu.unwrap_or(noise.mu_max);
            if !(noise.delta_max >= 0.0 && noise.mu_max >= 0.0) {
                return Err("noise bounds must be non-negative".into());
            }
            let walk = WalkParams::default();
            let (rows, events, text) = match scenario {
                Scenario::Confined => {
                    let (rows, events) = gen_confined(steps, &noise, &walk);
                    (rows, events, crate::specs::CONFINED_ROBOT)
                }
                Scenario::Omni => {
                    let (rows, events) = gen_omni(steps, &noise, &walk);
                    (rows, events, crate::specs::OMNI_ROBOT)
                }
            };
            let parsed = parse(text).map_err(|d| d.to_string())?;
            write_trace(&out, &parsed, &events).map_err(with_path(&out))?;
            write_truth(&truth, &rows).map_err(with_path(&truth))?;
            Ok(0)
        }
        Command::Bench {
            spec,
            traces,
            methods,
            limits,
            out_dir,
        } => {
            let parsed = load_spec(&spec)?;
            let mut paths: Vec<PathBuf> = glob::glob(&traces)
                .map_err(|e| format!("bad pattern `{traces}`: {e}"))?
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            paths.sort();
            if paths.is_empty() {
                return Err(format!("no trace files match `{traces}`"));
            }
            let loaded = paths
                .iter()
                .map(|p| read_trace(p, &parsed).map_err(with_path(p)))
                .collect::<Result<Vec<_>, _>>()?;
            let rows = sweep_k(&parsed, &loaded, &methods, &limits).map_err(|e| e.to_string())?;
            write_all(&out_dir, &rows).map_err(with_path(&out_dir))?;
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
