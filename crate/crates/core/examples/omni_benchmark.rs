//! Exact versus reduced monitoring of the omnidirectional robot: hull error
//! and false-positive rate per method and budget.

use zonomon::bench::{sweep_k, trend_slope, SweepRow};
use zonomon::lang;
use zonomon::simulate::{gen_omni, NoiseParams, WalkParams};
use zonomon::specs;
use zonomon::zonotope::Method;

pub fn run_example(traces: u64, steps: usize) -> zonomon::Result<Vec<SweepRow>> {
    let spec = lang::parse(specs::OMNI_ROBOT).map_err(zonomon::Error::Spec)?;
    let events: Vec<_> = (0..traces)
        .map(|seed| gen_omni(steps, &NoiseParams::omni(seed), &WalkParams::default()).1)
        .collect();
    let rows = sweep_k(&spec, &events, &Method::ALL, &[8, 16])?;

    println!("{:<10} {:>3} {:>12} {:>12} {:>8}", "method", "k", "mean error", "slope", "fpr");
    for r in &rows {
        let fpr = r.fpr.values().sum::<f64>() / r.fpr.len().max(1) as f64;
        println!(
            "{:<10} {:>3} {:>12.4e} {:>12.4e} {:>8.4}",
            r.method.name(),
            r.limit,
            r.mean_error,
            trend_slope(&r.error_series),
            fpr
        );
    }
    Ok(rows)
}

fn main() -> zonomon::Result<()> {
    run_example(10, 1_000)?;
    Ok(())
}
