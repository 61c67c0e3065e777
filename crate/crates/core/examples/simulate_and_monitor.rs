//! Simulates the confined robot, monitors the noisy trace with a symbol
//! budget and checks that the true position always stays inside the bounds.

use zonomon::lang;
use zonomon::monitor::{Monitor, ReductionConfig};
use zonomon::simulate::{gen_confined, NoiseParams, WalkParams};
use zonomon::specs;
use zonomon::zonotope::Method;

pub struct Summary {
    pub steps: usize,
    pub alarms: usize,
    pub truth_outside: usize,
    pub peak_symbols: usize,
}

pub fn run_example(steps: usize, seed: u64) -> zonomon::Result<Summary> {
    let spec = lang::parse(specs::CONFINED_ROBOT).map_err(zonomon::Error::Spec)?;
    let (truth, trace) = gen_confined(steps, &NoiseParams::confined(seed), &WalkParams::default());
    let mut monitor = Monitor::new(&spec, Some(ReductionConfig::new(Method::Girard, 6)))?;

    let mut summary = Summary {
        steps,
        alarms: 0,
        truth_outside: 0,
        peak_symbols: 0,
    };
    for (ev, row) in trace.iter().zip(&truth) {
        let report = monitor.step(ev)?;
        for v in report.verdicts.iter().filter(|v| v.fired) {
            summary.alarms += 1;
            if summary.alarms <= 5 {
                println!(
                    "step {:>4}: {} (range [{:.3}, {:.3}], overlap {:.2})",
                    v.step, v.message, v.lo, v.hi, v.overlap
                );
            }
        }
        let (lo, hi) = report.hulls["position_x"];
        if row.x < lo - 1e-9 || row.x > hi + 1e-9 {
            summary.truth_outside += 1;
        }
        summary.peak_symbols = summary.peak_symbols.max(monitor.live_symbols());
    }
    println!(
        "{} steps, {} alarms, true position outside bounds {} times, at most {} live symbols",
        summary.steps, summary.alarms, summary.truth_outside, summary.peak_symbols
    );
    Ok(summary)
}

fn main() -> zonomon::Result<()> {
    run_example(2_000, 7)?;
    Ok(())
}
