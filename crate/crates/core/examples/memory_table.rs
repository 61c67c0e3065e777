//! Symbolic state of the confined robot after three measurements.
//!
//! Feeds the x axis a bump at 1 s followed by velocities 0.7 at 3 s and 1.6
//! at 4 s, then prints every retained affine form and its bounds.

use zonomon::lang;
use zonomon::monitor::Monitor;
use zonomon::specs;
use zonomon::trace::{event, InputValue::*};

pub fn run_example() -> zonomon::Result<(f64, f64)> {
    let spec = lang::parse(specs::CONFINED_ROBOT).map_err(zonomon::Error::Spec)?;
    let mut monitor = Monitor::new(&spec, None)?;

    for (time, bump, vel) in [(1.0, true, 0.0), (3.0, false, 0.7), (4.0, false, 1.6)] {
        let report = monitor.step(&event([
            ("time", Real(time)),
            ("bump_x", Bool(bump)),
            ("vel_x", Real(vel)),
            ("bump_y", Bool(true)),
            ("vel_y", Real(0.0)),
        ]))?;
        println!("t = {time}s: position_x in {:?}", report.hulls["position_x"]);
    }

    println!("\nretained state:");
    for (slot, value) in monitor.state().resolved.iter() {
        if let Some(form) = value.as_real() {
            println!("  {slot:<14} = {form}");
        }
    }
    Ok(monitor.state_hull()["position_x"])
}

fn main() -> zonomon::Result<()> {
    let (lo, hi) = run_example()?;
    println!("\nposition_x at 4s lies in [{lo:.4}, {hi:.4}]");
    Ok(())
}
