//! Bundled benchmark specifications.

/// Robot confined to a rectangle with endstops at zero; velocity sensors with
/// a calibration offset (0.05) and per-sample noise (0.1) on each axis.
pub const CONFINED_ROBOT: &str = include_str!("../specs/confined_robot.lola");

/// Robot moving freely in the plane; noisy acceleration (calibration 0.005,
/// per-sample 0.01) and noise-free heading.
pub const OMNI_ROBOT: &str = include_str!("../specs/omni_robot.lola");

/// [`CONFINED_ROBOT`] with per-sample bound `mu` and calibration bound `delta`.
pub fn confined_robot(mu: f64, delta: f64) -> String {
    CONFINED_ROBOT
        .replace("0.1 * epsilon + 0.05 * delta_x", &format!("{mu:?} * epsilon + {delta:?} * delta_x"))
        .replace("0.1 * tau + 0.05 * delta_y", &format!("{mu:?} * tau + {delta:?} * delta_y"))
}

/// [`OMNI_ROBOT`] with per-sample bound `mu` and calibration bound `delta`.
pub fn omni_robot(mu: f64, delta: f64) -> String {
    OMNI_ROBOT.replace(
        "0.01 * epsilon + 0.005 * delta",
        &format!("{mu:?} * epsilon + {delta:?} * delta"),
    )
}
