//! Synthetic robot runs: random-walk ground truth plus noisy measurements.
//!
//! Ground-truth positions follow the same kinematics as the bundled
//! specifications, evaluated on the true (noise-free) sensor values, so a
//! sound monitor must always enclose them. Measurements are
//! `m(t) = τ(t) + ε_t + Δ` with `Δ ~ U[-δ, δ]` drawn once per sensor and
//! `ε_t ~ U[-μ, μ]` drawn per sample. Randomness comes from ChaCha8 seeded
//! with [`NoiseParams::seed`].

use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::trace::{event, format_real, InputValue, TraceEvent};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    /// Calibration bound `δ`.
    pub delta_max: f64,
    /// Per-sample bound `μ`.
    pub mu_max: f64,
    pub seed: u64,
}

impl NoiseParams {
    /// Bounds matching the coefficients of the confined-robot specification.
    pub fn confined(seed: u64) -> Self {
        NoiseParams {
            delta_max: 0.05,
            mu_max: 0.1,
            seed,
        }
    }

    /// Bounds matching the coefficients of the omnidirectional specification.
    pub fn omni(seed: u64) -> Self {
        NoiseParams {
            delta_max: 0.005,
            mu_max: 0.01,
            seed,
        }
    }

    pub fn noise_free(seed: u64) -> Self {
        NoiseParams {
            delta_max: 0.0,
            mu_max: 0.0,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    /// Seconds between samples.
    pub step_dt: f64,
    /// Speed bound for the confined robot, per axis.
    pub max_speed: f64,
    /// Largest change of the commanded velocity (or acceleration) per step.
    pub jitter: f64,
    /// Side length of the square workspace.
    pub width: f64,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams {
            step_dt: 0.1,
            max_speed: 1.0,
            jitter: 0.2,
            width: 5.0,
        }
    }
}

/// True position at one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruthRow {
    pub step: u64,
    pub x: f64,
    pub y: f64,
}

struct Sensor {
    offset: f64,
    mu: f64,
}

impl Sensor {
    fn new(rng: &mut ChaCha8Rng, noise: &NoiseParams) -> Self {
        Sensor {
            offset: uniform(rng, noise.delta_max),
            mu: noise.mu_max,
        }
    }

    fn measure(&self, rng: &mut ChaCha8Rng, truth: f64) -> f64 {
        truth + uniform(rng, self.mu) + self.offset
    }
}

/// Always consumes one draw, so the walk does not depend on the noise bounds.
fn uniform(rng: &mut ChaCha8Rng, bound: f64) -> f64 {
    bound * rng.gen_range(-1.0..=1.0)
}

/// One axis of the confined robot.
struct Axis {
    command: f64,
    filtered: f64,
    position: f64,
}

impl Axis {
    /// Advances one step; returns the true velocity and whether the endstop
    /// was hit.
    fn advance(&mut self, rng: &mut ChaCha8Rng, walk: &WalkParams) -> (f64, bool) {
        let mut v = self.command + uniform(rng, walk.jitter);
        v = v.clamp(-walk.max_speed, walk.max_speed);
        if self.position > walk.width - 0.5 {
            v = -v.abs();
        }
        self.command = v;
        self.filtered = 0.8 * v + 0.2 * self.filtered;
        let next = self.position + self.filtered * walk.step_dt;
        let bump = next <= 0.0;
        if bump {
            self.position = 0.0;
            self.command = self.command.abs();
        } else {
            self.position = next;
        }
        (v, bump)
    }
}

/// Confined robot: per-axis velocity sensors with endstop bumpers at 0.
pub fn gen_confined(
    len: usize,
    noise: &NoiseParams,
    walk: &WalkParams,
) -> (Vec<TruthRow>, Vec<TraceEvent>) {
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let sensors = [Sensor::new(&mut rng, noise), Sensor::new(&mut rng, noise)];
    let mut axes: Vec<Axis> = (0..2)
        .map(|_| Axis {
            command: rng.gen_range(0.0..=walk.max_speed),
            filtered: 0.0,
            position: 0.0,
        })
        .collect();

    let mut truth = Vec::with_capacity(len);
    let mut trace = Vec::with_capacity(len);
    for t in 0..len {
        let mut ev = event([("time", InputValue::Real((t + 1) as f64 * walk.step_dt))]);
        for (i, (axis, sensor)) in axes.iter_mut().zip(&sensors).enumerate() {
            let (v, bump) = axis.advance(&mut rng, walk);
            let suffix = if i == 0 { "x" } else { "y" };
            ev.insert(format!("bump_{suffix}"), InputValue::Bool(bump));
            ev.insert(format!("vel_{suffix}"), InputValue::Real(sensor.measure(&mut rng, v)));
        }
        truth.push(TruthRow {
            step: t as u64,
            x: axes[0].position,
            y: axes[1].position,
        });
        trace.push(ev);
    }
    (truth, trace)
}

/// Omnidirectional robot: a noisy accelerometer along a noise-free heading.
pub fn gen_omni(
    len: usize,
    noise: &NoiseParams,
    walk: &WalkParams,
) -> (Vec<TruthRow>, Vec<TraceEvent>) {
    let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
    let sensor = Sensor::new(&mut rng, noise);
    let dt = walk.step_dt;
    let center = walk.width / 2.0;
    let mut heading: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let (mut a_filter, mut v, mut x, mut y) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);

    let mut truth = Vec::with_capacity(len);
    let mut trace = Vec::with_capacity(len);
    for t in 0..len {
        heading += uniform(&mut rng, walk.jitter);
        let (dx, dy) = (center - x, center - y);
        if dx.hypot(dy) > center {
            // steer back toward the middle of the workspace
            let home = dy.atan2(dx);
            let turn = (home - heading).sin().atan2((home - heading).cos());
            heading += 0.5 * turn;
        }
        let a = (walk.max_speed - v) + uniform(&mut rng, walk.jitter);

        a_filter = 0.7 * a + 0.3 * a_filter;
        let v_prev = v;
        v = v_prev + a_filter * dt;
        let dist = 0.5 * a_filter * dt * dt + v_prev * dt;
        x += heading.cos() * dist;
        y += heading.sin() * dist;

        truth.push(TruthRow {
            step: t as u64,
            x,
            y,
        });
        trace.push(event([
            ("time", InputValue::Real((t + 1) as f64 * dt)),
            ("dir", InputValue::Real(heading)),
            ("am", InputValue::Real(sensor.measure(&mut rng, a))),
        ]));
    }
    (truth, trace)
}

pub fn write_truth_to(writer: impl Write, truth: &[TruthRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["step", "x", "y"])?;
    for row in truth {
        wtr.write_record([row.step.to_string(), format_real(row.x), format_real(row.y)])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_truth(path: impl AsRef<Path>, truth: &[TruthRow]) -> Result<()> {
    write_truth_to(std::fs::File::create(path)?, truth)
}
