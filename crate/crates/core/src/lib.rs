//! Runtime monitoring of stream specifications over noisy sensor data.
//!
//! Measurement noise is tracked symbolically with affine arithmetic
//! ([`affine`]), the monitor state is bounded by zonotope order reduction
//! ([`zonotope`]), and triggers report the fraction of a stream's value range
//! beyond a threshold ([`monitor`]).
//!
//! ```
//! use zonomon::{lang, monitor::Monitor, specs, trace::{event, InputValue::*}};
//!
//! let spec = lang::parse(specs::CONFINED_ROBOT).unwrap();
//! let mut m = Monitor::new(&spec, None).unwrap();
//! let report = m
//!     .step(&event([
//!         ("time", Real(1.0)),
//!         ("bump_x", Bool(true)),
//!         ("vel_x", Real(0.0)),
//!         ("bump_y", Bool(true)),
//!         ("vel_y", Real(0.0)),
//!     ]))
//!     .unwrap();
//! assert!(!report.any_fired());
//! ```

pub mod affine;
pub mod bench;
pub mod cli;
pub mod error;
pub mod lang;
pub mod monitor;
pub mod simulate;
pub mod specs;
pub mod store;
pub mod trace;
pub mod zonotope;

pub use error::{Error, Result};
