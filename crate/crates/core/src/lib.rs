//! Link-budget engine for millimeter-wave and sub-terahertz point-to-point
//! links that treats transmitter noise as a propagating noise source.
//!
//! The receiver-input noise floor is assembled from three contributions:
//! thermal noise, re-emission by absorbing atmospheric gases, and the
//! transmitter's own output noise after antenna gains and path loss. On top
//! of that the crate evaluates when transmitter noise dominates the link
//! (the 1 dB degradation criterion and its path-loss threshold) and runs the
//! distance/frequency sweeps and parametric grids used for design charts.
//!
//! The crate is `no_std` and needs only `alloc`. File IO, the command-line
//! front end and report formats live in the `thzlink` crate.
//!
//! ```
//! use thzlink_core::linkbudget::{LinkModel, LinkScenario};
//!
//! let model = LinkModel::bundled();
//! let scenario = LinkScenario::short_range(1e-3, 300e9);
//! let eval = model.evaluate(&scenario).unwrap();
//! assert!((eval.snr_db.baseline - 43.0).abs() < 1.0);
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod atmosphere;
pub mod channel;
pub mod error;
pub mod linkbudget;
pub mod noise;
pub mod quantities;
pub mod txchain;

pub use error::{Error, Result};
