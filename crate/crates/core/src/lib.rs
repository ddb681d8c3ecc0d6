//! Delay / time-of-arrival estimation on dual-band OFDM channel measurements.
//!
//! The crate simulates K-point OFDM channel soundings in which only two
//! widely separated subcarrier blocks are occupied, and estimates multipath
//! delays from those partial measurements:
//!
//! - [`freqgrid`]: subcarrier lattice, selection functions, dual-band layout.
//! - [`channel`]: scene synthesis, AWGN, Rayleigh gains, reproducible trials.
//! - [`profile`]: delay-domain profiles, point-spread functions, metrics.
//! - [`estimators`]: matched-filter acquisition, RELAX, OMP, single-path ML.
//! - [`evaluation`]: RMSE scoring, delay CRB, Monte-Carlo sweeps.
//!
//! ```
//! use dualband_delay::channel::{measurement, Target};
//! use dualband_delay::estimators::{relax, RelaxConfig, SteeringOperator};
//! use dualband_delay::freqgrid::{DualBandConfig, FrequencyGrid, SubcarrierSelection};
//! use dualband_delay::profile::DelayGrid;
//! use dualband_delay::Complex64;
//!
//! let grid = FrequencyGrid::new(1024, 312.5e3, 5.2e9).unwrap();
//! let band = DualBandConfig::new(grid, 128, 896, 0).unwrap();
//! let sel = SubcarrierSelection::dual_band(&band);
//! let y = measurement(&sel, &[Target::new(100e-9, Complex64::new(1.0, 0.0))]).unwrap();
//! let op = SteeringOperator::new(sel, DelayGrid::oversampled(&grid, 16).unwrap()).unwrap();
//! let est = relax(&y, &RelaxConfig { l_max: 1, ..Default::default() }, &op).unwrap();
//! assert!((est.components[0].tau - 100e-9).abs() < 1e-12);
//! ```
//!
//! Trial batches run through [rayon] when the default `parallel` feature is
//! on; disabling it swaps in a sequential loop that produces bit-identical
//! results.

pub mod channel;
pub mod error;
pub mod estimators;
pub mod evaluation;
pub mod exec;
pub mod freqgrid;
pub mod profile;

mod phasor;

pub use error::{Error, Result};
pub use num_complex::Complex64;
