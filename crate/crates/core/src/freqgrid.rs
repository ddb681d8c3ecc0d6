//! Subcarrier grids and band selections.
//!
//! A [`FrequencyGrid`] fixes the K-point subcarrier lattice (spacing
//! `delta_f`, carrier frequency carried along for reporting). A
//! [`SubcarrierSelection`] records which of those K bins are occupied, i.e.
//! the binary selection function `W[k]`. [`DualBandConfig`] describes the
//! split layout used throughout this crate: two equal blocks of `n_sub`
//! carriers whose starting indices sit `gap` carriers apart.
//!
//! ```
//! use dualband_delay::freqgrid::{DualBandConfig, FrequencyGrid, SubcarrierSelection};
//!
//! let grid = FrequencyGrid::new(1024, 312.5e3, 5.2e9).unwrap();
//! let band = DualBandConfig::new(grid, 128, 896, 0).unwrap();
//! let sel = SubcarrierSelection::dual_band(&band);
//! assert_eq!(sel.m(), 256);
//! assert_eq!(band.f_gap(), 280.0e6);
//! ```

use crate::error::{Error, Result};

/// K-point subcarrier lattice with spacing `delta_f` Hz.
///
/// Subcarrier `k` sits at baseband frequency `k * delta_f`; the carrier
/// frequency does not enter any delay computation and is kept only so that
/// configurations can be reported in full.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    k: usize,
    delta_f: f64,
    f_carrier: f64,
}

impl FrequencyGrid {
    /// # Errors
    ///
    /// Rejects `k < 2` and non-positive or non-finite spacing.
    pub fn new(k: usize, delta_f: f64, f_carrier: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Config(format!("grid needs at least 2 subcarriers, got {k}")));
        }
        if !(delta_f.is_finite() && delta_f > 0.0) {
            return Err(Error::Config(format!("subcarrier spacing must be positive, got {delta_f}")));
        }
        if !f_carrier.is_finite() || f_carrier < 0.0 {
            return Err(Error::Config(format!("carrier frequency must be non-negative, got {f_carrier}")));
        }
        Ok(Self { k, delta_f, f_carrier })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta_f(&self) -> f64 {
        self.delta_f
    }

    pub fn f_carrier(&self) -> f64 {
        self.f_carrier
    }

    /// Full lattice span `K * delta_f` in Hz.
    pub fn span(&self) -> f64 {
        self.k as f64 * self.delta_f
    }

    /// Period of the delay-domain response, `1 / delta_f` seconds. Delays are
    /// only identifiable modulo this range.
    pub fn unambiguous_range(&self) -> f64 {
        1.0 / self.delta_f
    }
}

/// Two equal blocks of `n_sub` carriers, block starts `gap` carriers apart.
///
/// `gap >= n_sub` keeps the blocks from overlapping; `gap == n_sub` makes
/// them adjacent, which degenerates to one contiguous block of `2 * n_sub`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualBandConfig {
    grid: FrequencyGrid,
    n_sub: usize,
    gap: usize,
    start: usize,
}

impl DualBandConfig {
    /// # Errors
    ///
    /// Rejects empty blocks, overlapping blocks (`gap < n_sub`), and layouts
    /// that run past the end of the grid (`start + gap + n_sub > K`).
    pub fn new(grid: FrequencyGrid, n_sub: usize, gap: usize, start: usize) -> Result<Self> {
        if n_sub == 0 {
            return Err(Error::Config("dual-band block size must be at least 1".into()));
        }
        if gap < n_sub {
            return Err(Error::Config(format!(
                "band gap ({gap}) must be at least the block size ({n_sub}) so the blocks do not overlap"
            )));
        }
        if start + gap + n_sub > grid.k() {
            return Err(Error::Config(format!(
                "dual-band layout exceeds grid: start {start} + gap {gap} + block {n_sub} > K {}",
                grid.k()
            )));
        }
        Ok(Self { grid, n_sub, gap, start })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    pub fn gap(&self) -> usize {
        self.gap
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Spacing between the two block starts in Hz: `gap * delta_f`.
    pub fn f_gap(&self) -> f64 {
        self.gap as f64 * self.grid.delta_f()
    }

    /// Occupied bandwidth of one block in Hz: `n_sub * delta_f`.
    pub fn subband_bandwidth(&self) -> f64 {
        self.n_sub as f64 * self.grid.delta_f()
    }

    /// Same layout with a different gap.
    pub fn with_gap(&self, gap: usize) -> Result<Self> {
        Self::new(self.grid, self.n_sub, gap, self.start)
    }
}

/// An occupied subset of the grid: the selection function `W[k]`.
///
/// The active list is stored strictly increasing, so iteration order (and
/// everything derived from it, e.g. measurement vector layout) is
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SubcarrierSelection {
    grid: FrequencyGrid,
    active: Vec<usize>,
}

impl SubcarrierSelection {
    /// Selection from an explicit index list. The list is sorted; duplicates
    /// and out-of-range indices are rejected.
    pub fn from_indices(grid: FrequencyGrid, mut indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::Config("selection must contain at least one subcarrier".into()));
        }
        indices.sort_unstable();
        for pair in indices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::Config(format!("duplicate subcarrier index {}", pair[0])));
            }
        }
        if *indices.last().unwrap() >= grid.k() {
            return Err(Error::Config(format!(
                "subcarrier index {} out of range for K = {}",
                indices.last().unwrap(),
                grid.k()
            )));
        }
        Ok(Self { grid, active: indices })
    }

    /// All K subcarriers active.
    pub fn full_band(grid: FrequencyGrid) -> Self {
        let active = (0..grid.k()).collect();
        Self { grid, active }
    }

    /// One contiguous block of `count` carriers starting at `start`.
    pub fn contiguous(grid: FrequencyGrid, start: usize, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Config("contiguous selection must contain at least one subcarrier".into()));
        }
        if start + count > grid.k() {
            return Err(Error::Config(format!(
                "contiguous selection exceeds grid: start {start} + count {count} > K {}",
                grid.k()
            )));
        }
        Ok(Self { grid, active: (start..start + count).collect() })
    }

    /// The two-block layout described by `band`. The active list is the
    /// sorted union of both blocks; `gap >= n_sub` guarantees they are
    /// disjoint, so `m() == 2 * n_sub` always.
    pub fn dual_band(band: &DualBandConfig) -> Self {
        let lo = band.start()..band.start() + band.n_sub();
        let hi = band.start() + band.gap()..band.start() + band.gap() + band.n_sub();
        let active = lo.chain(hi).collect();
        Self { grid: *band.grid(), active }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    /// Active subcarrier indices, strictly increasing.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Number of active subcarriers, `M = sum_k W[k]`.
    pub fn m(&self) -> usize {
        self.active.len()
    }

    /// `W[k]` for one index.
    pub fn is_active(&self, k: usize) -> bool {
        self.active.binary_search(&k).is_ok()
    }

    /// True when the active indices form one unbroken run.
    pub fn is_contiguous(&self) -> bool {
        self.active.windows(2).all(|pair| pair[1] == pair[0] + 1)
    }
}
