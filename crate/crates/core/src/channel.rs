//! Channel frequency response synthesis and measurement simulation.
//!
//! A scene is a list of [`Target`]s (delay + complex gain). [`synth_cfr`]
//! produces the K-point channel frequency response restricted to a
//! [`SubcarrierSelection`]; [`measurement`] packs the active samples into a
//! [`MeasurementVector`]; [`add_awgn`] overlays circular complex noise at a
//! per-subcarrier SNR.
//!
//! Monte-Carlo reproducibility: every simulated trial derives its RNG from
//! `(master_seed, axis_index, trial_index)` via [`trial_rng`], so any trial
//! can be regenerated in isolation and batch results do not depend on
//! execution order or thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::freqgrid::{DualBandConfig, SubcarrierSelection};
use crate::phasor::{cycles, unit_phasor};

/// One propagation path: delay in seconds, complex amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    pub tau: f64,
    pub gain: Complex64,
}

impl Target {
    pub fn new(tau: f64, gain: Complex64) -> Self {
        Self { tau, gain }
    }
}

/// Active-subcarrier samples of a (possibly noisy) channel response.
///
/// Samples are ordered by ascending active subcarrier index, matching
/// [`SubcarrierSelection::active`]. `noise_variance` records the per-sample
/// complex noise power that was added (0 for noiseless synthesis).
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementVector {
    sel: SubcarrierSelection,
    samples: Vec<Complex64>,
    noise_variance: f64,
}

impl MeasurementVector {
    /// Wrap raw samples. Mostly useful in tests; simulation code should go
    /// through [`measurement`] / [`add_awgn`].
    pub fn from_samples(
        sel: SubcarrierSelection,
        samples: Vec<Complex64>,
        noise_variance: f64,
    ) -> Result<Self> {
        if samples.len() != sel.m() {
            return Err(Error::Contract(format!(
                "sample count {} does not match selection size {}",
                samples.len(),
                sel.m()
            )));
        }
        Ok(Self { sel, samples, noise_variance })
    }

    pub fn selection(&self) -> &SubcarrierSelection {
        &self.sel
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }
}

fn validate_targets(sel: &SubcarrierSelection, targets: &[Target]) -> Result<()> {
    let range = sel.grid().unambiguous_range();
    for (i, t) in targets.iter().enumerate() {
        if !t.tau.is_finite() || t.tau < 0.0 || t.tau >= range {
            return Err(Error::Domain(format!(
                "target {i} delay {} s outside unambiguous range [0, {range}) s",
                t.tau
            )));
        }
        if !t.gain.re.is_finite() || !t.gain.im.is_finite() {
            return Err(Error::Domain(format!("target {i} gain is not finite")));
        }
    }
    Ok(())
}

/// Channel frequency response on the full K-point grid, masked by the
/// selection: `H[k] = W[k] * sum_l gain_l * exp(-i 2π k Δf τ_l)`.
///
/// Inactive entries are exactly zero (not merely small).
///
/// # Errors
///
/// Any delay outside `[0, 1/Δf)` or non-finite gain is a domain error.
pub fn synth_cfr(sel: &SubcarrierSelection, targets: &[Target]) -> Result<Vec<Complex64>> {
    validate_targets(sel, targets)?;
    let delta_f = sel.grid().delta_f();
    let mut h = vec![Complex64::ZERO; sel.grid().k()];
    for t in targets {
        for &k in sel.active() {
            h[k] += t.gain * unit_phasor(-cycles(k, delta_f, t.tau));
        }
    }
    Ok(h)
}

/// Noiseless measurement: active samples of [`synth_cfr`] in ascending
/// subcarrier order.
pub fn measurement(sel: &SubcarrierSelection, targets: &[Target]) -> Result<MeasurementVector> {
    let h = synth_cfr(sel, targets)?;
    let samples = sel.active().iter().map(|&k| h[k]).collect();
    Ok(MeasurementVector { sel: sel.clone(), samples, noise_variance: 0.0 })
}

/// Overlay i.i.d. circular complex Gaussian noise at per-subcarrier SNR
/// `snr_db`, i.e. noise variance `σ² = 10^(-snr_db/10)` per sample (gains are
/// modeled with unit average power). `snr_db = +∞` is the no-noise sentinel:
/// the input is returned unchanged with `noise_variance = 0`.
///
/// Draws two standard normals per active sample in ascending subcarrier
/// order, so the consumed RNG stream is reproducible.
pub fn add_awgn<R: Rng>(m: &MeasurementVector, snr_db: f64, rng: &mut R) -> MeasurementVector {
    assert!(
        snr_db.is_finite() || snr_db == f64::INFINITY,
        "snr_db must be finite or +inf, got {snr_db}"
    );
    if snr_db == f64::INFINITY {
        return MeasurementVector { noise_variance: 0.0, ..m.clone() };
    }
    let variance = 10f64.powf(-snr_db / 10.0);
    let scale = (variance / 2.0).sqrt();
    let samples = m
        .samples
        .iter()
        .map(|&y| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            y + Complex64::new(re * scale, im * scale)
        })
        .collect();
    MeasurementVector { sel: m.sel.clone(), samples, noise_variance: m.noise_variance + variance }
}

/// `l` i.i.d. circular complex Gaussian gains with unit average power
/// (`E|g|² = 1`, so Re and Im each have variance 1/2). The magnitudes are
/// Rayleigh with median `sqrt(ln 4) / sqrt 2 ≈ 0.8326`.
pub fn draw_gains<R: Rng>(l: usize, rng: &mut R) -> Vec<Complex64> {
    let scale = 0.5_f64.sqrt();
    (0..l)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        })
        .collect()
}

/// How per-trial gains are produced.
#[derive(Debug, Clone, PartialEq)]
pub enum GainModel {
    /// Same gains every trial.
    Fixed(Vec<Complex64>),
    /// Fresh unit-power complex Gaussian draw per trial.
    Rayleigh,
}

/// Everything needed to regenerate a simulated scene: band layout, true
/// delays (seconds), gain model, per-subcarrier SNR (`+∞` = noiseless), and
/// the master seed.
///
/// Delays stay fixed across trials; gains are redrawn per trial under
/// [`GainModel::Rayleigh`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub band: DualBandConfig,
    pub delays: Vec<f64>,
    pub gains: GainModel,
    pub snr_db: f64,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn selection(&self) -> SubcarrierSelection {
        SubcarrierSelection::dual_band(&self.band)
    }

    /// Same scenario over a different band gap.
    pub fn with_gap(&self, gap: usize) -> Result<Self> {
        Ok(Self { band: self.band.with_gap(gap)?, ..self.clone() })
    }
}

/// Counter-keyed RNG for one work item. Reseeding with the same
/// `(master_seed, axis_index, trial_index)` reproduces the stream exactly,
/// independent of which thread (or run) executes the trial.
pub fn trial_rng(master_seed: u64, axis_index: u32, trial_index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(((axis_index as u64) << 32) | trial_index as u64);
    rng
}

/// Generate one trial of `spec`: draw gains (model-dependent), synthesize the
/// measurement on `sel`, and add noise at `spec.snr_db`. Gains are drawn
/// before noise from the same per-trial stream.
///
/// `sel` is passed in (rather than derived from `spec`) so sweeps that vary
/// the selection can reuse one prebuilt object.
pub fn synthesize_trial(
    spec: &ScenarioSpec,
    sel: &SubcarrierSelection,
    axis_index: u32,
    trial_index: u32,
) -> Result<(Vec<Target>, MeasurementVector)> {
    let mut rng = trial_rng(spec.seed, axis_index, trial_index);
    let gains = match &spec.gains {
        GainModel::Fixed(g) => {
            if g.len() != spec.delays.len() {
                return Err(Error::Config(format!(
                    "fixed gain count {} does not match target count {}",
                    g.len(),
                    spec.delays.len()
                )));
            }
            g.clone()
        }
        GainModel::Rayleigh => draw_gains(spec.delays.len(), &mut rng),
    };
    let targets: Vec<Target> =
        spec.delays.iter().zip(&gains).map(|(&tau, &gain)| Target::new(tau, gain)).collect();
    let clean = measurement(sel, &targets)?;
    let noisy = add_awgn(&clean, spec.snr_db, &mut rng);
    Ok((targets, noisy))
}
