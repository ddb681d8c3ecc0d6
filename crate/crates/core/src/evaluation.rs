//! RMSE evaluation, the single-target delay CRB, and Monte-Carlo sweeps.
//!
//! Estimators return components in extraction (power) order, so the RMSE
//! metric first solves the optimal one-to-one assignment between estimated
//! and true delays — index-order pairing would charge errors that are pure
//! reordering. The Cramér–Rao bound for the single-target model provides the
//! reference curve for efficiency checks, and the sweep drivers run seeded,
//! reproducible trial batches over SNR or band-gap axes.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::channel::{synthesize_trial, ScenarioSpec};
use crate::error::{Error, Result};
use crate::estimators::{
    mle_single, omp, relax, Component, EstimateSet, RelaxConfig, SteeringOperator,
};
use crate::exec::run_indexed;
use crate::freqgrid::SubcarrierSelection;
use crate::profile::DelayGrid;

/// Beyond this the exhaustive assignment search is unreasonable.
const MAX_ASSOCIATED_TARGETS: usize = 8;

/// Which estimator a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Relax,
    Omp,
    Mle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Relax => "relax",
            Method::Omp => "omp",
            Method::Mle => "mle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relax" => Ok(Method::Relax),
            "omp" => Ok(Method::Omp),
            "mle" => Ok(Method::Mle),
            other => Err(Error::Config(format!(
                "unknown method '{other}' (expected relax, omp, or mle)"
            ))),
        }
    }
}

/// Estimator knobs shared by every trial of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorSettings {
    /// Delay-grid oversampling factor relative to 1/(K·Δf).
    pub osf: usize,
    /// Early-stop residual energy for relax (0 = run to the target count).
    pub epsilon: f64,
    pub max_refinement_cycles: usize,
    pub cycle_tolerance: f64,
}

impl Default for EstimatorSettings {
    fn default() -> Self {
        Self { osf: 16, epsilon: 0.0, max_refinement_cycles: 20, cycle_tolerance: 1e-8 }
    }
}

impl EstimatorSettings {
    fn relax_config(&self, l: usize) -> RelaxConfig {
        RelaxConfig {
            l_max: l,
            epsilon: self.epsilon,
            max_refinement_cycles: self.max_refinement_cycles,
            cycle_tolerance: self.cycle_tolerance,
        }
    }
}

/// One trial's scored outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial_index: usize,
    pub method: Method,
    /// `(tau_true, tau_hat)` after optimal association, in true-delay order.
    pub pairs: Vec<(f64, f64)>,
    /// Per-trial mean squared delay error, s².
    pub mse: f64,
}

/// Aggregated result for one sweep axis point and method.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub snr_db: f64,
    /// Band gap in subcarriers; `None` for sweeps over a fixed band.
    pub gap: Option<usize>,
    pub method: Method,
    /// Delay RMSE in seconds across all trials and targets.
    pub rmse: f64,
    /// `√CRB` in seconds, attached for single-target scenarios only.
    pub crb_std: Option<f64>,
    pub trials: usize,
}

/// Rows in axis-major, method-minor order, ready for CSV emission.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

/// Optimal one-to-one association between true delays and estimated
/// components, minimizing the total squared delay error over all
/// permutations (exhaustive; target counts are small).
///
/// Returns the `(tau_true, tau_hat)` pairs in true-delay order and the
/// per-trial mean squared error `(1/L)Σ(τ̂−τ)²`.
///
/// # Errors
///
/// Component and true-target counts must match and stay ≤ 8.
pub fn associate_and_rmse(
    true_taus: &[f64],
    est: &EstimateSet,
) -> Result<(Vec<(f64, f64)>, f64)> {
    let l = true_taus.len();
    if est.components.len() != l {
        return Err(Error::Evaluation(format!(
            "cannot associate {} estimates with {} targets",
            est.components.len(),
            l
        )));
    }
    if l == 0 {
        return Err(Error::Evaluation("no targets to associate".into()));
    }
    if l > MAX_ASSOCIATED_TARGETS {
        return Err(Error::Evaluation(format!(
            "association supports at most {MAX_ASSOCIATED_TARGETS} targets, got {l}"
        )));
    }

    let mut best_cost = f64::INFINITY;
    let mut best: Vec<usize> = (0..l).collect();
    for perm in (0..l).permutations(l) {
        let cost: f64 = perm
            .iter()
            .zip(true_taus)
            .map(|(&j, &t)| {
                let d = est.components[j].tau - t;
                d * d
            })
            .sum();
        if cost < best_cost {
            best_cost = cost;
            best = perm;
        }
    }
    let pairs = best
        .iter()
        .zip(true_taus)
        .map(|(&j, &t)| (t, est.components[j].tau))
        .collect();
    Ok((pairs, best_cost / l as f64))
}

/// Cramér–Rao bound on the delay variance (s²) for a single target with
/// unknown complex amplitude:
///
/// `CRB(τ) = σ² / (2·|α|²·(2π·Δf)²·S_k)`, `S_k = Σ_{k∈S}(k − k̄)²`,
///
/// with `|α|²/σ² = 10^(snr_db/10)` under the channel SNR convention
/// (`E|α|² = 1`, so for Rayleigh gains this is the bound at the mean gain
/// power).
///
/// # Errors
///
/// At least two distinct subcarriers are needed; with one, delay and phase
/// are indistinguishable and the bound is unbounded.
pub fn crb_delay_single(sel: &SubcarrierSelection, snr_db: f64) -> Result<f64> {
    if sel.m() < 2 {
        return Err(Error::Degenerate(
            "delay CRB needs at least 2 active subcarriers".into(),
        ));
    }
    let mean = sel.active().iter().sum::<usize>() as f64 / sel.m() as f64;
    let s_k: f64 = sel.active().iter().map(|&k| (k as f64 - mean).powi(2)).sum();
    if s_k <= 0.0 {
        return Err(Error::Degenerate("selection has zero index spread".into()));
    }
    let inv_snr = 10f64.powf(-snr_db / 10.0);
    let omega = std::f64::consts::TAU * sel.grid().delta_f();
    Ok(inv_snr / (2.0 * omega * omega * s_k))
}

/// Run `method` on one measurement, fixing the component count at `l`
/// (ignored by [`Method::Mle`], which always extracts exactly one).
pub fn estimate_with(
    method: Method,
    y: &crate::channel::MeasurementVector,
    l: usize,
    op: &SteeringOperator,
    settings: &EstimatorSettings,
) -> Result<EstimateSet> {
    match method {
        Method::Relax => relax(y, &settings.relax_config(l), op),
        Method::Omp => omp(y, l, op),
        Method::Mle => {
            let (tau, alpha) = mle_single(y, op)?;
            let a = op.steering_vector(tau);
            let residual_energy = y
                .samples()
                .iter()
                .zip(&a)
                .map(|(yi, ai)| (yi - alpha * ai).norm_sqr())
                .sum();
            Ok(EstimateSet {
                components: vec![Component { tau, alpha }],
                residual_energy,
                cycles_used: 0,
                converged: true,
            })
        }
    }
}

fn check_sweep_args(
    scenario: &ScenarioSpec,
    methods: &[Method],
    trials: usize,
) -> Result<()> {
    if trials == 0 {
        return Err(Error::Evaluation("sweep needs at least one trial".into()));
    }
    if methods.is_empty() {
        return Err(Error::Evaluation("sweep needs at least one method".into()));
    }
    if scenario.delays.is_empty() {
        return Err(Error::Evaluation("scenario has no targets".into()));
    }
    if methods.contains(&Method::Mle) && scenario.delays.len() != 1 {
        return Err(Error::Evaluation(
            "mle estimates a single path; scenario has multiple targets".into(),
        ));
    }
    Ok(())
}

/// All trials of one axis point, every method scored on the same
/// measurement. Trials run concurrently; outputs are in trial order.
fn run_axis(
    spec: &ScenarioSpec,
    methods: &[Method],
    axis_index: u32,
    trials: usize,
    op: &SteeringOperator,
    settings: &EstimatorSettings,
) -> Result<Vec<Vec<TrialResult>>> {
    let l = spec.delays.len();
    run_indexed(trials, |t| -> Result<Vec<TrialResult>> {
        let (targets, y) = synthesize_trial(spec, op.selection(), axis_index, t as u32)?;
        let truth: Vec<f64> = targets.iter().map(|tg| tg.tau).collect();
        methods
            .iter()
            .map(|&method| {
                let est = estimate_with(method, &y, l, op, settings)?;
                let (pairs, mse) = associate_and_rmse(&truth, &est)?;
                Ok(TrialResult { trial_index: t, method, pairs, mse })
            })
            .collect()
    })
    .into_iter()
    .collect()
}

/// RMSE over all trials of one method at one axis point, reduced in trial
/// order so the result does not depend on scheduling.
fn reduce_rmse(per_trial: &[Vec<TrialResult>], method_slot: usize) -> f64 {
    let sum: f64 = per_trial.iter().map(|tr| tr[method_slot].mse).sum();
    (sum / per_trial.len() as f64).sqrt()
}

/// `√CRB` column for single-target scenarios.
fn crb_column(spec: &ScenarioSpec, sel: &SubcarrierSelection, snr_db: f64) -> Option<f64> {
    if spec.delays.len() != 1 {
        return None;
    }
    crb_delay_single(sel, snr_db).ok().map(f64::sqrt)
}

/// Monte-Carlo RMSE versus SNR.
///
/// For each SNR point, `trials` independent trials are generated with gains
/// and noise keyed by `(master_seed, snr_index, trial_index)`; all methods
/// are scored on the same measurements. Single-target scenarios also carry
/// the `√CRB` reference per point.
pub fn sweep_snr(
    scenario: &ScenarioSpec,
    methods: &[Method],
    snr_list: &[f64],
    trials: usize,
    master_seed: u64,
    settings: &EstimatorSettings,
) -> Result<SweepResult> {
    check_sweep_args(scenario, methods, trials)?;
    if snr_list.is_empty() {
        return Err(Error::Evaluation("sweep needs at least one SNR point".into()));
    }
    let sel = scenario.selection();
    let search = DelayGrid::oversampled(sel.grid(), settings.osf)?;
    let op = SteeringOperator::new(sel, search)?;

    let mut points = Vec::with_capacity(snr_list.len() * methods.len());
    for (axis, &snr_db) in snr_list.iter().enumerate() {
        let spec_axis =
            ScenarioSpec { snr_db, seed: master_seed, ..scenario.clone() };
        let per_trial = run_axis(&spec_axis, methods, axis as u32, trials, &op, settings)?;
        let crb_std = crb_column(scenario, op.selection(), snr_db);
        for (slot, &method) in methods.iter().enumerate() {
            points.push(SweepPoint {
                snr_db,
                gap: None,
                method,
                rmse: reduce_rmse(&per_trial, slot),
                crb_std,
                trials,
            });
        }
    }
    Ok(SweepResult { points })
}

/// Monte-Carlo RMSE versus band gap at fixed SNR.
///
/// The first subband stays put; the second moves to realize each gap.
/// Trials are keyed by `(master_seed, gap_index, trial_index)`.
pub fn sweep_gap(
    scenario: &ScenarioSpec,
    method: Method,
    gap_list: &[usize],
    snr_db: f64,
    trials: usize,
    master_seed: u64,
    settings: &EstimatorSettings,
) -> Result<SweepResult> {
    check_sweep_args(scenario, &[method], trials)?;
    if gap_list.is_empty() {
        return Err(Error::Evaluation("sweep needs at least one gap".into()));
    }
    let mut points = Vec::with_capacity(gap_list.len());
    for (axis, &gap) in gap_list.iter().enumerate() {
        let spec_axis = ScenarioSpec {
            snr_db,
            seed: master_seed,
            ..scenario.with_gap(gap)?
        };
        let sel = spec_axis.selection();
        let search = DelayGrid::oversampled(sel.grid(), settings.osf)?;
        let op = SteeringOperator::new(sel, search)?;
        let per_trial = run_axis(&spec_axis, &[method], axis as u32, trials, &op, settings)?;
        points.push(SweepPoint {
            snr_db,
            gap: Some(gap),
            method,
            rmse: reduce_rmse(&per_trial, 0),
            crb_std: crb_column(&spec_axis, op.selection(), snr_db),
            trials,
        });
    }
    Ok(SweepResult { points })
}
