//! Subcommand implementations.
//!
//! Every command renders one or more CSV tables. With `--out PATH` the
//! primary table goes to `PATH` and secondary tables to derived sibling
//! files (`results.csv` → `results.scf.csv`); without it, tables print to
//! stdout separated by `# table: <tag>` marker lines.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use dualband_delay::channel::{synthesize_trial, GainModel, ScenarioSpec};
use dualband_delay::estimators::SteeringOperator;
use dualband_delay::evaluation::{estimate_with, sweep_gap, sweep_snr, EstimatorSettings};
use dualband_delay::freqgrid::{DualBandConfig, FrequencyGrid, SubcarrierSelection};
use dualband_delay::profile::{delay_profile, psf, psf_metrics, reconstruct_full_band, DelayGrid};

use crate::config::{GainModelKind, RunConfig, SweepAxis};
use crate::csvout::{
    estimate_csv, metrics_csv, profile_csv, scf_csv, sweep_gap_csv, sweep_snr_csv, GapRow, SnrRow,
};
use crate::error::{CliError, Result};

/// One rendered CSV table; `tag` names the sibling file / stdout section.
struct Table {
    tag: &'static str,
    csv: String,
}

/// `results.csv` + `scf` → `results.scf.csv` (extension-less paths just
/// gain the suffix).
fn sibling(base: &Path, tag: &str) -> PathBuf {
    let name = base.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let stem = name.strip_suffix(".csv").unwrap_or(name);
    base.with_file_name(format!("{stem}.{tag}.csv"))
}

/// Write the primary table to `out` and the rest to sibling files, or dump
/// all of them to stdout with section markers.
fn emit(out: Option<&Path>, tables: &[Table]) -> Result<()> {
    match out {
        Some(base) => {
            for (i, t) in tables.iter().enumerate() {
                let path = if i == 0 { base.to_path_buf() } else { sibling(base, t.tag) };
                fs::write(&path, &t.csv)
                    .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            }
        }
        None => {
            // A reader that stops early (e.g. `head`) closes the pipe; treat
            // that as a normal end of output rather than an error.
            let stdout = io::stdout();
            let mut w = stdout.lock();
            let mut first = true;
            for t in tables {
                let header = if first { String::new() } else { "\n".into() };
                first = false;
                let r = write!(w, "{header}# table: {}\n{}", t.tag, t.csv);
                match r {
                    Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(()),
                    Err(e) => return Err(CliError::Runtime(format!("stdout: {e}"))),
                    Ok(()) => {}
                }
            }
        }
    }
    Ok(())
}

fn band_from(cfg: &RunConfig, gap: usize) -> Result<DualBandConfig> {
    let grid = FrequencyGrid::new(cfg.k, cfg.delta_f_hz, cfg.f_carrier_hz)?;
    Ok(DualBandConfig::new(grid, cfg.n_sub, gap, cfg.start_index)?)
}

fn required_gap(cfg: &RunConfig) -> Result<usize> {
    cfg.gap_subcarriers.ok_or_else(|| {
        CliError::Config("this command needs a band: set gap_subcarriers or gap_hz".into())
    })
}

fn scenario_from(cfg: &RunConfig, band: DualBandConfig) -> Result<ScenarioSpec> {
    if cfg.targets_ns.is_empty() {
        return Err(CliError::Config("this command needs targets_ns".into()));
    }
    let gains = match cfg.gain_model {
        GainModelKind::Fixed => GainModel::Fixed(cfg.fixed_gains.clone()),
        GainModelKind::Rayleigh => GainModel::Rayleigh,
    };
    Ok(ScenarioSpec {
        band,
        delays: cfg.targets_ns.iter().map(|t| t * 1e-9).collect(),
        gains,
        snr_db: cfg.snr_db.unwrap_or(f64::INFINITY),
        seed: cfg.seed,
    })
}

fn settings_from(cfg: &RunConfig) -> EstimatorSettings {
    EstimatorSettings {
        osf: cfg.osf,
        epsilon: cfg.epsilon,
        max_refinement_cycles: cfg.max_refinement_cycles,
        cycle_tolerance: cfg.cycle_tolerance,
    }
}

/// Delay profile of a measurement scattered back onto the full grid
/// (inactive subcarriers zero), over one whole delay period.
fn measurement_profile(
    sel: &SubcarrierSelection,
    samples: &[Complex64],
    osf: usize,
) -> Result<dualband_delay::profile::DelayProfile> {
    let grid = sel.grid();
    let mut cfr = vec![Complex64::ZERO; grid.k()];
    for (i, &k) in sel.active().iter().enumerate() {
        cfr[k] = samples[i];
    }
    let delays = DelayGrid::oversampled(grid, osf)?;
    Ok(delay_profile(grid, &cfr, &delays)?)
}

/// Subcarrier selection function, point-spread function over a symmetric
/// full-period window, and the PSF metrics row.
pub fn cmd_psf(cfg: &RunConfig, out: Option<&Path>) -> Result<()> {
    let band = band_from(cfg, required_gap(cfg)?)?;
    let sel = SubcarrierSelection::dual_band(&band);
    let grid = band.grid();
    let points = cfg
        .osf
        .checked_mul(grid.k())
        .filter(|p| *p < usize::MAX / 2)
        .ok_or_else(|| CliError::Config("osf * K overflows the delay grid".into()))?;
    let step = grid.unambiguous_range() / points as f64;
    let half = points / 2;
    let window = DelayGrid::from_points(-(half as f64) * step, step, points + 1)?;
    let p = psf(&sel, &window)?;
    let metrics = psf_metrics(&p)?;
    emit(
        out,
        &[
            Table { tag: "psf", csv: profile_csv(&p) },
            Table { tag: "scf", csv: scf_csv(&sel) },
            Table { tag: "metrics", csv: metrics_csv(&metrics) },
        ],
    )
}

/// Delay profile of one synthesized (optionally noisy) scene.
pub fn cmd_profile(cfg: &RunConfig, out: Option<&Path>) -> Result<()> {
    let band = band_from(cfg, required_gap(cfg)?)?;
    let sel = SubcarrierSelection::dual_band(&band);
    let spec = scenario_from(cfg, band)?;
    let (_, y) = synthesize_trial(&spec, &sel, 0, 0)?;
    let profile = measurement_profile(&sel, y.samples(), cfg.osf)?;
    emit(out, &[Table { tag: "profile", csv: profile_csv(&profile) }])
}

/// One seeded estimation trial; optionally also the raw split-band profile
/// and the full-band profile rebuilt from the estimate.
pub fn cmd_estimate(cfg: &RunConfig, out: Option<&Path>, emit_profiles: bool) -> Result<()> {
    let band = band_from(cfg, required_gap(cfg)?)?;
    let sel = SubcarrierSelection::dual_band(&band);
    let spec = scenario_from(cfg, band)?;
    let (_, y) = synthesize_trial(&spec, &sel, 0, 0)?;
    let l = cfg.component_count();
    let search = DelayGrid::oversampled(sel.grid(), cfg.osf)?;
    let op = SteeringOperator::new(sel.clone(), search)?;
    let est = estimate_with(cfg.method, &y, l, &op, &settings_from(cfg))?;

    let mut tables = vec![Table { tag: "estimate", csv: estimate_csv(&est) }];
    if emit_profiles || cfg.emit_profiles {
        let idft = measurement_profile(&sel, y.samples(), cfg.osf)?;
        let grid = sel.grid();
        let recon_cfr = reconstruct_full_band(grid, &est.targets())?;
        let delays = DelayGrid::oversampled(grid, cfg.osf)?;
        let recon = delay_profile(grid, &recon_cfr, &delays)?;
        tables.push(Table { tag: "idft", csv: profile_csv(&idft) });
        tables.push(Table { tag: "recon", csv: profile_csv(&recon) });
    }
    emit(out, &tables)
}

/// Monte-Carlo RMSE sweep over SNR (optionally per band gap) or over the
/// band gap itself.
pub fn cmd_sweep(cfg: &RunConfig, out: Option<&Path>, trials_override: Option<usize>) -> Result<()> {
    let Some(axis) = cfg.sweep else {
        return Err(CliError::Config("the sweep command needs sweep = snr or sweep = gap".into()));
    };
    let trials = trials_override.unwrap_or(cfg.trials);
    if trials == 0 {
        return Err(CliError::Config("trials must be at least 1".into()));
    }
    if let Some(l) = cfg.l_max {
        if l != cfg.targets_ns.len() {
            return Err(CliError::Config(format!(
                "sweeps fix the model order at the target count ({}), but L_max = {l}",
                cfg.targets_ns.len()
            )));
        }
    }
    let settings = settings_from(cfg);
    let methods = cfg.sweep_methods();

    match axis {
        SweepAxis::Snr => {
            // A gap list turns one SNR sweep into one per band layout, with
            // the method column tagged by gap so rows stay distinguishable.
            let gaps: Vec<usize> = if cfg.gap_sweep_subcarriers.is_empty() {
                vec![required_gap(cfg)?]
            } else {
                cfg.gap_sweep_subcarriers.clone()
            };
            let tag_gap = gaps.len() > 1;
            let mut rows: Vec<SnrRow> = Vec::new();
            for &gap in &gaps {
                let spec = scenario_from(cfg, band_from(cfg, gap)?)?;
                let result =
                    sweep_snr(&spec, &methods, &cfg.snr_sweep_db, trials, cfg.seed, &settings)?;
                rows.extend(result.points.into_iter().map(|p| SnrRow {
                    snr_db: p.snr_db,
                    method: if tag_gap {
                        format!("{}_g{gap}", p.method)
                    } else {
                        p.method.name().to_string()
                    },
                    rmse_ns: p.rmse * 1e9,
                    crb_std_ns: p.crb_std.map(|c| c * 1e9),
                    trials: p.trials,
                }));
            }
            emit(out, &[Table { tag: "sweep", csv: sweep_snr_csv(&rows) }])
        }
        SweepAxis::Gap => {
            if methods.len() != 1 {
                return Err(CliError::Config("a gap sweep runs a single method".into()));
            }
            let snrs: Vec<f64> = if cfg.snr_sweep_db.is_empty() {
                vec![cfg.snr_db.unwrap_or(f64::INFINITY)]
            } else {
                cfg.snr_sweep_db.clone()
            };
            let base_gap = cfg.gap_sweep_subcarriers[0];
            let spec = scenario_from(cfg, band_from(cfg, base_gap)?)?;
            let mut rows: Vec<GapRow> = Vec::new();
            for &snr in &snrs {
                let result = sweep_gap(
                    &spec,
                    methods[0],
                    &cfg.gap_sweep_subcarriers,
                    snr,
                    trials,
                    cfg.seed,
                    &settings,
                )?;
                rows.extend(result.points.into_iter().map(|p| GapRow {
                    gap_mhz: p.gap.expect("gap sweeps always set the gap") as f64
                        * cfg.delta_f_hz
                        / 1e6,
                    snr_db: p.snr_db,
                    method: p.method.name().to_string(),
                    rmse_ns: p.rmse * 1e9,
                    trials: p.trials,
                }));
            }
            emit(out, &[Table { tag: "sweep", csv: sweep_gap_csv(&rows) }])
        }
    }
}
