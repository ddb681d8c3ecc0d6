//! Delay-domain profiles and point-spread functions.
//!
//! The inverse transform of a channel frequency response `H[k]` over a
//! uniform delay grid,
//!
//! `h(τ) = (1/K) · Σ_k H[k] · exp(+i 2π k Δf τ)`,
//!
//! is the delay profile; applying the same transform to the binary selection
//! function `W[k]` yields the point-spread function (PSF) that every target
//! is smeared with. For the dual-band layout the PSF factors into a
//! single-block kernel times `1 + exp(i 2π f_gap τ)` — a cosine envelope
//! whose first null at `1/(2 f_gap)` is what narrows the effective mainlobe.
//!
//! Evaluation is defined by the pointwise sum above. When the delay grid step
//! divides the lattice period exactly (the usual oversampled-by-OSF case) the
//! sum is computed through an inverse FFT; this is an optimization only and
//! agrees with the direct evaluation to machine precision.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::channel::{synth_cfr, Target};
use crate::error::{Error, Result};
use crate::freqgrid::{DualBandConfig, FrequencyGrid, SubcarrierSelection};
use crate::phasor::{cycles, unit_phasor};

/// Hard cap on delay grid size (and thus FFT length): 2^24 points.
const MAX_POINTS: usize = 1 << 24;

/// Uniform delay grid `τ_i = tau_min + i * step`, `i = 0 .. points-1`.
///
/// Negative delays are allowed so profiles can be rendered on symmetric
/// windows around zero; estimator search grids are additionally restricted to
/// `[0, 1/Δf)` by [`SteeringOperator::new`](crate::estimators::SteeringOperator::new).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayGrid {
    tau_min: f64,
    step: f64,
    points: usize,
}

impl DelayGrid {
    /// Grid covering `[tau_min, tau_max]` with the given step;
    /// `points = floor((tau_max - tau_min) / step) + 1`.
    pub fn new(tau_min: f64, tau_max: f64, step: f64) -> Result<Self> {
        if !(tau_min.is_finite() && tau_max.is_finite()) || tau_min >= tau_max {
            return Err(Error::Config(format!(
                "delay grid needs tau_min < tau_max, got [{tau_min}, {tau_max}]"
            )));
        }
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Config(format!("delay grid step must be positive, got {step}")));
        }
        // The tiny relative slack keeps spans that are exact multiples of the
        // step from losing their last point to rounding.
        let count = ((tau_max - tau_min) / step * (1.0 + 1e-12)).floor();
        if count >= MAX_POINTS as f64 {
            return Err(Error::Config(format!("delay grid too large ({count} steps)")));
        }
        Ok(Self { tau_min, step, points: count as usize + 1 })
    }

    /// Grid from an explicit point count.
    pub fn from_points(tau_min: f64, step: f64, points: usize) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) || !tau_min.is_finite() {
            return Err(Error::Config(format!(
                "delay grid needs finite tau_min and positive step, got ({tau_min}, {step})"
            )));
        }
        if points == 0 || points > MAX_POINTS {
            return Err(Error::Config(format!("delay grid point count {points} out of range")));
        }
        Ok(Self { tau_min, step, points })
    }

    /// The standard search grid: `[0, 1/Δf)` sampled at `osf` points per
    /// lattice resolution cell, i.e. step `1 / (osf · K · Δf)` and
    /// `osf · K` points. The right edge is excluded — it aliases to τ = 0.
    pub fn oversampled(grid: &FrequencyGrid, osf: usize) -> Result<Self> {
        if osf == 0 {
            return Err(Error::Config("oversampling factor must be at least 1".into()));
        }
        let points = osf
            .checked_mul(grid.k())
            .filter(|&p| p <= MAX_POINTS)
            .ok_or_else(|| Error::Config(format!("oversampling factor {osf} too large")))?;
        let step = 1.0 / (osf as f64 * grid.k() as f64 * grid.delta_f());
        Ok(Self { tau_min: 0.0, step, points })
    }

    pub fn tau_min(&self) -> f64 {
        self.tau_min
    }

    pub fn tau_max(&self) -> f64 {
        self.tau(self.points - 1)
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn tau(&self, i: usize) -> f64 {
        self.tau_min + i as f64 * self.step
    }

    pub fn taus(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.tau(i))
    }

    /// Index of the grid point closest to `tau`, clamped to the grid.
    pub fn nearest_index(&self, tau: f64) -> usize {
        let i = ((tau - self.tau_min) / self.step).round();
        i.clamp(0.0, (self.points - 1) as f64) as usize
    }

    /// FFT layout for transforms over this grid, if the step divides the
    /// delay period of a K-point lattice exactly: returns `(fft_len, offset)`
    /// with `fft_len = 1 / (step · Δf)` and `tau_min = offset · step`.
    pub(crate) fn dft_layout(&self, delta_f: f64) -> Option<(usize, i64)> {
        let len_f = 1.0 / (self.step * delta_f);
        let len = len_f.round();
        if len < 1.0 || len > MAX_POINTS as f64 || (len_f - len).abs() > 1e-9 * len {
            return None;
        }
        let off_f = self.tau_min / self.step;
        let off = off_f.round();
        if (off_f - off).abs() > 1e-9 {
            return None;
        }
        Some((len as usize, off as i64))
    }
}

/// A complex delay-domain profile sampled on a [`DelayGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct DelayProfile {
    grid: DelayGrid,
    values: Vec<Complex64>,
}

impl DelayProfile {
    pub fn grid(&self) -> &DelayGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Mainlobe/sidelobe summary of a PSF profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsfMetrics {
    /// Delay of the first magnitude null outward from τ = 0, seconds.
    pub mainlobe_first_null: f64,
    /// Highest sidelobe relative to the τ = 0 peak, dB (always ≤ 0).
    pub peak_sidelobe_level_db: f64,
    /// Delay at which that highest sidelobe occurs, seconds.
    pub highest_sidelobe_delay: f64,
}

/// Direct pointwise evaluation of the profile sum; the reference
/// implementation that the FFT path must reproduce.
pub(crate) fn eval_profile_direct(
    grid: &FrequencyGrid,
    h: &[Complex64],
    delays: &DelayGrid,
) -> Vec<Complex64> {
    let delta_f = grid.delta_f();
    let norm = 1.0 / grid.k() as f64;
    delays
        .taus()
        .map(|tau| {
            let mut acc = Complex64::ZERO;
            for (k, &hk) in h.iter().enumerate() {
                if hk.re == 0.0 && hk.im == 0.0 {
                    continue;
                }
                acc += hk * unit_phasor(cycles(k, delta_f, tau));
            }
            acc * norm
        })
        .collect()
}

fn eval_profile_fft(
    grid: &FrequencyGrid,
    h: &[Complex64],
    delays: &DelayGrid,
    len: usize,
    offset: i64,
) -> Vec<Complex64> {
    let mut buf = vec![Complex64::ZERO; len];
    for (k, &hk) in h.iter().enumerate() {
        buf[k % len] += hk;
    }
    FftPlanner::new().plan_fft_inverse(len).process(&mut buf);
    let norm = 1.0 / grid.k() as f64;
    (0..delays.points())
        .map(|i| {
            let t = (offset + i as i64).rem_euclid(len as i64) as usize;
            buf[t] * norm
        })
        .collect()
}

/// Delay profile of a full-grid frequency response:
/// `h(τ_i) = (1/K) Σ_k H[k] exp(+i 2π k Δf τ_i)`.
///
/// # Errors
///
/// `H` must have exactly K entries.
pub fn delay_profile(
    grid: &FrequencyGrid,
    h: &[Complex64],
    delays: &DelayGrid,
) -> Result<DelayProfile> {
    if h.len() != grid.k() {
        return Err(Error::Contract(format!(
            "frequency response has {} entries, grid has {}",
            h.len(),
            grid.k()
        )));
    }
    let values = match delays.dft_layout(grid.delta_f()) {
        Some((len, offset)) => eval_profile_fft(grid, h, delays, len, offset),
        None => eval_profile_direct(grid, h, delays),
    };
    Ok(DelayProfile { grid: *delays, values })
}

/// Point-spread function of a selection: the delay profile of `W[k]` itself.
/// Its τ = 0 value is `M / K`.
pub fn psf(sel: &SubcarrierSelection, delays: &DelayGrid) -> Result<DelayProfile> {
    let mut w = vec![Complex64::ZERO; sel.grid().k()];
    for &k in sel.active() {
        w[k] = Complex64::new(1.0, 0.0);
    }
    delay_profile(sel.grid(), &w, delays)
}

/// Dual-band PSF via its product form: a start-offset phase ramp times
/// `(1 + exp(i 2π f_gap τ))` times the single-block kernel
/// `(1/K) Σ_{m<n_sub} exp(i 2π m Δf τ)`.
///
/// Agrees with [`psf`] of the same layout pointwise to machine precision;
/// the factored gap term makes the cosine null at `τ = 1/(2 f_gap)` explicit.
pub fn psf_dualband_closed_form(band: &DualBandConfig, delays: &DelayGrid) -> DelayProfile {
    let delta_f = band.grid().delta_f();
    let norm = 1.0 / band.grid().k() as f64;
    let values = delays
        .taus()
        .map(|tau| {
            let mut block = Complex64::ZERO;
            for m in 0..band.n_sub() {
                block += unit_phasor(cycles(m, delta_f, tau));
            }
            let gap_factor = Complex64::new(1.0, 0.0) + unit_phasor(cycles(band.gap(), delta_f, tau));
            let ramp = unit_phasor(cycles(band.start(), delta_f, tau));
            ramp * gap_factor * block * norm
        })
        .collect();
    DelayProfile { grid: *delays, values }
}

/// Locate the first null and the peak sidelobe of a PSF profile.
///
/// The profile must contain τ = 0 (symmetric window or one starting at 0).
/// Scanning outward from the peak, the first local magnitude minimum is
/// accepted as the null if it is either deep (below 1% of the peak) or
/// bracketed by a sign flip of the underlying real kernel, which shows up as
/// a ~π phase jump between its neighbors. The sidelobe search then covers
/// every sample beyond that null distance on both sides.
///
/// # Errors
///
/// Diagnostic errors when τ = 0 is not on the grid, the peak is zero, no
/// null is resolved inside the window (grid too coarse or window too short),
/// or no samples remain beyond the null.
pub fn psf_metrics(profile: &DelayProfile) -> Result<PsfMetrics> {
    let grid = profile.grid();
    let center = grid.nearest_index(0.0);
    if grid.tau(center).abs() > 1e-6 * grid.step() {
        return Err(Error::Diagnostic(
            "profile window does not contain τ = 0; metrics need the mainlobe peak".into(),
        ));
    }
    let mag: Vec<f64> = profile.values().iter().map(|v| v.norm()).collect();
    let peak = mag[center];
    if peak <= 0.0 {
        return Err(Error::Diagnostic("profile peak at τ = 0 is zero".into()));
    }

    let values = profile.values();
    let mut null_at: Option<usize> = None;
    for i in center + 1..mag.len().saturating_sub(1) {
        if mag[i] <= mag[i - 1] && mag[i] < mag[i + 1] {
            let deep = mag[i] <= 0.01 * peak;
            let sign_flip = (values[i - 1] * values[i + 1].conj()).re < 0.0;
            if deep || sign_flip {
                null_at = Some(i);
                break;
            }
        }
    }
    let Some(null_idx) = null_at else {
        return Err(Error::Diagnostic(
            "no null resolved in the profile window; grid too coarse or window too short".into(),
        ));
    };
    let null_offset = grid.tau(null_idx) - grid.tau(center);

    let mut psl = f64::NEG_INFINITY;
    let mut psl_tau = f64::NAN;
    for (i, &m) in mag.iter().enumerate() {
        let tau = grid.tau(i);
        if (tau - grid.tau(center)).abs() > null_offset * (1.0 + 1e-9) && m > psl {
            psl = m;
            psl_tau = tau;
        }
    }
    if !psl.is_finite() {
        return Err(Error::Diagnostic("no samples beyond the first null; window too short".into()));
    }

    Ok(PsfMetrics {
        mainlobe_first_null: null_offset,
        peak_sidelobe_level_db: 20.0 * (psl / peak).log10(),
        highest_sidelobe_delay: psl_tau,
    })
}

/// Full-band frequency response implied by a set of estimated components:
/// `Ĥ[k] = Σ_l α_l exp(-i 2π k Δf τ_l)` for all K subcarriers. Same formula
/// and code path as [`synth_cfr`], so feeding back exact estimates reproduces
/// the original synthesis bit for bit.
pub fn reconstruct_full_band(grid: &FrequencyGrid, components: &[Target]) -> Result<Vec<Complex64>> {
    synth_cfr(&SubcarrierSelection::full_band(*grid), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table_grid() -> FrequencyGrid {
        FrequencyGrid::new(1024, 312.5e3, 5.2e9).unwrap()
    }

    #[test]
    fn point_count_follows_floor_rule() {
        let g = DelayGrid::new(0.0, 10e-9, 1e-9).unwrap();
        assert_eq!(g.points(), 11);
        assert_eq!(g.tau_max(), 10e-9);
        let g = DelayGrid::new(0.0, 9.5e-9, 1e-9).unwrap();
        assert_eq!(g.points(), 10);
        let g = DelayGrid::new(-5e-9, 5e-9, 1e-9).unwrap();
        assert_eq!(g.points(), 11);
        assert_eq!(g.nearest_index(0.0), 5);
    }

    #[test]
    fn grid_rejects_degenerate_parameters() {
        assert!(DelayGrid::new(1e-9, 1e-9, 1e-10).is_err());
        assert!(DelayGrid::new(2e-9, 1e-9, 1e-10).is_err());
        assert!(DelayGrid::new(0.0, 1e-9, 0.0).is_err());
        assert!(DelayGrid::new(0.0, 1e-9, -1e-10).is_err());
        assert!(DelayGrid::new(0.0, f64::NAN, 1e-10).is_err());
        assert!(DelayGrid::from_points(0.0, 1e-10, 0).is_err());
    }

    #[test]
    fn oversampled_covers_one_period_half_open() {
        let g = DelayGrid::oversampled(&table_grid(), 16).unwrap();
        assert_eq!(g.points(), 16 * 1024);
        assert_eq!(g.step(), 1.0 / (16.0 * 1024.0 * 312.5e3));
        assert_eq!(g.tau_min(), 0.0);
        assert!(g.tau_max() < 3.2e-6);
        // step ≈ 0.1953125 ns
        assert!((g.step() - 0.1953125e-9).abs() < 1e-24);
    }

    #[test]
    fn dft_layout_detects_oversampled_grids() {
        let grid = table_grid();
        let g = DelayGrid::oversampled(&grid, 16).unwrap();
        let (len, off) = g.dft_layout(grid.delta_f()).unwrap();
        assert_eq!(len, 16 * 1024);
        assert_eq!(off, 0);
        // 0.1 ns still divides the period (1/(0.1 ns · Δf) = 32000).
        let fine = DelayGrid::from_points(0.0, 0.1e-9, 64).unwrap();
        assert_eq!(fine.dft_layout(grid.delta_f()), Some((32000, 0)));
        // An incommensurate step has no layout.
        let odd = DelayGrid::from_points(0.0, 0.3e-9, 64).unwrap();
        assert!(odd.dft_layout(grid.delta_f()).is_none());
    }

    #[test]
    fn profile_of_zero_response_is_zero() {
        let grid = table_grid();
        let delays = DelayGrid::oversampled(&grid, 2).unwrap();
        let p = delay_profile(&grid, &vec![Complex64::ZERO; 1024], &delays).unwrap();
        assert!(p.values().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn profile_length_contract() {
        let grid = table_grid();
        let delays = DelayGrid::oversampled(&grid, 2).unwrap();
        assert!(delay_profile(&grid, &vec![Complex64::ZERO; 100], &delays).is_err());
    }

    #[test]
    fn full_band_peak_is_unity_on_grid() {
        let grid = table_grid();
        let sel = SubcarrierSelection::full_band(grid);
        let tau0 = 32.0 * 3.125e-9; // 100 ns, a whole number of resolution cells
        let h = synth_cfr(&sel, &[Target::new(tau0, Complex64::new(1.0, 0.0))]).unwrap();
        let delays = DelayGrid::oversampled(&grid, 16).unwrap();
        let p = delay_profile(&grid, &h, &delays).unwrap();
        let at_peak = p.values()[delays.nearest_index(tau0)];
        assert!((at_peak.norm() - 1.0).abs() < 1e-12, "peak {}", at_peak.norm());
        // First resolution null sits 3.125 ns away from the peak.
        let at_null = p.values()[delays.nearest_index(tau0 + 3.125e-9)];
        assert!(at_null.norm() < 1e-12, "null magnitude {}", at_null.norm());
    }

    #[test]
    fn fft_and_direct_paths_agree() {
        let grid = FrequencyGrid::new(64, 1.0e6, 0.0).unwrap();
        let mut h = vec![Complex64::ZERO; 64];
        for (k, v) in h.iter_mut().enumerate() {
            *v = Complex64::new((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos());
        }
        let delays = DelayGrid::oversampled(&grid, 8).unwrap();
        assert!(delays.dft_layout(grid.delta_f()).is_some());
        let fast = delay_profile(&grid, &h, &delays).unwrap();
        let direct = eval_profile_direct(&grid, &h, &delays);
        for (a, b) in fast.values().iter().zip(&direct) {
            assert!((a - b).norm() < 1e-12, "fft/direct mismatch {}", (a - b).norm());
        }
    }

    #[test]
    fn fft_path_tiles_periodically() {
        // A window longer than one delay period must repeat exactly.
        let grid = FrequencyGrid::new(32, 1.0e6, 0.0).unwrap();
        let sel = SubcarrierSelection::full_band(grid);
        let period = grid.unambiguous_range();
        let step = period / 128.0;
        let delays = DelayGrid::from_points(0.0, step, 200).unwrap();
        let p = psf(&sel, &delays).unwrap();
        for i in 128..200 {
            let (a, b) = (p.values()[i], p.values()[i - 128]);
            assert_eq!(a, b, "periodic tiling must be exact at {i}");
        }
    }

    #[test]
    fn table_psf_peak_is_quarter() {
        let band = DualBandConfig::new(table_grid(), 128, 896, 0).unwrap();
        let sel = SubcarrierSelection::dual_band(&band);
        let delays = DelayGrid::oversampled(&table_grid(), 4).unwrap();
        let p = psf(&sel, &delays).unwrap();
        // M/K = 256/1024 with every term exactly 1 at τ = 0.
        assert_eq!(p.values()[0], Complex64::new(0.25, 0.0));
    }

    #[test]
    fn adjacent_dual_band_equals_contiguous_selection() {
        let grid = table_grid();
        let band = DualBandConfig::new(grid, 128, 128, 0).unwrap();
        let dual = SubcarrierSelection::dual_band(&band);
        let contig = SubcarrierSelection::contiguous(grid, 0, 256).unwrap();
        assert_eq!(dual, contig);
        let delays = DelayGrid::oversampled(&grid, 4).unwrap();
        assert_eq!(psf(&dual, &delays).unwrap(), psf(&contig, &delays).unwrap());
    }

    #[test]
    fn closed_form_matches_direct_psf() {
        let grid = table_grid();
        for gap in [128usize, 384, 896] {
            let band = DualBandConfig::new(grid, 128, gap, 0).unwrap();
            let sel = SubcarrierSelection::dual_band(&band);
            // Irregular step so psf() takes the direct path here.
            let delays = DelayGrid::from_points(0.0, 0.7e-9, 500).unwrap();
            let a = psf(&sel, &delays).unwrap();
            let b = psf_dualband_closed_form(&band, &delays);
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!((x - y).norm() < 1e-12, "gap={gap} err={}", (x - y).norm());
            }
        }
    }

    #[test]
    fn closed_form_with_start_offset() {
        let grid = table_grid();
        let band = DualBandConfig::new(grid, 64, 500, 37).unwrap();
        let sel = SubcarrierSelection::dual_band(&band);
        let delays = DelayGrid::from_points(-0.3e-6, 1.3e-9, 700).unwrap();
        let a = psf(&sel, &delays).unwrap();
        let b = psf_dualband_closed_form(&band, &delays);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn cosine_null_sits_at_half_gap_period() {
        let band = DualBandConfig::new(table_grid(), 128, 896, 0).unwrap();
        // τ = 1/(2 · 280 MHz): the gap factor 1 + e^{iπ} cancels outright.
        let tau_null = 1.0 / (2.0 * band.f_gap());
        let delays = DelayGrid::from_points(tau_null, 1e-12, 1).unwrap();
        let p = psf_dualband_closed_form(&band, &delays);
        assert!(p.values()[0].norm() < 1e-15, "cosine null magnitude {}", p.values()[0].norm());
    }

    #[test]
    fn metrics_adjacent_band_first_null() {
        // Adjacent blocks = 256 contiguous carriers = 80 MHz: null at 12.5 ns.
        let grid = table_grid();
        let band = DualBandConfig::new(grid, 128, 128, 0).unwrap();
        let sel = SubcarrierSelection::dual_band(&band);
        let delays = DelayGrid::oversampled(&grid, 16).unwrap();
        let m = psf_metrics(&psf(&sel, &delays).unwrap()).unwrap();
        assert!((m.mainlobe_first_null - 12.5e-9).abs() < 1e-15, "null {}", m.mainlobe_first_null);
        assert!(m.peak_sidelobe_level_db <= 0.0);
    }

    #[test]
    fn metrics_wide_gap_cosine_null() {
        let grid = table_grid();
        let band = DualBandConfig::new(grid, 128, 896, 0).unwrap();
        let sel = SubcarrierSelection::dual_band(&band);
        let delays = DelayGrid::oversampled(&grid, 16).unwrap();
        let m = psf_metrics(&psf(&sel, &delays).unwrap()).unwrap();
        let expect = 1.0 / (2.0 * band.f_gap()); // ≈ 1.786 ns
        assert!(
            (m.mainlobe_first_null - expect).abs() <= delays.step(),
            "null {} vs {expect}",
            m.mainlobe_first_null
        );
    }

    #[test]
    fn metrics_full_band_sidelobe_level() {
        // Rectangular-window first sidelobe: about −13.26 dB.
        let grid = table_grid();
        let sel = SubcarrierSelection::full_band(grid);
        let delays = DelayGrid::from_points(0.0, 3.125e-9 / 16.0, 16 * 64).unwrap();
        let m = psf_metrics(&psf(&sel, &delays).unwrap()).unwrap();
        assert!((m.mainlobe_first_null - 3.125e-9).abs() < 1e-15);
        assert!(
            (m.peak_sidelobe_level_db + 13.26).abs() < 0.1,
            "psl {} dB",
            m.peak_sidelobe_level_db
        );
        assert!(m.highest_sidelobe_delay > m.mainlobe_first_null);
    }

    #[test]
    fn metrics_need_the_mainlobe_and_a_null() {
        let grid = table_grid();
        let sel = SubcarrierSelection::full_band(grid);
        // Window starts after zero: no peak available.
        let shifted = DelayGrid::from_points(1e-9, 0.1953125e-9, 64).unwrap();
        assert!(matches!(
            psf_metrics(&psf(&sel, &shifted).unwrap()),
            Err(Error::Diagnostic(_))
        ));
        // Window so short the magnitude only falls: no null resolved.
        let stub = DelayGrid::from_points(0.0, 1e-9, 3).unwrap();
        assert!(matches!(psf_metrics(&psf(&sel, &stub).unwrap()), Err(Error::Diagnostic(_))));
    }

    #[test]
    fn reconstruction_matches_synthesis_exactly() {
        let grid = table_grid();
        let targets = [
            Target::new(66e-9, Complex64::new(0.4, -0.1)),
            Target::new(133e-9, Complex64::new(-0.2, 0.9)),
        ];
        let direct = synth_cfr(&SubcarrierSelection::full_band(grid), &targets).unwrap();
        let recon = reconstruct_full_band(&grid, &targets).unwrap();
        assert_eq!(direct, recon);
        assert!(reconstruct_full_band(&grid, &[Target::new(-1.0, Complex64::ZERO)]).is_err());
    }

    proptest! {
        /// |p(τ)| = |p(-τ)| on a symmetric window.
        #[test]
        fn psf_magnitude_is_symmetric(
            n in 2usize..32,
            gap_extra in 0usize..96,
            start in 0usize..16,
        ) {
            let grid = FrequencyGrid::new(256, 1.0e6, 0.0).unwrap();
            let gap = n + gap_extra;
            prop_assume!(start + gap + n <= 256);
            let band = DualBandConfig::new(grid, n, gap, start).unwrap();
            let sel = SubcarrierSelection::dual_band(&band);
            let half = 150;
            let delays = DelayGrid::from_points(-(half as f64) * 2.3e-9, 2.3e-9, 2 * half + 1).unwrap();
            let p = psf(&sel, &delays).unwrap();
            for i in 0..=half {
                let a = p.values()[half - i].norm();
                let b = p.values()[half + i].norm();
                prop_assert!((a - b).abs() < 1e-12, "i={} a={} b={}", i, a, b);
            }
        }

        /// Product form ≡ direct sum for random layouts.
        #[test]
        fn closed_form_matches_everywhere(
            n in 1usize..24,
            gap_extra in 0usize..64,
            start in 0usize..24,
            step_ps in 37u32..2500,
        ) {
            let grid = FrequencyGrid::new(128, 1.5e6, 0.0).unwrap();
            let gap = n + gap_extra;
            prop_assume!(start + gap + n <= 128);
            let band = DualBandConfig::new(grid, n, gap, start).unwrap();
            let sel = SubcarrierSelection::dual_band(&band);
            let delays = DelayGrid::from_points(0.0, step_ps as f64 * 1e-12, 300).unwrap();
            let a = psf(&sel, &delays).unwrap();
            let b = psf_dualband_closed_form(&band, &delays);
            for (x, y) in a.values().iter().zip(b.values()) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }

        /// Widening the gap never widens the mainlobe: the first null is
        /// non-increasing in the gap for a fixed block size.
        #[test]
        fn first_null_shrinks_with_gap(n_exp in 3u32..7) {
            let n = 1usize << n_exp; // 8..64
            let grid = FrequencyGrid::new(8 * n, 312.5e3, 0.0).unwrap();
            let delays = DelayGrid::oversampled(&grid, 16).unwrap();
            let mut last = f64::INFINITY;
            for mult in [1usize, 2, 4, 7] {
                let band = DualBandConfig::new(grid, n, mult * n, 0).unwrap();
                let sel = SubcarrierSelection::dual_band(&band);
                let m = psf_metrics(&psf(&sel, &delays).unwrap()).unwrap();
                prop_assert!(
                    m.mainlobe_first_null <= last * (1.0 + 1e-12),
                    "null grew: {} -> {} at gap {}x",
                    last,
                    m.mainlobe_first_null,
                    mult
                );
                last = m.mainlobe_first_null;
            }
        }
    }
}
