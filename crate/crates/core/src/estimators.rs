//! Delay estimators over a discretized search grid.
//!
//! All estimators share one primitive: correlation of a measurement (or
//! residual) against the steering dictionary `a_τ = [exp(-i 2π k Δf τ)]` for
//! every active subcarrier `k` and every grid delay `τ`. [`SteeringOperator`]
//! owns the selection, the search grid, and (when the grid step divides the
//! delay period) an inverse-FFT plan that evaluates all correlations at once.
//!
//! - [`mle_single`]: one matched-filter pass — exact ML for a single path.
//! - [`relax`]: greedy acquisition plus cyclic per-component re-estimation
//!   against per-component residuals, which strips the sidelobe leakage the
//!   split-band layout induces.
//! - [`omp`]: greedy acquisition with a joint least-squares amplitude re-fit
//!   of all picked atoms each iteration; the usual baseline.
//!
//! Everything is deterministic: grid scans break ties toward the smallest
//! delay, so identical inputs give identical estimates.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::channel::{MeasurementVector, Target};
use crate::error::{Error, Result};
use crate::freqgrid::SubcarrierSelection;
use crate::phasor::{cycles, unit_phasor};
use crate::profile::DelayGrid;

/// One estimated path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub tau: f64,
    pub alpha: Complex64,
}

/// Estimator output: components in extraction order plus run diagnostics.
///
/// `residual_energy` is `‖y - Σ α a_τ‖²` recomputed from the final
/// components (not an accumulator), `cycles_used` counts refinement cycles
/// across the whole run (0 for estimators without refinement), and
/// `converged` is false only when some refinement stage ran out of its cycle
/// budget before the residual settled.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSet {
    pub components: Vec<Component>,
    pub residual_energy: f64,
    pub cycles_used: usize,
    pub converged: bool,
}

impl EstimateSet {
    /// Components as channel targets, e.g. for full-band reconstruction.
    pub fn targets(&self) -> Vec<Target> {
        self.components.iter().map(|c| Target::new(c.tau, c.alpha)).collect()
    }
}

/// Settings for [`relax`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxConfig {
    /// Maximum number of components to extract.
    pub l_max: usize,
    /// Absolute residual-energy target; extraction stops early once
    /// `‖r‖² ≤ epsilon`. Zero means "run to l_max".
    pub epsilon: f64,
    /// Cycle budget per refinement stage.
    pub max_refinement_cycles: usize,
    /// A refinement stage stops once one full cycle lowers the residual
    /// energy by less than this fraction of `‖y‖²`.
    pub cycle_tolerance: f64,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        Self { l_max: 1, epsilon: 0.0, max_refinement_cycles: 20, cycle_tolerance: 1e-8 }
    }
}

impl RelaxConfig {
    fn validate(&self) -> Result<()> {
        if self.l_max == 0 {
            return Err(Error::Config("relax needs l_max >= 1".into()));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::Config(format!("relax epsilon must be >= 0, got {}", self.epsilon)));
        }
        if self.max_refinement_cycles == 0 {
            return Err(Error::Config("relax needs at least one refinement cycle".into()));
        }
        if !(self.cycle_tolerance.is_finite() && self.cycle_tolerance >= 0.0) {
            return Err(Error::Config(format!(
                "relax cycle tolerance must be >= 0, got {}",
                self.cycle_tolerance
            )));
        }
        Ok(())
    }
}

/// Steering dictionary over a selection and a delay search grid.
pub struct SteeringOperator {
    sel: SubcarrierSelection,
    grid: DelayGrid,
    fft: Option<(Arc<dyn Fft<f64>>, usize, i64)>,
}

impl SteeringOperator {
    /// # Errors
    ///
    /// The search grid must lie inside `[0, 1/Δf)` — delays outside one
    /// period are not identifiable and would alias.
    pub fn new(sel: SubcarrierSelection, grid: DelayGrid) -> Result<Self> {
        let range = sel.grid().unambiguous_range();
        if grid.tau_min() < 0.0 || grid.tau_max() >= range {
            return Err(Error::Config(format!(
                "search grid [{}, {}] must lie inside [0, {range})",
                grid.tau_min(),
                grid.tau_max()
            )));
        }
        let fft = grid.dft_layout(sel.grid().delta_f()).map(|(len, offset)| {
            (FftPlanner::new().plan_fft_inverse(len), len, offset)
        });
        Ok(Self { sel, grid, fft })
    }

    pub fn selection(&self) -> &SubcarrierSelection {
        &self.sel
    }

    pub fn search_grid(&self) -> &DelayGrid {
        &self.grid
    }

    /// Number of active subcarriers; also the exact squared norm of every
    /// steering vector.
    pub fn m(&self) -> usize {
        self.sel.m()
    }

    /// `a_τ = [exp(-i 2π k Δf τ)]` over the active subcarriers, ascending.
    pub fn steering_vector(&self, tau: f64) -> Vec<Complex64> {
        let delta_f = self.sel.grid().delta_f();
        self.sel.active().iter().map(|&k| unit_phasor(-cycles(k, delta_f, tau))).collect()
    }

    /// All grid correlations `c(τ_i) = a_{τ_i}ᴴ r`.
    ///
    /// # Errors
    ///
    /// `r` must have one sample per active subcarrier.
    pub fn correlate(&self, r: &[Complex64]) -> Result<Vec<Complex64>> {
        if r.len() != self.sel.m() {
            return Err(Error::Contract(format!(
                "residual has {} samples, selection has {}",
                r.len(),
                self.sel.m()
            )));
        }
        match &self.fft {
            Some((plan, len, offset)) => {
                let mut buf = vec![Complex64::ZERO; *len];
                for (i, &k) in self.sel.active().iter().enumerate() {
                    buf[k % len] += r[i];
                }
                plan.process(&mut buf);
                Ok((0..self.grid.points())
                    .map(|i| buf[(offset + i as i64).rem_euclid(*len as i64) as usize])
                    .collect())
            }
            None => {
                let delta_f = self.sel.grid().delta_f();
                Ok(self
                    .grid
                    .taus()
                    .map(|tau| {
                        let mut acc = Complex64::ZERO;
                        for (i, &k) in self.sel.active().iter().enumerate() {
                            acc += r[i] * unit_phasor(cycles(k, delta_f, tau));
                        }
                        acc
                    })
                    .collect())
            }
        }
    }

    /// Strongest single component of `r`: grid delay maximizing `|c(τ)|`
    /// (ties break toward the smallest delay) with the least-squares
    /// amplitude `c(τ̂) / M`, using the exact dictionary norm `M`.
    pub fn acquire(&self, r: &[Complex64]) -> Result<(f64, Complex64)> {
        let c = self.correlate(r)?;
        let best = argmax_excluding(&c, &[]);
        Ok((self.grid.tau(best), c[best] / self.sel.m() as f64))
    }
}

/// Index of the largest |c|², scanning ascending and keeping the first on
/// ties, skipping any index in `exclude`.
fn argmax_excluding(c: &[Complex64], exclude: &[usize]) -> usize {
    let mut best = usize::MAX;
    let mut best_power = f64::NEG_INFINITY;
    for (i, v) in c.iter().enumerate() {
        if exclude.contains(&i) {
            continue;
        }
        let p = v.norm_sqr();
        if p > best_power {
            best_power = p;
            best = i;
        }
    }
    best
}

fn energy(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

/// `y - Σ_{l ≠ skip} α_l a_{τ_l}`, built fresh from the component list.
fn residual_without(
    y: &[Complex64],
    comps: &[Component],
    skip: Option<usize>,
    op: &SteeringOperator,
) -> Vec<Complex64> {
    let mut r = y.to_vec();
    for (l, c) in comps.iter().enumerate() {
        if Some(l) == skip {
            continue;
        }
        let a = op.steering_vector(c.tau);
        for (ri, ai) in r.iter_mut().zip(&a) {
            *ri -= c.alpha * ai;
        }
    }
    r
}

fn check_measurement(y: &MeasurementVector, op: &SteeringOperator) -> Result<()> {
    if y.selection() != op.selection() {
        return Err(Error::Contract(
            "measurement and steering operator use different selections".into(),
        ));
    }
    Ok(())
}

/// Greedy extraction with cyclic re-estimation.
///
/// Each stage acquires one new component from the current residual, then
/// re-estimates every component in turn against the residual with that
/// component alone removed, until one full cycle no longer lowers the
/// residual energy. Extraction stops when `‖r‖² ≤ epsilon` or `l_max`
/// components are out. Every single-component update is the exact
/// least-squares minimizer on the grid, so the global residual energy never
/// increases between updates (see [`relax_traced`] for the instrumented
/// trace).
pub fn relax(
    y: &MeasurementVector,
    cfg: &RelaxConfig,
    op: &SteeringOperator,
) -> Result<EstimateSet> {
    relax_traced(y, cfg, op).map(|(est, _)| est)
}

/// [`relax`] plus the global residual energy after every single-component
/// update (acquisitions included), for monotonicity checks.
pub fn relax_traced(
    y: &MeasurementVector,
    cfg: &RelaxConfig,
    op: &SteeringOperator,
) -> Result<(EstimateSet, Vec<f64>)> {
    cfg.validate()?;
    check_measurement(y, op)?;
    let y = y.samples();
    let energy_y = energy(y);
    let mut comps: Vec<Component> = Vec::new();
    let mut trace: Vec<f64> = Vec::new();
    let mut cycles_used = 0usize;
    let mut converged = true;

    let residual_energy = loop {
        // Acquisition of the next component from the global residual.
        let r = residual_without(y, &comps, None, op);
        let (tau, alpha) = op.acquire(&r)?;
        comps.push(Component { tau, alpha });
        let mut e_now = energy(&residual_without(y, &comps, None, op));
        trace.push(e_now);

        // Cyclic re-estimation of all components extracted so far.
        let mut stage_converged = false;
        for _ in 0..cfg.max_refinement_cycles {
            cycles_used += 1;
            let e_before = e_now;
            for l in 0..comps.len() {
                let r_l = residual_without(y, &comps, Some(l), op);
                let (tau, alpha) = op.acquire(&r_l)?;
                comps[l] = Component { tau, alpha };
                e_now = energy(&residual_without(y, &comps, None, op));
                trace.push(e_now);
            }
            if e_before - e_now <= cfg.cycle_tolerance * energy_y {
                stage_converged = true;
                break;
            }
        }
        converged &= stage_converged;

        let e_final = energy(&residual_without(y, &comps, None, op));
        if e_final <= cfg.epsilon || comps.len() >= cfg.l_max {
            break e_final;
        }
    };

    Ok((EstimateSet { components: comps, residual_energy, cycles_used, converged }, trace))
}

/// Orthogonal matching pursuit: greedy atom picks (each grid delay at most
/// once) with a joint least-squares re-fit of all picked amplitudes per
/// iteration. Components come out in pick order.
pub fn omp(y: &MeasurementVector, l_stop: usize, op: &SteeringOperator) -> Result<EstimateSet> {
    check_measurement(y, op)?;
    let max_atoms = op.m().min(op.search_grid().points());
    if l_stop == 0 || l_stop > max_atoms {
        return Err(Error::Config(format!("omp needs 1 <= l_stop <= {max_atoms}, got {l_stop}")));
    }
    let y = y.samples();
    let mut picked: Vec<usize> = Vec::new();
    let mut atoms: Vec<Vec<Complex64>> = Vec::new();
    let mut amps: Vec<Complex64> = Vec::new();
    let mut r = y.to_vec();

    for _ in 0..l_stop {
        let c = op.correlate(&r)?;
        let t = argmax_excluding(&c, &picked);
        picked.push(t);
        atoms.push(op.steering_vector(op.search_grid().tau(t)));

        // Joint LS over all picked atoms: solve (AᴴA) x = Aᴴy.
        let n = atoms.len();
        let mut gram = vec![vec![Complex64::ZERO; n]; n];
        let mut rhs = vec![Complex64::ZERO; n];
        for i in 0..n {
            // The dictionary atoms have unit-modulus entries, so the Gram
            // diagonal is exactly M.
            gram[i][i] = Complex64::new(op.m() as f64, 0.0);
            for j in 0..i {
                let g = dot(&atoms[i], &atoms[j]);
                gram[i][j] = g;
                gram[j][i] = g.conj();
            }
            rhs[i] = dot(&atoms[i], y);
        }
        amps = solve_hermitian(gram, rhs)?;

        r = y.to_vec();
        for (a, &x) in atoms.iter().zip(&amps) {
            for (ri, ai) in r.iter_mut().zip(a) {
                *ri -= x * ai;
            }
        }
    }

    let components = picked
        .iter()
        .zip(&amps)
        .map(|(&t, &alpha)| Component { tau: op.search_grid().tau(t), alpha })
        .collect();
    Ok(EstimateSet { components, residual_energy: energy(&r), cycles_used: 0, converged: true })
}

/// Exact single-path maximum-likelihood estimate: one matched-filter pass
/// over the grid. Identical to `relax` with `l_max = 1` and to `omp` with
/// `l_stop = 1`.
pub fn mle_single(y: &MeasurementVector, op: &SteeringOperator) -> Result<(f64, Complex64)> {
    check_measurement(y, op)?;
    op.acquire(y.samples())
}

/// `aᴴ b` with the conjugate on `a`.
fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Solve `G x = b` for Hermitian positive-definite `G` via Cholesky.
fn solve_hermitian(g: Vec<Vec<Complex64>>, b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = b.len();
    let mut l = g;
    for j in 0..n {
        let mut d = l[j][j].re;
        for p in 0..j {
            d -= l[j][p].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::Degenerate(
                "atom set is numerically dependent; cannot re-fit amplitudes".into(),
            ));
        }
        let dj = d.sqrt();
        l[j][j] = Complex64::new(dj, 0.0);
        for i in j + 1..n {
            let mut s = l[i][j];
            for p in 0..j {
                s -= l[i][p] * l[j][p].conj();
            }
            l[i][j] = s / dj;
        }
    }
    let mut x = b;
    for i in 0..n {
        for p in 0..i {
            let t = l[i][p] * x[p];
            x[i] -= t;
        }
        x[i] /= l[i][i].re;
    }
    for i in (0..n).rev() {
        for p in i + 1..n {
            let t = l[p][i].conj() * x[p];
            x[i] -= t;
        }
        x[i] /= l[i][i].re;
    }
    Ok(x)
}
