//! Shared phase evaluation helpers.
//!
//! Every transform in this crate reduces to sums of `exp(±i 2π k Δf τ)` terms.
//! The product `k·Δf·τ` reaches a few thousand cycles for the largest grids,
//! where naive `sin`/`cos` evaluation wastes precision on the (irrelevant)
//! integer part of the turn count. [`unit_phasor`] strips whole turns before
//! touching trig, and every call site builds its argument through [`cycles`]
//! so that synthesis and steering agree bit-for-bit on shared delays.

use num_complex::Complex64;

/// Turn count `k · (Δf · τ)` for subcarrier index `k`.
///
/// The inner product is grouped as `k * (delta_f * tau)` everywhere, so two
/// call sites given identical `(k, delta_f, tau)` produce identical floats.
#[inline]
pub(crate) fn cycles(k: usize, delta_f: f64, tau: f64) -> f64 {
    k as f64 * (delta_f * tau)
}

/// `exp(i 2π · cycles)`, with the integer part of `cycles` removed first.
#[inline]
pub(crate) fn unit_phasor(cycles: f64) -> Complex64 {
    let frac = cycles - cycles.round();
    Complex64::cis(std::f64::consts::TAU * frac)
}
