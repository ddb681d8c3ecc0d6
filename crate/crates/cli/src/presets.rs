//! Built-in experiment presets.
//!
//! Each preset is a plain config file baked into the binary, selected with
//! `--preset <name>`; `preset_text` exposes the raw text so users can dump,
//! tweak, and re-run any of them as ordinary `--config` files. All four use
//! the standard 1024-subcarrier, 312.5 kHz grid with two 128-subcarrier
//! subbands (80 MHz occupied) and the three-path test scene at
//! {66, 100, 133} ns where applicable.

/// Names accepted by `--preset`, in display order.
pub const NAMES: [&str; 4] = ["fig4", "fig5", "fig6", "fig7"];

/// Single-path accuracy versus the CRB: a maximum-likelihood grid search on
/// a fine delay grid, swept over SNR for three band gaps (40/120/280 MHz).
/// The unit fixed gain keeps the CRB reference exact.
const FIG4: &str = "\
# Single-path delay RMSE vs. SNR for band gaps 40/120/280 MHz, with CRB.
sweep = snr
snr_sweep_db = [-10, -5, 0, 5, 10, 15, 20, 25, 30, 35]
gap_sweep_subcarriers = [128, 384, 896]
targets_ns = [100]
gain_model = fixed
fixed_gains = [1]
method = mle
osf = 64
trials = 1000
seed = 4
";

/// One noisy three-path trial at 20 dB on the widest gap: estimator output
/// plus the raw split-band delay profile and the full-band reconstruction.
const FIG5: &str = "\
# Split-band delay profile vs. iterative reconstruction, one 20 dB trial.
gap_subcarriers = 896
targets_ns = [66, 100, 133]
gain_model = rayleigh
snr_db = 20
method = relax
L_max = 3
osf = 16
seed = 5
emit_profiles = true
";

/// Three-path RMSE comparison of the iterative re-estimation method against
/// orthogonal matching pursuit across the SNR range.
const FIG6: &str = "\
# Three-path delay RMSE vs. SNR: relax against omp, 280 MHz gap.
sweep = snr
snr_sweep_db = [-10, -5, 0, 5, 10, 15, 20, 25, 30, 35]
gap_subcarriers = 896
targets_ns = [66, 100, 133]
gain_model = rayleigh
methods = [relax, omp]
osf = 16
trials = 1000
seed = 6
";

/// Three-path RMSE versus band gap at low and high SNR; the first subband
/// stays put while the second shifts outward.
const FIG7: &str = "\
# Three-path delay RMSE vs. band gap at 5 and 15 dB.
sweep = gap
gap_sweep_subcarriers = [128, 256, 384, 512, 640, 768, 896]
snr_sweep_db = [5, 15]
targets_ns = [66, 100, 133]
gain_model = rayleigh
method = relax
osf = 16
trials = 1000
seed = 7
";

/// Raw config text for a preset name.
pub fn preset_text(name: &str) -> Option<&'static str> {
    match name {
        "fig4" => Some(FIG4),
        "fig5" => Some(FIG5),
        "fig6" => Some(FIG6),
        "fig7" => Some(FIG7),
        _ => None,
    }
}
