//! CSV rendering: comma-separated, header row, LF endings, `.` decimal
//! separator, every floating value printed with 9 significant digits.

use std::fmt::Write as _;

use dualband_delay::estimators::EstimateSet;
use dualband_delay::freqgrid::SubcarrierSelection;
use dualband_delay::profile::{DelayProfile, PsfMetrics};

/// Format with 9 significant digits: fixed notation where it stays compact,
/// scientific otherwise, trailing zeros kept so columns align.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

/// Subcarrier selection function over the whole grid: `k,w`.
pub fn scf_csv(sel: &SubcarrierSelection) -> String {
    let mut s = String::from("k,w\n");
    for k in 0..sel.grid().k() {
        let _ = writeln!(s, "{k},{}", u8::from(sel.is_active(k)));
    }
    s
}

/// Complex delay profile: `tau_ns,re,im,mag,mag_db_rel_peak`, with the dB
/// column relative to the profile's own magnitude peak.
pub fn profile_csv(profile: &DelayProfile) -> String {
    let peak = profile.values().iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let mut s = String::from("tau_ns,re,im,mag,mag_db_rel_peak\n");
    for (tau, v) in profile.grid().taus().zip(profile.values()) {
        let mag = v.norm();
        let db = if mag > 0.0 && peak > 0.0 { 20.0 * (mag / peak).log10() } else { f64::NEG_INFINITY };
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt_sig(tau * 1e9),
            fmt_sig(v.re),
            fmt_sig(v.im),
            fmt_sig(mag),
            fmt_sig(db)
        );
    }
    s
}

/// One-row PSF metrics summary.
pub fn metrics_csv(m: &PsfMetrics) -> String {
    format!(
        "first_null_ns,psl_db,psl_tau_ns\n{},{},{}\n",
        fmt_sig(m.mainlobe_first_null * 1e9),
        fmt_sig(m.peak_sidelobe_level_db),
        fmt_sig(m.highest_sidelobe_delay * 1e9)
    )
}

/// Estimator output, one row per extracted component; the run-level
/// diagnostics repeat on every row.
pub fn estimate_csv(est: &EstimateSet) -> String {
    let mut s = String::from(
        "component_index,tau_ns,alpha_re,alpha_im,residual_energy,cycles,converged\n",
    );
    for (i, c) in est.components.iter().enumerate() {
        let _ = writeln!(
            s,
            "{i},{},{},{},{},{},{}",
            fmt_sig(c.tau * 1e9),
            fmt_sig(c.alpha.re),
            fmt_sig(c.alpha.im),
            fmt_sig(est.residual_energy),
            est.cycles_used,
            est.converged
        );
    }
    s
}

/// One SNR-sweep CSV row; `crb_std_ns` stays empty when not applicable.
pub struct SnrRow {
    pub snr_db: f64,
    pub method: String,
    pub rmse_ns: f64,
    pub crb_std_ns: Option<f64>,
    pub trials: usize,
}

pub fn sweep_snr_csv(rows: &[SnrRow]) -> String {
    let mut s = String::from("snr_db,method,rmse_ns,crb_std_ns,trials\n");
    for r in rows {
        let crb = r.crb_std_ns.map(fmt_sig).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{crb},{}",
            fmt_sig(r.snr_db),
            r.method,
            fmt_sig(r.rmse_ns),
            r.trials
        );
    }
    s
}

/// One gap-sweep CSV row.
pub struct GapRow {
    pub gap_mhz: f64,
    pub snr_db: f64,
    pub method: String,
    pub rmse_ns: f64,
    pub trials: usize,
}

pub fn sweep_gap_csv(rows: &[GapRow]) -> String {
    let mut s = String::from("gap_mhz,snr_db,method,rmse_ns,trials\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt_sig(r.gap_mhz),
            fmt_sig(r.snr_db),
            r.method,
            fmt_sig(r.rmse_ns),
            r.trials
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use dualband_delay::freqgrid::{DualBandConfig, FrequencyGrid};

    #[test]
    fn fmt_sig_keeps_nine_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1.00000000");
        assert_eq!(fmt_sig(-2.5), "-2.50000000");
        assert_eq!(fmt_sig(30.4571393), "30.4571393");
        assert_eq!(fmt_sig(0.163299316), "0.163299316");
        assert_eq!(fmt_sig(123456789.0), "123456789");
        assert_eq!(fmt_sig(1234567890.0), "1.23456789e9");
        assert_eq!(fmt_sig(9.276372959e-22), "9.27637296e-22");
        assert_eq!(fmt_sig(1e-4), "0.000100000000");
        assert_eq!(fmt_sig(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn fmt_sig_rounds_rather_than_truncates() {
        assert_eq!(fmt_sig(1.234567896), "1.23456790");
        assert_eq!(fmt_sig(0.999999999499), "0.999999999");
    }

    #[test]
    fn scf_marks_exactly_the_active_subcarriers() {
        let grid = FrequencyGrid::new(16, 1e6, 0.0).unwrap();
        let band = DualBandConfig::new(grid, 2, 8, 1).unwrap();
        let sel = SubcarrierSelection::dual_band(&band);
        let csv = scf_csv(&sel);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "k,w");
        assert_eq!(lines.len(), 17);
        let ones: Vec<usize> = lines[1..]
            .iter()
            .enumerate()
            .filter(|(_, l)| l.ends_with(",1"))
            .map(|(k, _)| k)
            .collect();
        assert_eq!(ones, vec![1, 2, 9, 10]);
    }

    #[test]
    fn sweep_rows_leave_missing_crb_empty() {
        let rows = [
            SnrRow { snr_db: 10.0, method: "mle".into(), rmse_ns: 0.5, crb_std_ns: Some(0.25), trials: 100 },
            SnrRow { snr_db: 20.0, method: "relax".into(), rmse_ns: 0.125, crb_std_ns: None, trials: 100 },
        ];
        let csv = sweep_snr_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "snr_db,method,rmse_ns,crb_std_ns,trials");
        assert_eq!(lines[1], "10.0000000,mle,0.500000000,0.250000000,100");
        assert_eq!(lines[2], "20.0000000,relax,0.125000000,,100");
    }

    #[test]
    fn csv_uses_lf_endings_only() {
        let rows = [GapRow {
            gap_mhz: 280.0,
            snr_db: 15.0,
            method: "relax".into(),
            rmse_ns: 1.5,
            trials: 10,
        }];
        let csv = sweep_gap_csv(&rows);
        assert!(!csv.contains('\r'));
        assert!(csv.ends_with('\n'));
        assert_eq!(csv.lines().nth(1).unwrap(), "280.000000,15.0000000,relax,1.50000000,10");
    }
}
