//! Flat `key = value` run configuration.
//!
//! The format is deliberately primitive: one assignment per line, `#`
//! comments, lists in brackets (`[66, 100, 133]`), no nesting. Unknown keys,
//! duplicates, type mismatches, and cross-field violations are all parse
//! errors carrying the line number. Grid keys default to the standard
//! simulation setup (K = 1024, Δf = 312.5 kHz, N = 128 per subband,
//! 5.2 GHz carrier); everything else must be explicit.
//!
//! [`RunConfig::dump`] renders a canonical config that parses back to an
//! equal value, which keeps presets, files, and round-trip tests honest.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_complex::Complex64;

use dualband_delay::evaluation::Method;

use crate::error::{CliError, Result};

/// Which axis a sweep runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Snr,
    Gap,
}

/// How per-trial gains are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainModelKind {
    Fixed,
    Rayleigh,
}

/// Fully-validated run configuration.
///
/// Delays and sweep axes are stored in the units the config and CSV use
/// (nanoseconds, dB, subcarrier counts); conversion to seconds happens at
/// the library boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub k: usize,
    pub delta_f_hz: f64,
    pub f_carrier_hz: f64,
    pub n_sub: usize,
    pub gap_subcarriers: Option<usize>,
    pub start_index: usize,
    pub targets_ns: Vec<f64>,
    pub gain_model: GainModelKind,
    pub fixed_gains: Vec<Complex64>,
    /// `None` means noiseless; `Some(f64::INFINITY)` is the parsed form of
    /// `no_noise = true` or `snr_db = inf`.
    pub snr_db: Option<f64>,
    pub snr_sweep_db: Vec<f64>,
    pub seed: u64,
    pub method: Method,
    /// Extra methods for comparison sweeps; empty means "just `method`".
    pub methods: Vec<Method>,
    /// Component count for the estimator; defaults to the target count.
    pub l_max: Option<usize>,
    pub epsilon: f64,
    pub osf: usize,
    pub max_refinement_cycles: usize,
    pub cycle_tolerance: f64,
    pub trials: usize,
    pub sweep: Option<SweepAxis>,
    pub gap_sweep_subcarriers: Vec<usize>,
    pub out: Option<String>,
    pub emit_profiles: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            k: 1024,
            delta_f_hz: 312.5e3,
            f_carrier_hz: 5.2e9,
            n_sub: 128,
            gap_subcarriers: None,
            start_index: 0,
            targets_ns: Vec::new(),
            gain_model: GainModelKind::Rayleigh,
            fixed_gains: Vec::new(),
            snr_db: None,
            snr_sweep_db: Vec::new(),
            seed: 0,
            method: Method::Relax,
            methods: Vec::new(),
            l_max: None,
            epsilon: 0.0,
            osf: 16,
            max_refinement_cycles: 20,
            cycle_tolerance: 1e-8,
            trials: 1000,
            sweep: None,
            gap_sweep_subcarriers: Vec::new(),
            out: None,
            emit_profiles: false,
        }
    }
}

impl RunConfig {
    /// The unambiguous delay range in nanoseconds.
    pub fn range_ns(&self) -> f64 {
        1e9 / self.delta_f_hz
    }

    /// Methods a sweep should run, in order.
    pub fn sweep_methods(&self) -> Vec<Method> {
        if self.methods.is_empty() {
            vec![self.method]
        } else {
            self.methods.clone()
        }
    }

    /// Component count the estimator targets.
    pub fn component_count(&self) -> usize {
        self.l_max.unwrap_or(self.targets_ns.len())
    }

    /// Canonical config text; [`parse_config`] of the output equals `self`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "K = {}", self.k);
        let _ = writeln!(s, "delta_f_hz = {:?}", self.delta_f_hz);
        let _ = writeln!(s, "f_carrier_hz = {:?}", self.f_carrier_hz);
        let _ = writeln!(s, "N_sub = {}", self.n_sub);
        if let Some(g) = self.gap_subcarriers {
            let _ = writeln!(s, "gap_subcarriers = {g}");
        }
        let _ = writeln!(s, "start_index = {}", self.start_index);
        if !self.targets_ns.is_empty() {
            let _ = writeln!(s, "targets_ns = {}", fmt_f64_list(&self.targets_ns));
        }
        let model = match self.gain_model {
            GainModelKind::Fixed => "fixed",
            GainModelKind::Rayleigh => "rayleigh",
        };
        let _ = writeln!(s, "gain_model = {model}");
        if !self.fixed_gains.is_empty() {
            let gains: Vec<String> = self.fixed_gains.iter().map(|g| fmt_complex(*g)).collect();
            let _ = writeln!(s, "fixed_gains = [{}]", gains.join(", "));
        }
        if let Some(snr) = self.snr_db {
            let _ = writeln!(s, "snr_db = {:?}", snr);
        }
        if !self.snr_sweep_db.is_empty() {
            let _ = writeln!(s, "snr_sweep_db = {}", fmt_f64_list(&self.snr_sweep_db));
        }
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "method = {}", self.method);
        if !self.methods.is_empty() {
            let names: Vec<&str> = self.methods.iter().map(|m| m.name()).collect();
            let _ = writeln!(s, "methods = [{}]", names.join(", "));
        }
        if let Some(l) = self.l_max {
            let _ = writeln!(s, "L_max = {l}");
        }
        let _ = writeln!(s, "epsilon = {:?}", self.epsilon);
        let _ = writeln!(s, "osf = {}", self.osf);
        let _ = writeln!(s, "max_refinement_cycles = {}", self.max_refinement_cycles);
        let _ = writeln!(s, "cycle_tolerance = {:?}", self.cycle_tolerance);
        let _ = writeln!(s, "trials = {}", self.trials);
        if let Some(axis) = self.sweep {
            let _ = writeln!(s, "sweep = {}", if axis == SweepAxis::Snr { "snr" } else { "gap" });
        }
        if !self.gap_sweep_subcarriers.is_empty() {
            let gaps: Vec<String> =
                self.gap_sweep_subcarriers.iter().map(|g| g.to_string()).collect();
            let _ = writeln!(s, "gap_sweep_subcarriers = [{}]", gaps.join(", "));
        }
        if let Some(out) = &self.out {
            let _ = writeln!(s, "out = {out}");
        }
        if self.emit_profiles {
            let _ = writeln!(s, "emit_profiles = true");
        }
        s
    }
}

fn fmt_f64_list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| format!("{v:?}")).collect();
    format!("[{}]", items.join(", "))
}

/// `re±imj` with shortest-round-trip floats, e.g. `1.0+0.0j`, `0.5-0.3j`.
pub fn fmt_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{:?}-{:?}j", z.re, -z.im)
    } else {
        format!("{:?}+{:?}j", z.re, z.im)
    }
}

fn err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("line {line}: {msg}"))
}

fn parse_f64(line: usize, key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>().map_err(|_| err(line, format!("{key} expects a number, got '{v}'")))
}

fn parse_usize(line: usize, key: &str, v: &str) -> Result<usize> {
    v.parse::<usize>()
        .map_err(|_| err(line, format!("{key} expects a non-negative integer, got '{v}'")))
}

fn parse_u64(line: usize, key: &str, v: &str) -> Result<u64> {
    v.parse::<u64>()
        .map_err(|_| err(line, format!("{key} expects a non-negative integer, got '{v}'")))
}

fn parse_bool(line: usize, key: &str, v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(err(line, format!("{key} expects true or false, got '{v}'"))),
    }
}

/// Split a `[a, b, c]` list into raw items; `[]` is the empty list.
fn list_items<'a>(line: usize, key: &str, v: &'a str) -> Result<Vec<&'a str>> {
    let inner = v
        .strip_prefix('[')
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| err(line, format!("{key} expects a [a, b, c] list, got '{v}'")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(str::trim).collect())
}

fn parse_f64_list(line: usize, key: &str, v: &str) -> Result<Vec<f64>> {
    list_items(line, key, v)?.into_iter().map(|item| parse_f64(line, key, item)).collect()
}

fn parse_usize_list(line: usize, key: &str, v: &str) -> Result<Vec<usize>> {
    list_items(line, key, v)?.into_iter().map(|item| parse_usize(line, key, item)).collect()
}

/// Complex literal: `1`, `-0.5`, `0.3j`, `1+2j`, `1.5-2e-3j`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let t = s.trim();
    let Some(body) = t.strip_suffix('j') else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("'{t}' is not a real or complex number"));
    };
    let bytes = body.as_bytes();
    // Last +/- that is not a leading sign and not an exponent sign splits
    // the real part from the imaginary part.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_str, im_str) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let re = re_str
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("bad real part in complex number '{t}'"))?;
    let im = im_str
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("bad imaginary part in complex number '{t}'"))?;
    Ok(Complex64::new(re, im))
}

fn parse_complex_list(line: usize, key: &str, v: &str) -> Result<Vec<Complex64>> {
    list_items(line, key, v)?
        .into_iter()
        .map(|item| parse_complex(item).map_err(|e| err(line, format!("{key}: {e}"))))
        .collect()
}

fn parse_method_list(line: usize, key: &str, v: &str) -> Result<Vec<Method>> {
    list_items(line, key, v)?
        .into_iter()
        .map(|item| item.parse::<Method>().map_err(|e| err(line, e)))
        .collect()
}

/// Parse and fully validate a config file.
///
/// # Errors
///
/// Unknown or duplicate keys, malformed values, and cross-field violations
/// (gap not a multiple of the spacing, targets out of range, gain/target
/// count mismatch, incomplete sweep setup, ...) are reported with the line
/// number where possible.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut seen: HashSet<String> = HashSet::new();
    let mut gap_hz: Option<f64> = None;
    let mut no_noise = false;
    let mut snr_line = 0;

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line, format!("expected 'key = value', got '{content}'")));
        };
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_string()) {
            return Err(err(line, format!("duplicate key '{key}'")));
        }
        match key {
            "K" => cfg.k = parse_usize(line, key, value)?,
            "delta_f_hz" => cfg.delta_f_hz = parse_f64(line, key, value)?,
            "f_carrier_hz" => cfg.f_carrier_hz = parse_f64(line, key, value)?,
            "N_sub" => cfg.n_sub = parse_usize(line, key, value)?,
            "gap_subcarriers" => cfg.gap_subcarriers = Some(parse_usize(line, key, value)?),
            "gap_hz" => gap_hz = Some(parse_f64(line, key, value)?),
            "start_index" => cfg.start_index = parse_usize(line, key, value)?,
            "targets_ns" => cfg.targets_ns = parse_f64_list(line, key, value)?,
            "gain_model" => {
                cfg.gain_model = match value {
                    "fixed" => GainModelKind::Fixed,
                    "rayleigh" => GainModelKind::Rayleigh,
                    _ => {
                        return Err(err(
                            line,
                            format!("gain_model expects fixed or rayleigh, got '{value}'"),
                        ))
                    }
                }
            }
            "fixed_gains" => cfg.fixed_gains = parse_complex_list(line, key, value)?,
            "snr_db" => {
                snr_line = line;
                cfg.snr_db = Some(parse_f64(line, key, value)?);
            }
            "no_noise" => no_noise = parse_bool(line, key, value)?,
            "snr_sweep_db" => cfg.snr_sweep_db = parse_f64_list(line, key, value)?,
            "seed" => cfg.seed = parse_u64(line, key, value)?,
            "method" => cfg.method = value.parse().map_err(|e| err(line, e))?,
            "methods" => cfg.methods = parse_method_list(line, key, value)?,
            "L_max" => cfg.l_max = Some(parse_usize(line, key, value)?),
            "epsilon" => cfg.epsilon = parse_f64(line, key, value)?,
            "osf" => cfg.osf = parse_usize(line, key, value)?,
            "max_refinement_cycles" => cfg.max_refinement_cycles = parse_usize(line, key, value)?,
            "cycle_tolerance" => cfg.cycle_tolerance = parse_f64(line, key, value)?,
            "trials" => cfg.trials = parse_usize(line, key, value)?,
            "sweep" => {
                cfg.sweep = Some(match value {
                    "snr" => SweepAxis::Snr,
                    "gap" => SweepAxis::Gap,
                    _ => {
                        return Err(err(line, format!("sweep expects snr or gap, got '{value}'")))
                    }
                })
            }
            "gap_sweep_subcarriers" => {
                cfg.gap_sweep_subcarriers = parse_usize_list(line, key, value)?
            }
            "out" => cfg.out = Some(value.to_string()),
            "emit_profiles" => cfg.emit_profiles = parse_bool(line, key, value)?,
            _ => return Err(err(line, format!("unknown key '{key}'"))),
        }
    }

    finish(cfg, gap_hz, no_noise, snr_line)
}

fn bad<T>(msg: String) -> Result<T> {
    Err(CliError::Config(msg))
}

/// Cross-field validation and normalization after all keys are read.
fn finish(
    mut cfg: RunConfig,
    gap_hz: Option<f64>,
    no_noise: bool,
    snr_line: usize,
) -> Result<RunConfig> {
    if cfg.k < 2 {
        return bad(format!("K must be at least 2, got {}", cfg.k));
    }
    if !(cfg.delta_f_hz.is_finite() && cfg.delta_f_hz > 0.0) {
        return bad(format!("delta_f_hz must be positive, got {}", cfg.delta_f_hz));
    }
    if !(cfg.f_carrier_hz.is_finite() && cfg.f_carrier_hz >= 0.0) {
        return bad(format!("f_carrier_hz must be non-negative, got {}", cfg.f_carrier_hz));
    }
    if cfg.n_sub == 0 {
        return bad("N_sub must be at least 1".into());
    }

    if let Some(hz) = gap_hz {
        if cfg.gap_subcarriers.is_some() {
            return bad("give gap_subcarriers or gap_hz, not both".into());
        }
        let ratio = hz / cfg.delta_f_hz;
        let rounded = ratio.round();
        if !(ratio.is_finite() && rounded >= 1.0 && (ratio - rounded).abs() <= 1e-9 * rounded.max(1.0))
        {
            return bad(format!(
                "gap_hz = {hz} is not a positive multiple of delta_f_hz = {}",
                cfg.delta_f_hz
            ));
        }
        cfg.gap_subcarriers = Some(rounded as usize);
    }
    let check_gap = |gap: usize| -> Result<()> {
        if gap < cfg.n_sub {
            return bad(format!("gap {gap} is below the subband width N_sub = {}", cfg.n_sub));
        }
        if cfg.start_index + gap + cfg.n_sub > cfg.k {
            return bad(format!(
                "band layout start {} + gap {gap} + N_sub {} exceeds K = {}",
                cfg.start_index, cfg.n_sub, cfg.k
            ));
        }
        Ok(())
    };
    if let Some(gap) = cfg.gap_subcarriers {
        check_gap(gap)?;
    }
    for &gap in &cfg.gap_sweep_subcarriers {
        check_gap(gap)?;
    }

    let range_ns = cfg.range_ns();
    for &t in &cfg.targets_ns {
        if !(t.is_finite() && t >= 0.0 && t < range_ns) {
            return bad(format!(
                "target delay {t} ns is outside the unambiguous range [0, {range_ns}) ns"
            ));
        }
    }

    match cfg.gain_model {
        GainModelKind::Fixed => {
            if cfg.fixed_gains.is_empty() {
                return bad("gain_model = fixed needs fixed_gains".into());
            }
            if !cfg.targets_ns.is_empty() && cfg.fixed_gains.len() != cfg.targets_ns.len() {
                return bad(format!(
                    "{} fixed gains for {} targets",
                    cfg.fixed_gains.len(),
                    cfg.targets_ns.len()
                ));
            }
            for g in &cfg.fixed_gains {
                if !(g.re.is_finite() && g.im.is_finite()) {
                    return bad("fixed_gains must be finite".into());
                }
            }
        }
        GainModelKind::Rayleigh => {
            if !cfg.fixed_gains.is_empty() {
                return bad("fixed_gains requires gain_model = fixed".into());
            }
        }
    }

    if no_noise {
        if cfg.snr_db.is_some() {
            return Err(err(snr_line, "snr_db conflicts with no_noise"));
        }
        cfg.snr_db = Some(f64::INFINITY);
    }
    let check_snr = |snr: f64, what: &str| -> Result<()> {
        if snr.is_nan() || snr == f64::NEG_INFINITY {
            return bad(format!("{what} must be a real SNR in dB (or inf), got {snr}"));
        }
        Ok(())
    };
    if let Some(snr) = cfg.snr_db {
        check_snr(snr, "snr_db")?;
    }
    for &snr in &cfg.snr_sweep_db {
        check_snr(snr, "snr_sweep_db entry")?;
    }

    if cfg.l_max == Some(0) {
        return bad("L_max must be at least 1".into());
    }
    if cfg.osf == 0 {
        return bad("osf must be at least 1".into());
    }
    if cfg.max_refinement_cycles == 0 {
        return bad("max_refinement_cycles must be at least 1".into());
    }
    if !(cfg.epsilon.is_finite() && cfg.epsilon >= 0.0) {
        return bad(format!("epsilon must be >= 0, got {}", cfg.epsilon));
    }
    if !(cfg.cycle_tolerance.is_finite() && cfg.cycle_tolerance >= 0.0) {
        return bad(format!("cycle_tolerance must be >= 0, got {}", cfg.cycle_tolerance));
    }
    if cfg.trials == 0 {
        return bad("trials must be at least 1".into());
    }

    match cfg.sweep {
        Some(SweepAxis::Snr) => {
            if cfg.snr_sweep_db.is_empty() {
                return bad("sweep = snr needs a non-empty snr_sweep_db".into());
            }
        }
        Some(SweepAxis::Gap) => {
            if cfg.gap_sweep_subcarriers.is_empty() {
                return bad("sweep = gap needs a non-empty gap_sweep_subcarriers".into());
            }
            if cfg.snr_db.is_none() && cfg.snr_sweep_db.is_empty() {
                return bad("sweep = gap needs snr_db or snr_sweep_db".into());
            }
        }
        None => {}
    }

    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_standard_grid_defaults() {
        let cfg = parse_config("").unwrap();
        assert_eq!(cfg.k, 1024);
        assert_eq!(cfg.delta_f_hz, 312.5e3);
        assert_eq!(cfg.f_carrier_hz, 5.2e9);
        assert_eq!(cfg.n_sub, 128);
        assert_eq!(cfg.gap_subcarriers, None);
        assert_eq!(cfg.method, Method::Relax);
        assert_eq!(cfg.osf, 16);
        assert_eq!(cfg.trials, 1000);
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let cfg = parse_config(
            "# header comment\n\n  gap_subcarriers = 896  # trailing\n\nseed = 9\n",
        )
        .unwrap();
        assert_eq!(cfg.gap_subcarriers, Some(896));
        assert_eq!(cfg.seed, 9);
    }

    #[test]
    fn gap_hz_converts_to_subcarriers() {
        let cfg = parse_config("gap_hz = 280e6\n").unwrap();
        assert_eq!(cfg.gap_subcarriers, Some(896));
    }

    #[test]
    fn gap_hz_must_divide_evenly() {
        let e = parse_config("gap_hz = 100e3\n").unwrap_err();
        assert!(e.to_string().contains("multiple of delta_f_hz"), "{e}");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn both_gap_keys_conflict() {
        assert!(parse_config("gap_subcarriers = 896\ngap_hz = 280e6\n").is_err());
    }

    #[test]
    fn unknown_and_duplicate_keys_report_the_line() {
        let e = parse_config("seed = 1\nwat = 2\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(e.to_string().contains("unknown key 'wat'"), "{e}");
        let e = parse_config("seed = 1\nseed = 2\n").unwrap_err();
        assert!(e.to_string().contains("duplicate key 'seed'"), "{e}");
    }

    #[test]
    fn type_errors_name_the_key() {
        let e = parse_config("K = twelve\n").unwrap_err();
        assert!(e.to_string().contains("K expects"), "{e}");
        let e = parse_config("targets_ns = 66, 100\n").unwrap_err();
        assert!(e.to_string().contains("list"), "{e}");
    }

    #[test]
    fn targets_must_fit_the_unambiguous_range() {
        assert!(parse_config("targets_ns = [66, 100, 133]\n").is_ok());
        let e = parse_config("targets_ns = [3200]\n").unwrap_err(); // = 1/Δf
        assert!(e.to_string().contains("unambiguous range"), "{e}");
        assert!(parse_config("targets_ns = [-1]\n").is_err());
    }

    #[test]
    fn fixed_gains_must_match_targets() {
        let ok = parse_config(
            "targets_ns = [66, 100]\ngain_model = fixed\nfixed_gains = [1, 0.5-0.3j]\n",
        )
        .unwrap();
        assert_eq!(ok.fixed_gains[1], Complex64::new(0.5, -0.3));
        assert!(parse_config(
            "targets_ns = [66, 100]\ngain_model = fixed\nfixed_gains = [1]\n"
        )
        .is_err());
        assert!(parse_config("fixed_gains = [1]\n").is_err()); // model is rayleigh
        assert!(parse_config("gain_model = fixed\n").is_err()); // no gains
    }

    #[test]
    fn complex_literals_cover_the_documented_forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), Complex64::new(-0.5, 0.0));
        assert_eq!(parse_complex("0.3j").unwrap(), Complex64::new(0.0, 0.3));
        assert_eq!(parse_complex("-2j").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("1+2j").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("1.5-2e-3j").unwrap(), Complex64::new(1.5, -2e-3));
        assert_eq!(parse_complex("1e2+1e-2j").unwrap(), Complex64::new(100.0, 0.01));
        assert!(parse_complex("j").is_err());
        assert!(parse_complex("1+j2").is_err());
    }

    #[test]
    fn no_noise_and_snr_db_are_exclusive() {
        let cfg = parse_config("no_noise = true\n").unwrap();
        assert_eq!(cfg.snr_db, Some(f64::INFINITY));
        let cfg = parse_config("snr_db = inf\n").unwrap();
        assert_eq!(cfg.snr_db, Some(f64::INFINITY));
        assert!(parse_config("snr_db = 10\nno_noise = true\n").is_err());
        assert!(parse_config("snr_db = nan\n").is_err());
    }

    #[test]
    fn sweep_setups_are_cross_checked() {
        assert!(parse_config("sweep = snr\n").is_err());
        assert!(parse_config("sweep = gap\ngap_sweep_subcarriers = [128]\n").is_err());
        let ok = parse_config(
            "sweep = gap\ngap_sweep_subcarriers = [128, 896]\nsnr_db = 15\ntargets_ns = [100]\n",
        )
        .unwrap();
        assert_eq!(ok.gap_sweep_subcarriers, vec![128, 896]);
        assert!(parse_config("sweep = gap\ngap_sweep_subcarriers = [64]\nsnr_db = 15\n").is_err());
    }

    #[test]
    fn band_layout_must_fit_the_grid() {
        assert!(parse_config("gap_subcarriers = 897\n").is_err()); // 0+897+128 > 1024
        assert!(parse_config("gap_subcarriers = 96\n").is_err()); // < N_sub
        assert!(parse_config("gap_subcarriers = 768\nstart_index = 256\n").is_err());
        assert!(parse_config("gap_subcarriers = 640\nstart_index = 256\n").is_ok()); // ends at K
    }

    #[test]
    fn dump_round_trips_arbitrary_configs() {
        let text = "K = 512\ndelta_f_hz = 1e6\ngap_subcarriers = 200\nN_sub = 64\n\
                    targets_ns = [12.5, 60]\ngain_model = fixed\nfixed_gains = [1, -0.25+0.75j]\n\
                    snr_db = 12.5\nseed = 17\nmethod = omp\nL_max = 2\nosf = 32\n\
                    trials = 250\nout = results.csv\nemit_profiles = true\n";
        let cfg = parse_config(text).unwrap();
        let reparsed = parse_config(&cfg.dump()).unwrap();
        assert_eq!(cfg, reparsed);
    }

    #[test]
    fn dump_round_trips_the_defaults() {
        let cfg = RunConfig::default();
        assert_eq!(parse_config(&cfg.dump()).unwrap(), cfg);
    }

    #[test]
    fn sweep_methods_fall_back_to_the_single_method() {
        let cfg = parse_config("method = omp\n").unwrap();
        assert_eq!(cfg.sweep_methods(), vec![Method::Omp]);
        let cfg = parse_config("methods = [relax, omp]\n").unwrap();
        assert_eq!(cfg.sweep_methods(), vec![Method::Relax, Method::Omp]);
    }
}
