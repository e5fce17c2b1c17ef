//! Line-oriented `key = value` scenario files.
//!
//! ```text
//! # comment
//! scenario = delay_scan
//! tau_L = 100 fs
//! delta_t_max = 800 fs
//! n_points = 81
//! ```
//!
//! Times take `s`, `ms`, `us`, `ns`, `ps` or `fs`; angles `rad` or `deg`;
//! lengths `m`, `mm`, `um` or `nm`; `k1_second_deriv` takes `s2/m` or
//! `fs2/mm`. A bare number is read in SI units (seconds, radians, metres).
//! Unknown keys, keys not used by the chosen scenario and repeated keys are
//! rejected. Defaults are resolved at parse time, so
//! [`ScenarioConfig::to_config_string`] emits every effective setting.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hom_core::montecarlo::{DetectionRun, DetectorConfig};
use hom_core::spectral::{delay_from_path, CrystalData};
use hom_core::{SpectralParams, TimeGrid};

use crate::error::CliError;

pub const DEFAULT_PRECISION: usize = 9;
pub const DEFAULT_TAU_P: f64 = 10e-12;
pub const DEFAULT_COINCIDENCE_WINDOW: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Ideal,
    Polarization,
    DelayDensity,
    DelayScan,
    MonteCarlo,
    Oracle,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Ideal => "ideal",
            Scenario::Polarization => "polarization",
            Scenario::DelayDensity => "delay_density",
            Scenario::DelayScan => "delay_scan",
            Scenario::MonteCarlo => "monte_carlo",
            Scenario::Oracle => "oracle",
        }
    }

    fn keys(&self) -> &'static [&'static str] {
        const SOURCE: [&str; 4] = ["tau_L", "crystal_length", "k1_second_deriv", "tau_p"];
        match self {
            Scenario::Ideal => &[],
            Scenario::Polarization => &["alpha", "delta_min", "delta_max", "n_points"],
            Scenario::DelayDensity => &[
                SOURCE[0], SOURCE[1], SOURCE[2], SOURCE[3], "delta_t", "delta_l", "eta", "x_max", "n_points",
            ],
            Scenario::DelayScan => &[
                SOURCE[0],
                SOURCE[1],
                SOURCE[2],
                SOURCE[3],
                "delta_t_min",
                "delta_t_max",
                "n_points",
                "n_pairs",
                "seed",
            ],
            Scenario::MonteCarlo => &[
                SOURCE[0],
                SOURCE[1],
                SOURCE[2],
                SOURCE[3],
                "delta_t",
                "delta_l",
                "eta",
                "n_pairs",
                "seed",
                "temporal_resolution",
                "coincidence_window",
                "bin_width",
                "histogram_half_width",
            ],
            Scenario::Oracle => &[SOURCE[0], SOURCE[1], SOURCE[2], SOURCE[3], "delta_t", "delta_l", "eta"],
        }
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ideal" => Scenario::Ideal,
            "polarization" => Scenario::Polarization,
            "delay_density" => Scenario::DelayDensity,
            "delay_scan" => Scenario::DelayScan,
            "monte_carlo" => Scenario::MonteCarlo,
            "oracle" => Scenario::Oracle,
            other => {
                return Err(CliError::Value {
                    key: "scenario".into(),
                    reason: format!("unknown scenario `{other}`"),
                })
            }
        })
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where `tau_L` comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dispersion {
    TauL(f64),
    Crystal(CrystalData),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSpec {
    pub dispersion: Dispersion,
    pub tau_p: f64,
}

/// Up-channel delay as given in the file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DelaySpec {
    Time(f64),
    /// Extra path length, m.
    Path(f64),
    /// `delta_t / (sqrt 8 tau_L)`
    Eta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationSweep {
    pub alpha: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySpec {
    pub x_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub delta_t_min: f64,
    pub delta_t_max: f64,
    pub n_points: usize,
    /// Monte Carlo pairs per point; no empirical column when absent.
    pub n_pairs: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionSpec {
    pub n_pairs: u64,
    pub temporal_resolution: f64,
    pub coincidence_window: f64,
    pub bin_width: f64,
    pub histogram_half_width: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub output_path: PathBuf,
    pub float_precision: usize,
    pub seed: Option<u64>,
    pub source: Option<SourceSpec>,
    pub delay: Option<DelaySpec>,
    pub polarization: Option<PolarizationSweep>,
    pub density: Option<DensitySpec>,
    pub scan: Option<ScanSpec>,
    pub detection: Option<DetectionSpec>,
}

impl ScenarioConfig {
    /// Spectral parameters with the configured delay (zero when the
    /// scenario has none).
    pub fn params(&self) -> Result<Option<SpectralParams>, CliError> {
        let Some(source) = self.source else {
            return Ok(None);
        };
        let base = match source.dispersion {
            Dispersion::TauL(tau_l) => SpectralParams::new(source.tau_p, tau_l, 0.0)?,
            Dispersion::Crystal(c) => SpectralParams::from_crystal(c, source.tau_p, 0.0)?,
        };
        let delta_t = match self.delay {
            None => 0.0,
            Some(DelaySpec::Time(t)) => t,
            Some(DelaySpec::Path(l)) => delay_from_path(l)?,
            Some(DelaySpec::Eta(eta)) => eta * 8f64.sqrt() * base.tau_l(),
        };
        Ok(Some(base.with_delta_t(delta_t)?))
    }

    pub fn detection_run(&self) -> Result<Option<DetectionRun>, CliError> {
        let (Some(params), Some(det)) = (self.params()?, self.detection) else {
            return Ok(None);
        };
        let detector = DetectorConfig::new(det.temporal_resolution, det.coincidence_window)?;
        Ok(Some(DetectionRun::new(
            det.n_pairs,
            self.seed.unwrap_or(0),
            params,
            detector,
        )?))
    }

    /// Every effective setting as a config document; parsing it yields an
    /// identical `ScenarioConfig`.
    pub fn to_config_string(&self) -> String {
        let mut lines = vec![format!("scenario = {}", self.scenario)];
        lines.push(format!("output = {}", self.output_path.display()));
        lines.push(format!("precision = {}", self.float_precision));
        if let Some(seed) = self.seed {
            lines.push(format!("seed = {seed}"));
        }
        if let Some(source) = self.source {
            match source.dispersion {
                Dispersion::TauL(t) => lines.push(format!("tau_L = {t:e} s")),
                Dispersion::Crystal(c) => {
                    lines.push(format!("crystal_length = {:e} m", c.length));
                    lines.push(format!("k1_second_deriv = {:e} s2/m", c.k1_second_deriv));
                }
            }
            lines.push(format!("tau_p = {:e} s", source.tau_p));
        }
        match self.delay {
            Some(DelaySpec::Time(t)) => lines.push(format!("delta_t = {t:e} s")),
            Some(DelaySpec::Path(l)) => lines.push(format!("delta_l = {l:e} m")),
            Some(DelaySpec::Eta(e)) => lines.push(format!("eta = {e:e}")),
            None => {}
        }
        if let Some(p) = self.polarization {
            lines.push(format!("alpha = {:e} rad", p.alpha));
            lines.push(format!("delta_min = {:e} rad", p.delta_min));
            lines.push(format!("delta_max = {:e} rad", p.delta_max));
            lines.push(format!("n_points = {}", p.n_points));
        }
        if let Some(d) = self.density {
            lines.push(format!("x_max = {:e} s", d.x_max));
            lines.push(format!("n_points = {}", d.n_points));
        }
        if let Some(s) = self.scan {
            lines.push(format!("delta_t_min = {:e} s", s.delta_t_min));
            lines.push(format!("delta_t_max = {:e} s", s.delta_t_max));
            lines.push(format!("n_points = {}", s.n_points));
            if let Some(n) = s.n_pairs {
                lines.push(format!("n_pairs = {n}"));
            }
        }
        if let Some(d) = self.detection {
            lines.push(format!("n_pairs = {}", d.n_pairs));
            lines.push(format!("temporal_resolution = {:e} s", d.temporal_resolution));
            lines.push(format!("coincidence_window = {:e} s", d.coincidence_window));
            lines.push(format!("bin_width = {:e} s", d.bin_width));
            lines.push(format!("histogram_half_width = {:e} s", d.histogram_half_width));
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    /// Uniform grid over `t1 - t2` for the density table.
    pub fn density_grid(&self) -> Result<Option<TimeGrid>, CliError> {
        match self.density {
            Some(d) => Ok(Some(TimeGrid::new(-d.x_max, d.x_max, d.n_points)?)),
            None => Ok(None),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Quantity {
    Time,
    Angle,
    Length,
    Dispersion,
    Plain,
}

impl Quantity {
    fn scale(&self, unit: &str) -> Option<f64> {
        match (self, unit) {
            (_, "") => Some(1.0),
            (Quantity::Time, "s") => Some(1.0),
            (Quantity::Time, "ms") => Some(1e-3),
            (Quantity::Time, "us") => Some(1e-6),
            (Quantity::Time, "ns") => Some(1e-9),
            (Quantity::Time, "ps") => Some(1e-12),
            (Quantity::Time, "fs") => Some(1e-15),
            (Quantity::Angle, "rad") => Some(1.0),
            (Quantity::Angle, "deg") => Some(PI / 180.0),
            (Quantity::Length, "m") => Some(1.0),
            (Quantity::Length, "mm") => Some(1e-3),
            (Quantity::Length, "um") => Some(1e-6),
            (Quantity::Length, "nm") => Some(1e-9),
            (Quantity::Dispersion, "s2/m") => Some(1.0),
            (Quantity::Dispersion, "fs2/mm") => Some(1e-27),
            _ => None,
        }
    }
}

/// Raw `key = value` pairs of one document.
struct Entries {
    values: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!("line {line_no}: expected `key = value`")));
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(CliError::Config(format!("line {line_no}: empty key")));
            }
            if value.is_empty() {
                return Err(CliError::Value {
                    key: key.into(),
                    reason: format!("line {line_no}: empty value"),
                });
            }
            if let Some((first, _)) = values.insert(key.to_string(), (line_no, value.to_string())) {
                return Err(CliError::Config(format!(
                    "line {line_no}: duplicate key `{key}` (first set on line {first})"
                )));
            }
        }
        Ok(Self { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(_, v)| v.as_str())
    }

    fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    fn quantity(&self, key: &str, kind: Quantity) -> Result<Option<f64>, CliError> {
        let Some(raw) = self.raw(key) else {
            return Ok(None);
        };
        let bad = |reason: String| CliError::Value {
            key: key.to_string(),
            reason,
        };
        let (number, unit) = split_number(raw).ok_or_else(|| bad(format!("`{raw}` is not a number")))?;
        let scale = kind
            .scale(unit)
            .ok_or_else(|| bad(format!("unknown unit `{unit}` for {kind:?}")))?;
        Ok(Some(number * scale))
    }

    fn integer<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        let Some(raw) = self.raw(key) else {
            return Ok(None);
        };
        raw.parse::<T>().map(Some).map_err(|_| CliError::Value {
            key: key.to_string(),
            reason: format!("`{raw}` is not a non-negative integer"),
        })
    }
}

/// Splits `"100 fs"` / `"100fs"` / `"1e-3"` into the longest parseable
/// numeric prefix and the trimmed remainder.
fn split_number(raw: &str) -> Option<(f64, &str)> {
    let raw = raw.trim();
    let mut ends: Vec<usize> = raw.char_indices().map(|(i, _)| i).skip(1).collect();
    ends.push(raw.len());
    for &end in ends.iter().rev() {
        if let Ok(v) = raw[..end].trim().parse::<f64>() {
            if !v.is_finite() {
                return None;
            }
            return Some((v, raw[end..].trim()));
        }
    }
    None
}

fn require<T>(value: Option<T>, key: &str, scenario: Scenario) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing required key `{key}` for scenario {scenario}")))
}

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn check_points(n: usize) -> Result<usize, CliError> {
    if n < 2 {
        return Err(validation(format!("n_points must be at least 2, got {n}")));
    }
    Ok(n)
}

fn parse_source(e: &Entries, scenario: Scenario) -> Result<SourceSpec, CliError> {
    let tau_l = e.quantity("tau_L", Quantity::Time)?;
    let length = e.quantity("crystal_length", Quantity::Length)?;
    let k1 = e.quantity("k1_second_deriv", Quantity::Dispersion)?;
    let dispersion = match (tau_l, length, k1) {
        (Some(t), None, None) => Dispersion::TauL(t),
        (None, Some(length), Some(k1_second_deriv)) => Dispersion::Crystal(CrystalData {
            length,
            k1_second_deriv,
        }),
        (None, None, None) => {
            return Err(CliError::Config(format!(
                "missing required key `tau_L` (or `crystal_length` and `k1_second_deriv`) for scenario {scenario}"
            )))
        }
        (Some(_), _, _) => {
            return Err(CliError::Config(
                "`tau_L` cannot be combined with `crystal_length`/`k1_second_deriv`".into(),
            ))
        }
        _ => {
            return Err(CliError::Config(
                "`crystal_length` and `k1_second_deriv` must be given together".into(),
            ))
        }
    };
    let tau_p = e.quantity("tau_p", Quantity::Time)?.unwrap_or(DEFAULT_TAU_P);
    Ok(SourceSpec { dispersion, tau_p })
}

fn parse_delay(e: &Entries, scenario: Scenario) -> Result<DelaySpec, CliError> {
    let given: Vec<&str> = ["delta_t", "delta_l", "eta"].into_iter().filter(|k| e.has(k)).collect();
    match given.as_slice() {
        [] => Err(CliError::Config(format!(
            "missing required key `delta_t` (or `delta_l` or `eta`) for scenario {scenario}"
        ))),
        ["delta_t"] => Ok(DelaySpec::Time(e.quantity("delta_t", Quantity::Time)?.unwrap())),
        ["delta_l"] => Ok(DelaySpec::Path(e.quantity("delta_l", Quantity::Length)?.unwrap())),
        ["eta"] => {
            let eta = e.quantity("eta", Quantity::Plain)?.unwrap();
            if eta < 0.0 {
                return Err(validation(format!("eta must be non-negative, got {eta}")));
            }
            Ok(DelaySpec::Eta(eta))
        }
        _ => Err(CliError::Config(format!(
            "only one of {} may be given",
            given.join(", ")
        ))),
    }
}

/// Parses and validates a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let e = Entries::parse(text)?;
    let scenario: Scenario = require(e.raw("scenario"), "scenario", Scenario::Ideal)
        .map_err(|_| CliError::Config("missing required key `scenario`".into()))?
        .parse()?;
    let allowed = scenario.keys();
    for key in e.values.keys() {
        let common = matches!(key.as_str(), "scenario" | "output" | "precision");
        if !common && !allowed.contains(&key.as_str()) {
            return Err(CliError::Config(format!("unknown key `{key}` for scenario {scenario}")));
        }
    }

    let float_precision = e.integer::<usize>("precision")?.unwrap_or(DEFAULT_PRECISION);
    if !(1..=17).contains(&float_precision) {
        return Err(validation(format!(
            "precision must be between 1 and 17, got {float_precision}"
        )));
    }
    let mut config = ScenarioConfig {
        scenario,
        output_path: PathBuf::from(e.raw("output").unwrap_or(".")),
        float_precision,
        seed: None,
        source: None,
        delay: None,
        polarization: None,
        density: None,
        scan: None,
        detection: None,
    };

    match scenario {
        Scenario::Ideal => {}
        Scenario::Polarization => {
            let sweep = PolarizationSweep {
                alpha: e.quantity("alpha", Quantity::Angle)?.unwrap_or(0.0),
                delta_min: e.quantity("delta_min", Quantity::Angle)?.unwrap_or(0.0),
                delta_max: e.quantity("delta_max", Quantity::Angle)?.unwrap_or(PI),
                n_points: check_points(e.integer("n_points")?.unwrap_or(181))?,
            };
            if sweep.delta_min >= sweep.delta_max {
                return Err(validation("delta_min must be below delta_max"));
            }
            config.polarization = Some(sweep);
        }
        Scenario::DelayDensity => {
            config.source = Some(parse_source(&e, scenario)?);
            config.delay = Some(parse_delay(&e, scenario)?);
            let params = config.params()?.expect("source set");
            let x_max = e
                .quantity("x_max", Quantity::Time)?
                .unwrap_or(params.delta_t() + 8.0 * params.tau_l());
            if x_max <= 0.0 {
                return Err(validation(format!("x_max must be positive, got {x_max:e} s")));
            }
            config.density = Some(DensitySpec {
                x_max,
                n_points: check_points(e.integer("n_points")?.unwrap_or(1601))?,
            });
        }
        Scenario::DelayScan => {
            config.source = Some(parse_source(&e, scenario)?);
            let delta_t_min = e.quantity("delta_t_min", Quantity::Time)?.unwrap_or(0.0);
            let delta_t_max = require(e.quantity("delta_t_max", Quantity::Time)?, "delta_t_max", scenario)?;
            if !(delta_t_min >= 0.0 && delta_t_min < delta_t_max) {
                return Err(validation("need 0 <= delta_t_min < delta_t_max"));
            }
            let n_pairs = e.integer::<u64>("n_pairs")?;
            if n_pairs == Some(0) {
                return Err(validation("n_pairs must be positive"));
            }
            config.scan = Some(ScanSpec {
                delta_t_min,
                delta_t_max,
                n_points: check_points(e.integer("n_points")?.unwrap_or(81))?,
                n_pairs,
            });
            if n_pairs.is_some() || e.has("seed") {
                config.seed = Some(e.integer("seed")?.unwrap_or(0));
            }
            config.params()?;
        }
        Scenario::MonteCarlo => {
            config.source = Some(parse_source(&e, scenario)?);
            config.delay = Some(parse_delay(&e, scenario)?);
            config.seed = Some(e.integer("seed")?.unwrap_or(0));
            let params = config.params()?.expect("source set");
            let n_pairs = require(e.integer::<u64>("n_pairs")?, "n_pairs", scenario)?;
            let det = DetectionSpec {
                n_pairs,
                temporal_resolution: e.quantity("temporal_resolution", Quantity::Time)?.unwrap_or(0.0),
                coincidence_window: e
                    .quantity("coincidence_window", Quantity::Time)?
                    .unwrap_or(DEFAULT_COINCIDENCE_WINDOW),
                bin_width: e.quantity("bin_width", Quantity::Time)?.unwrap_or(params.tau_l() / 4.0),
                histogram_half_width: e
                    .quantity("histogram_half_width", Quantity::Time)?
                    .unwrap_or(params.delta_t() + 12.0 * params.tau_l()),
            };
            if !(det.bin_width > 0.0 && det.histogram_half_width > 0.0) {
                return Err(validation("bin_width and histogram_half_width must be positive"));
            }
            config.detection = Some(det);
            config.detection_run()?;
        }
        Scenario::Oracle => {
            config.source = Some(parse_source(&e, scenario)?);
            config.delay = Some(parse_delay(&e, scenario)?);
            config.params()?;
        }
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delay_scan_example() {
        let c = parse_config("scenario = delay_scan\ntau_L = 100 fs\ndelta_t_max = 800 fs\nn_points = 81").unwrap();
        assert_eq!(c.scenario, Scenario::DelayScan);
        let scan = c.scan.unwrap();
        assert_eq!(scan.n_points, 81);
        assert!((scan.delta_t_max - 8e-13).abs() < 1e-27);
        let p = c.params().unwrap().unwrap();
        assert!((p.tau_l() - 1e-13).abs() < 1e-28);
        assert_eq!(p.tau_p(), DEFAULT_TAU_P);
        assert_eq!(c.float_precision, 9);
    }

    #[test]
    fn degrees_convert_to_radians() {
        let c = parse_config("scenario = polarization\nalpha = 45 deg").unwrap();
        assert!((c.polarization.unwrap().alpha - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn negative_tau_l_is_a_validation_error() {
        let err = parse_config("scenario = oracle\ntau_L = -1 fs\ndelta_t = 0 fs").unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
        assert_eq!(err.exit_code(), 5);
    }

    #[test]
    fn error_classes() {
        let cases = [
            (
                "scenario = delay_scan\ntau_L = 100 fs\ntau_L = 90 fs\ndelta_t_max = 1 ps",
                3,
            ),
            ("scenario = delay_scan\ntau_L = 100 fs", 3),
            (
                "scenario = delay_scan\ntau_L = 100 fs\ndelta_t_max = 1 ps\nbogus = 1",
                3,
            ),
            ("scenario = ideal\nalpha = 1 rad", 3),
            ("tau_L = 100 fs", 3),
            ("scenario = delay_scan\ntau_L = 100 parsecs\ndelta_t_max = 1 ps", 4),
            ("scenario = delay_scan\ntau_L = abc\ndelta_t_max = 1 ps", 4),
            (
                "scenario = delay_scan\ntau_L = 100 fs\ndelta_t_max = 1 ps\nn_points = -3",
                4,
            ),
            ("scenario = warp", 4),
            (
                "scenario = delay_scan\ntau_L = 100 fs\ndelta_t_max = 1 ps\nn_points = 1",
                5,
            ),
            ("scenario = monte_carlo\ntau_L = 100 fs\ndelta_t = 0 fs\nn_pairs = 0", 5),
            ("just words", 3),
        ];
        for (text, code) in cases {
            let err = parse_config(text).unwrap_err();
            assert_eq!(err.exit_code(), code, "{text:?}: {err}");
        }
    }

    #[test]
    fn number_and_unit_splitting() {
        assert_eq!(split_number("100 fs"), Some((100.0, "fs")));
        assert_eq!(split_number("100fs"), Some((100.0, "fs")));
        assert_eq!(split_number("1e-3"), Some((1e-3, "")));
        assert_eq!(split_number("2.5e-25 s2/m"), Some((2.5e-25, "s2/m")));
        assert_eq!(split_number("fs"), None);
        assert_eq!(split_number("inf s"), None);
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = parse_config("# header\n\nscenario = ideal   # trailing\n").unwrap();
        assert_eq!(c.scenario, Scenario::Ideal);
    }

    #[test]
    fn crystal_and_path_inputs() {
        let c = parse_config("scenario = oracle\ncrystal_length = 4 mm\nk1_second_deriv = 250 fs2/mm\ndelta_l = 30 um")
            .unwrap();
        let p = c.params().unwrap().unwrap();
        assert!((p.tau_l() - 1.581_138_830_084_19e-14).abs() < 1e-26);
        assert!((p.delta_t() - 30e-6 / hom_core::spectral::SPEED_OF_LIGHT).abs() < 1e-27);
        assert!(parse_config("scenario = oracle\ncrystal_length = 4 mm\ndelta_t = 0 s").is_err());
        assert!(parse_config("scenario = oracle\ntau_L = 1 fs\ndelta_t = 0 s\neta = 1").is_err());
    }

    #[test]
    fn eta_sets_delay() {
        let c = parse_config("scenario = delay_density\ntau_L = 100 fs\neta = 1").unwrap();
        let p = c.params().unwrap().unwrap();
        assert!((p.eta() - 1.0).abs() < 1e-15);
        let d = c.density.unwrap();
        assert!((d.x_max - (p.delta_t() + 8e-13)).abs() < 1e-27);
    }
}
