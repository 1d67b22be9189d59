//! Flat `section.key = value` configuration.
//!
//! ```text
//! # comments start with '#', blank lines are ignored
//! geometry.num_sensors = 10
//! scenario.theta_nf_radians = pi/3.1
//! scenario.range_mode = fresnel_fraction   # or: meters
//! solver.delta_max = auto
//! ```
//!
//! Angles accept `pi`, `pi/x`, `k*pi` and `k*pi/x` besides plain numbers.
//! Unknown and repeated keys are rejected. [`ExperimentConfig::to_text`]
//! writes every key and parses back to an identical config.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::array::{fresnel_bounds, physical_to_electrical};
use crate::{ArlError, ArrayGeometry, PhysicalParams, Scenario, SmithOptions, SourceSignals};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("line {line}: key `{key}` given twice")]
    DuplicateKey { line: usize, key: String },

    #[error("line {line}: key `{key}`: {message}")]
    BadValue {
        line: usize,
        key: String,
        message: String,
    },

    #[error("invalid config: {0}")]
    Invalid(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    pub num_sensors: usize,
    pub d_meters: f64,
    pub f0_hertz: f64,
}

/// How the near-field range is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RangeMode {
    Meters(f64),
    /// `r = r_min + t·(r_max − r_min)` over the Fresnel bounds.
    FresnelFraction(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub theta_ff_radians: f64,
    pub theta_nf_radians: f64,
    pub range: RangeMode,
    pub amp_ratio: f64,
    pub snapshots: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub inv_sigma2_start: f64,
    pub inv_sigma2_stop: f64,
    pub num_points: usize,
    pub log_spacing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub delta_max: Option<f64>,
    pub tol: f64,
    pub scan_floor: f64,
    pub scan_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub geometry: GeometryConfig,
    pub scenario: ScenarioConfig,
    pub sweep: SweepConfig,
    pub solver: SolverConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let smith = SmithOptions::default();
        Self {
            geometry: GeometryConfig {
                num_sensors: 10,
                d_meters: 0.0125,
                f0_hertz: 1e7,
            },
            scenario: ScenarioConfig {
                theta_ff_radians: PI / 3.0,
                theta_nf_radians: PI / 3.1,
                range: RangeMode::FresnelFraction(0.5),
                amp_ratio: 10.0,
                snapshots: 100,
                seed: 0,
            },
            sweep: SweepConfig {
                inv_sigma2_start: 1e10,
                inv_sigma2_stop: 1e16,
                num_points: 50,
                log_spacing: true,
            },
            solver: SolverConfig {
                delta_max: smith.delta_max,
                tol: smith.tol,
                scan_floor: smith.scan_floor,
                scan_points: smith.scan_points,
            },
        }
    }
}

/// Scenario built from a config, with any non-fatal remarks.
#[derive(Debug, Clone)]
pub struct ScenarioSetup {
    pub scenario: Scenario,
    pub physical: PhysicalParams,
    pub warnings: Vec<String>,
}

const KEYS: &[&str] = &[
    "geometry.num_sensors",
    "geometry.d_meters",
    "geometry.f0_hertz",
    "scenario.theta_ff_radians",
    "scenario.theta_nf_radians",
    "scenario.range_mode",
    "scenario.range_value",
    "scenario.amp_ratio",
    "scenario.snapshots",
    "scenario.seed",
    "sweep.inv_sigma2_start",
    "sweep.inv_sigma2_stop",
    "sweep.num_points",
    "sweep.log_spacing",
    "solver.delta_max",
    "solver.tol",
    "solver.scan_floor",
    "solver.scan_points",
];

/// Number, or a multiple/fraction of `pi`.
fn parse_real(text: &str) -> Result<f64, String> {
    let t = text.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (body, None),
    };
    let factor = match num.split_once('*') {
        Some((k, p)) if p.trim() == "pi" => k.trim().parse::<f64>().map_err(|e| e.to_string())?,
        None if num == "pi" => 1.0,
        _ => return Err(format!("expected a number or pi expression, got `{t}`")),
    };
    let den = match den {
        Some(d) => d.parse::<f64>().map_err(|e| e.to_string())?,
        None => 1.0,
    };
    Ok(sign * factor * PI / den)
}

fn parse_bool(text: &str) -> Result<bool, String> {
    match text.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true/false, got `{other}`")),
    }
}

fn parse_int<T: std::str::FromStr>(text: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    text.trim().parse::<T>().map_err(|e| e.to_string())
}

pub fn load_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut seen: Vec<&str> = Vec::new();
    let mut range_mode: Option<String> = None;
    let mut range_value: Option<f64> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
            line,
            message: format!("expected `section.key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let known =
            KEYS.iter()
                .copied()
                .find(|k| *k == key)
                .ok_or_else(|| ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })?;
        if seen.contains(&known) {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
        seen.push(known);

        let bad = |message: String| ConfigError::BadValue {
            line,
            key: key.to_string(),
            message,
        };
        match known {
            "geometry.num_sensors" => cfg.geometry.num_sensors = parse_int(value).map_err(bad)?,
            "geometry.d_meters" => cfg.geometry.d_meters = parse_real(value).map_err(bad)?,
            "geometry.f0_hertz" => cfg.geometry.f0_hertz = parse_real(value).map_err(bad)?,
            "scenario.theta_ff_radians" => {
                cfg.scenario.theta_ff_radians = parse_real(value).map_err(bad)?
            }
            "scenario.theta_nf_radians" => {
                cfg.scenario.theta_nf_radians = parse_real(value).map_err(bad)?
            }
            "scenario.range_mode" => match value {
                "meters" | "fresnel_fraction" => range_mode = Some(value.to_string()),
                other => {
                    return Err(bad(format!(
                        "expected `meters` or `fresnel_fraction`, got `{other}`"
                    )))
                }
            },
            "scenario.range_value" => range_value = Some(parse_real(value).map_err(bad)?),
            "scenario.amp_ratio" => cfg.scenario.amp_ratio = parse_real(value).map_err(bad)?,
            "scenario.snapshots" => cfg.scenario.snapshots = parse_int(value).map_err(bad)?,
            "scenario.seed" => cfg.scenario.seed = parse_int(value).map_err(bad)?,
            "sweep.inv_sigma2_start" => {
                cfg.sweep.inv_sigma2_start = parse_real(value).map_err(bad)?
            }
            "sweep.inv_sigma2_stop" => {
                cfg.sweep.inv_sigma2_stop = parse_real(value).map_err(bad)?
            }
            "sweep.num_points" => cfg.sweep.num_points = parse_int(value).map_err(bad)?,
            "sweep.log_spacing" => cfg.sweep.log_spacing = parse_bool(value).map_err(bad)?,
            "solver.delta_max" => {
                cfg.solver.delta_max = if value == "auto" {
                    None
                } else {
                    Some(parse_real(value).map_err(bad)?)
                }
            }
            "solver.tol" => cfg.solver.tol = parse_real(value).map_err(bad)?,
            "solver.scan_floor" => cfg.solver.scan_floor = parse_real(value).map_err(bad)?,
            "solver.scan_points" => cfg.solver.scan_points = parse_int(value).map_err(bad)?,
            _ => unreachable!("key list and match arms out of sync"),
        }
    }

    cfg.scenario.range = match (range_mode.as_deref(), range_value) {
        (Some("meters"), Some(v)) => RangeMode::Meters(v),
        (Some("meters"), None) => {
            return Err(ConfigError::Invalid(
                "scenario.range_mode = meters needs scenario.range_value".into(),
            ))
        }
        (_, Some(v)) => RangeMode::FresnelFraction(v),
        (_, None) => cfg.scenario.range,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config_file(path: impl AsRef<Path>) -> Result<ExperimentConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_config(&text)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |msg: String| Err(ConfigError::Invalid(msg));
        let g = &self.geometry;
        if g.num_sensors < 3 {
            return fail(format!(
                "geometry.num_sensors = {} but identifiability of (omega1, omega2, phi) needs L >= 3",
                g.num_sensors
            ));
        }
        for (name, v) in [
            ("geometry.d_meters", g.d_meters),
            ("geometry.f0_hertz", g.f0_hertz),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return fail(format!("{name} must be positive, got {v}"));
            }
        }
        let s = &self.scenario;
        for (name, v) in [
            ("scenario.theta_ff_radians", s.theta_ff_radians),
            ("scenario.theta_nf_radians", s.theta_nf_radians),
        ] {
            if !(v.abs() < FRAC_PI_2) {
                return fail(format!("{name} must lie in (-pi/2, pi/2), got {v}"));
            }
        }
        if s.theta_ff_radians == s.theta_nf_radians {
            return fail("the two sources need distinct angles (delta != 0)".into());
        }
        match s.range {
            RangeMode::Meters(r) if !(r.is_finite() && r > 0.0) => {
                return fail(format!(
                    "scenario.range_value must be positive meters, got {r}"
                ))
            }
            RangeMode::FresnelFraction(t) if !(0.0..=1.0).contains(&t) => {
                return fail(format!("Fresnel fraction must lie in [0, 1], got {t}"))
            }
            _ => {}
        }
        if !(s.amp_ratio.is_finite() && s.amp_ratio > 0.0) {
            return fail(format!(
                "scenario.amp_ratio must be positive, got {}",
                s.amp_ratio
            ));
        }
        if s.snapshots < 1 {
            return fail("scenario.snapshots must be at least 1".into());
        }
        let w = &self.sweep;
        if w.num_points < 2 {
            return fail(format!(
                "sweep.num_points must be >= 2, got {}",
                w.num_points
            ));
        }
        if !(w.inv_sigma2_start > 0.0 && w.inv_sigma2_start < w.inv_sigma2_stop)
            || !w.inv_sigma2_stop.is_finite()
        {
            return fail(format!(
                "need 0 < sweep.inv_sigma2_start < sweep.inv_sigma2_stop, got {} and {}",
                w.inv_sigma2_start, w.inv_sigma2_stop
            ));
        }
        let v = &self.solver;
        if !(v.tol > 0.0 && v.scan_floor > 0.0) || v.scan_points < 2 {
            return fail(
                "solver.tol and solver.scan_floor must be positive, solver.scan_points >= 2".into(),
            );
        }
        if let Some(dm) = v.delta_max {
            if !(dm > v.scan_floor) {
                return fail(format!(
                    "solver.delta_max = {dm} must exceed solver.scan_floor"
                ));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.geometry;
        let s = &self.scenario;
        let w = &self.sweep;
        let v = &self.solver;
        let (mode, value) = match s.range {
            RangeMode::Meters(r) => ("meters", r),
            RangeMode::FresnelFraction(t) => ("fresnel_fraction", t),
        };
        let delta_max = v
            .delta_max
            .map_or_else(|| "auto".to_string(), |d| format!("{d:?}"));
        let _ = writeln!(out, "geometry.num_sensors = {}", g.num_sensors);
        let _ = writeln!(out, "geometry.d_meters = {:?}", g.d_meters);
        let _ = writeln!(out, "geometry.f0_hertz = {:?}", g.f0_hertz);
        let _ = writeln!(out, "scenario.theta_ff_radians = {:?}", s.theta_ff_radians);
        let _ = writeln!(out, "scenario.theta_nf_radians = {:?}", s.theta_nf_radians);
        let _ = writeln!(out, "scenario.range_mode = {mode}");
        let _ = writeln!(out, "scenario.range_value = {value:?}");
        let _ = writeln!(out, "scenario.amp_ratio = {:?}", s.amp_ratio);
        let _ = writeln!(out, "scenario.snapshots = {}", s.snapshots);
        let _ = writeln!(out, "scenario.seed = {}", s.seed);
        let _ = writeln!(out, "sweep.inv_sigma2_start = {:?}", w.inv_sigma2_start);
        let _ = writeln!(out, "sweep.inv_sigma2_stop = {:?}", w.inv_sigma2_stop);
        let _ = writeln!(out, "sweep.num_points = {}", w.num_points);
        let _ = writeln!(out, "sweep.log_spacing = {}", w.log_spacing);
        let _ = writeln!(out, "solver.delta_max = {delta_max}");
        let _ = writeln!(out, "solver.tol = {:?}", v.tol);
        let _ = writeln!(out, "solver.scan_floor = {:?}", v.scan_floor);
        let _ = writeln!(out, "solver.scan_points = {}", v.scan_points);
        out
    }

    pub fn smith_options(&self) -> SmithOptions {
        SmithOptions {
            delta_max: self.solver.delta_max,
            tol: self.solver.tol,
            scan_floor: self.solver.scan_floor,
            scan_points: self.solver.scan_points,
        }
    }

    pub fn array_geometry(&self) -> Result<ArrayGeometry, ArlError> {
        let g = &self.geometry;
        ArrayGeometry::from_carrier(g.num_sensors, g.d_meters, g.f0_hertz)
    }

    /// Range in meters plus warnings about the Fresnel region.
    pub fn resolve_range(&self) -> Result<(f64, Vec<String>), ArlError> {
        let geom = self.array_geometry()?;
        let (r_min, r_max) = fresnel_bounds(&geom);
        let mut warnings = Vec::new();
        let empty = r_min >= r_max;
        if empty {
            warnings.push(format!(
                "Fresnel region is empty for this geometry (r_min = {r_min:e} m >= r_max = {r_max:e} m)"
            ));
        }
        let range = match self.scenario.range {
            RangeMode::Meters(r) => {
                if !empty && !(r_min..=r_max).contains(&r) {
                    warnings.push(format!(
                        "range {r:e} m lies outside the Fresnel region [{r_min:e}, {r_max:e}] m"
                    ));
                }
                r
            }
            RangeMode::FresnelFraction(t) => {
                if empty {
                    warnings.push(format!(
                        "interpolating fraction {t} between the inverted bounds"
                    ));
                }
                r_min + t * (r_max - r_min)
            }
        };
        Ok((range, warnings))
    }

    /// Builds the scenario (signals drawn from the seed) at noise variance `sigma2`.
    pub fn setup(&self, sigma2: f64) -> Result<ScenarioSetup, ArlError> {
        let geom = self.array_geometry()?;
        let (range, mut warnings) = self.resolve_range()?;
        let ratio = geom.spacing() / geom.wavelength();
        if ratio < 0.01 {
            warnings.insert(
                0,
                format!("d/lambda = {ratio:.3e} < 0.01: resolving the sources needs extreme SNR"),
            );
        }
        let physical = PhysicalParams {
            theta_ff: self.scenario.theta_ff_radians,
            theta_nf: self.scenario.theta_nf_radians,
            range,
        };
        let electrical = physical_to_electrical(&physical, &geom)?;
        let signals = SourceSignals::random_phase(
            self.scenario.snapshots,
            self.scenario.amp_ratio,
            self.scenario.seed,
        )?;
        Ok(ScenarioSetup {
            scenario: Scenario::new(geom, electrical, signals, sigma2)?,
            physical,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_config_gives_defaults() {
        let cfg = load_config("").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.geometry.num_sensors, 10);
        assert_eq!(cfg.scenario.snapshots, 100);
        assert_eq!(cfg.geometry.d_meters, 0.0125);
        assert_eq!(cfg.geometry.f0_hertz, 1e7);
        assert_eq!(cfg.scenario.theta_ff_radians, PI / 3.0);
        assert_eq!(cfg.scenario.theta_nf_radians, PI / 3.1);
        assert_eq!(cfg.scenario.amp_ratio, 10.0);
    }

    #[test]
    fn comments_and_pi_expressions() {
        let cfg = load_config(
            "# header\n\n geometry.num_sensors = 12  # inline\nscenario.theta_nf_radians = -pi/4\nscenario.theta_ff_radians = 0.5*pi/3\n",
        )
        .unwrap();
        assert_eq!(cfg.geometry.num_sensors, 12);
        assert_eq!(cfg.scenario.theta_nf_radians, -PI / 4.0);
        assert_eq!(cfg.scenario.theta_ff_radians, 0.5 * PI / 3.0);
    }

    #[test]
    fn too_few_sensors_rejected() {
        let err = load_config("geometry.num_sensors = 2").unwrap_err();
        assert!(
            matches!(err, ConfigError::Invalid(ref m) if m.contains("L >= 3")),
            "{err}"
        );
    }

    #[test]
    fn errors_carry_context() {
        match load_config("geometry.num_sensors = 10\nbogus.key = 1").unwrap_err() {
            ConfigError::UnknownKey { line, key } => {
                assert_eq!((line, key.as_str()), (2, "bogus.key"))
            }
            other => panic!("{other}"),
        }
        match load_config("sweep.num_points = ten").unwrap_err() {
            ConfigError::BadValue { line, key, .. } => {
                assert_eq!((line, key.as_str()), (1, "sweep.num_points"))
            }
            other => panic!("{other}"),
        }
        assert!(matches!(
            load_config("no equals sign"),
            Err(ConfigError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_config("sweep.num_points = 3\nsweep.num_points = 4"),
            Err(ConfigError::DuplicateKey { line: 2, .. })
        ));
        assert!(matches!(
            load_config("scenario.range_mode = meters"),
            Err(ConfigError::Invalid(_))
        ));
        assert!(load_config("sweep.inv_sigma2_start = 1e17").is_err());
        assert!(load_config("sweep.num_points = 1").is_err());
        assert!(load_config("scenario.theta_nf_radians = pi/3").is_err());
        assert!(load_config("scenario.theta_ff_radians = pi/2").is_err());
    }

    #[test]
    fn explicit_range() {
        let cfg =
            load_config("scenario.range_mode = meters\nscenario.range_value = 0.003").unwrap();
        assert_eq!(cfg.scenario.range, RangeMode::Meters(0.003));
        let (r, _) = cfg.resolve_range().unwrap();
        assert_eq!(r, 0.003);
    }

    #[test]
    fn default_setup_warns_and_interpolates() {
        let cfg = ExperimentConfig::default();
        let setup = cfg.setup(1.0).unwrap();
        assert!(setup.warnings.iter().any(|w| w.contains("d/lambda")));
        assert!(setup.warnings.iter().any(|w| w.contains("empty")));
        let geom = cfg.array_geometry().unwrap();
        let (lo, hi) = fresnel_bounds(&geom);
        assert_eq!(setup.physical.range, lo + 0.5 * (hi - lo));
        assert!(setup.scenario.electrical.delta > 0.0);
    }

    #[test]
    fn default_round_trip() {
        let cfg = ExperimentConfig::default();
        assert_eq!(load_config(&cfg.to_text()).unwrap(), cfg);
    }

    proptest! {
        #[test]
        fn round_trip(
            l in 3usize..64,
            d in 1e-4f64..10.0,
            f0 in 1e3f64..1e10,
            tff in -1.5f64..1.5,
            tnf in -1.5f64..1.5,
            meters in any::<bool>(),
            rv in 1e-3f64..1.0,
            amp in 0.01f64..100.0,
            t in 1usize..500,
            seed in any::<u64>(),
            start in 1e-3f64..1e3,
            span in 1.0001f64..1e6,
            n in 2usize..500,
            log in any::<bool>(),
            dm in proptest::option::of(0.01f64..3.0),
        ) {
            prop_assume!(tff != tnf);
            let cfg = ExperimentConfig {
                geometry: GeometryConfig { num_sensors: l, d_meters: d, f0_hertz: f0 },
                scenario: ScenarioConfig {
                    theta_ff_radians: tff,
                    theta_nf_radians: tnf,
                    range: if meters { RangeMode::Meters(rv) } else { RangeMode::FresnelFraction(rv) },
                    amp_ratio: amp,
                    snapshots: t,
                    seed,
                },
                sweep: SweepConfig { inv_sigma2_start: start, inv_sigma2_stop: start * span, num_points: n, log_spacing: log },
                solver: SolverConfig { delta_max: dm, ..ExperimentConfig::default().solver },
            };
            prop_assert_eq!(load_config(&cfg.to_text()).unwrap(), cfg);
        }
    }
}
