//! Sectioned key=value configuration with flag overrides. Every tunable is
//! declared once in [`TUNABLES`]; the file parser, the flag parser and the
//! help text are all driven by that registry, so the file and flag surfaces
//! cannot drift apart.

use crate::controller::{DStabilitySpec, GainGrid, PidGains};
use crate::cdob::QFilterSpec;
use crate::path::{PresetGeometry, PresetKind};
use crate::sim::{DelayPlacement, GainsSource, Scenario, SimConfig, SpeedPolicy};
use crate::strategy::strategy_names;
use crate::vehicle::{SchedulingConfig, VehicleParams};
use std::collections::HashMap;
use std::path::PathBuf;

/// Value type of a tunable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Float,
    Int,
    Str,
    Bool,
}

/// One configurable knob: config-file key `section.key`, CLI flag `--flag`.
#[derive(Debug, Clone, Copy)]
pub struct Tunable {
    pub section: &'static str,
    pub key: &'static str,
    pub flag: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

macro_rules! tunable {
    ($sec:literal, $key:literal, $flag:literal, $kind:ident, $def:literal, $help:literal) => {
        Tunable {
            section: $sec,
            key: $key,
            flag: $flag,
            kind: Kind::$kind,
            default: $def,
            help: $help,
        }
    };
}

/// Registry of every tunable. Defaults are the compiled-in values used when
/// neither the config file nor a flag provides the key.
pub const TUNABLES: &[Tunable] = &[
    tunable!("vehicle", "cf", "cf", Float, "195000", "front cornering stiffness, N/rad"),
    tunable!("vehicle", "cr", "cr", Float, "50000", "rear cornering stiffness, N/rad"),
    tunable!("vehicle", "lf", "lf", Float, "1.3008", "CG to front axle, m"),
    tunable!("vehicle", "lr", "lr", Float, "1.5453", "CG to rear axle, m"),
    tunable!("vehicle", "mass", "mass", Float, "1997.6", "vehicle mass, kg"),
    tunable!("vehicle", "iz", "iz", Float, "3728", "yaw inertia, kg*m^2"),
    tunable!("scheduling", "preview-k", "preview-k", Float, "0.5", "preview distance constant, s"),
    tunable!("scheduling", "ls-min", "ls-min", Float, "1", "minimum preview distance, m"),
    tunable!("scheduling", "a-lat-max", "a-lat-max", Float, "4", "lateral acceleration cap, m/s^2"),
    tunable!("scheduling", "v-max", "v-max", Float, "20", "speed cap, m/s"),
    tunable!("path", "length", "path-length", Float, "100", "path extent along x, m"),
    tunable!("path", "lane-offset", "lane-offset", Float, "3.5", "lane-change offset, m"),
    tunable!("path", "single-span-start", "single-span-start", Float, "30", "single-lane transition start, m"),
    tunable!("path", "single-span-end", "single-span-end", Float, "60", "single-lane transition end, m"),
    tunable!("path", "double-up-start", "double-up-start", Float, "20", "double-lane outgoing start, m"),
    tunable!("path", "double-up-end", "double-up-end", Float, "45", "double-lane outgoing end, m"),
    tunable!("path", "double-down-start", "double-down-start", Float, "55", "double-lane return start, m"),
    tunable!("path", "double-down-end", "double-down-end", Float, "80", "double-lane return end, m"),
    tunable!("path", "avoid-peak", "avoid-peak", Float, "2", "avoidance bump peak, m"),
    tunable!("path", "avoid-span-start", "avoid-span-start", Float, "20", "avoidance bump start, m"),
    tunable!("path", "avoid-span-end", "avoid-span-end", Float, "50", "avoidance bump end, m"),
    tunable!("path", "waypoint-spacing", "waypoint-spacing", Float, "2.5", "coarse waypoint spacing, m"),
    tunable!("path", "dense-spacing", "dense-spacing", Float, "1", "dense waypoint spacing, m"),
    tunable!("path", "segments", "segments", Int, "5", "polynomial segments per path"),
    tunable!("path", "degree", "degree", Int, "5", "polynomial degree per segment"),
    tunable!("path", "arc-ds", "arc-ds", Float, "0.1", "arc-length table node spacing, m"),
    tunable!("qfilter", "wp", "wp", Float, "1000", "Q passband frequency, rad/s"),
    tunable!("qfilter", "ws", "ws", Float, "10000", "Q stopband frequency, rad/s"),
    tunable!("qfilter", "ap", "ap", Float, "3", "Q max passband attenuation, dB"),
    tunable!("qfilter", "as", "as", Float, "30", "Q min stopband attenuation, dB"),
    tunable!("dregion", "sigma", "sigma", Float, "1", "minimum pole decay rate, 1/s"),
    tunable!("dregion", "zeta-min", "zeta-min", Float, "0.7071", "minimum damping ratio"),
    tunable!("dregion", "r-max", "r-max", Float, "25", "maximum pole magnitude, rad/s"),
    tunable!("gains", "source", "gains-source", Str, "designed", "gain source: designed | explicit | schedule"),
    tunable!("gains", "kp", "kp", Float, "0.2", "explicit proportional gain, rad/m"),
    tunable!("gains", "ki", "ki", Float, "0.05", "explicit integral gain, rad/(m*s)"),
    tunable!("gains", "kd", "kd", Float, "0.05", "explicit derivative gain, rad*s/m"),
    tunable!("gains", "schedule-knots", "schedule-knots", Str, "5,10,15,20", "schedule speed knots, m/s, comma separated"),
    tunable!("grid", "kp-max", "grid-kp-max", Float, "1.0", "gain grid kp upper bound"),
    tunable!("grid", "ki-max", "grid-ki-max", Float, "0.5", "gain grid ki upper bound"),
    tunable!("grid", "kd-max", "grid-kd-max", Float, "0.5", "gain grid kd upper bound"),
    tunable!("grid", "kp-steps", "grid-kp-steps", Int, "81", "gain grid kp point count"),
    tunable!("grid", "ki-steps", "grid-ki-steps", Int, "41", "gain grid ki point count"),
    tunable!("grid", "kd-steps", "grid-kd-steps", Int, "41", "gain grid kd point count"),
    tunable!("scenario", "preset", "scenario", Str, "single-lane", "path preset: single-lane | double-lane | avoidance"),
    tunable!("scenario", "controller", "controller", Str, "pid-cdob-modified", "strategy: pid | pid-cdob-standard | pid-cdob-modified"),
    tunable!("scenario", "tau", "tau", Float, "0.1", "loop time delay, s"),
    tunable!("scenario", "delay-placement", "delay-placement", Str, "measurement", "where the delay acts: measurement | actuation"),
    tunable!("scenario", "speed-policy", "speed-policy", Str, "fixed", "speed policy: fixed | scheduled"),
    tunable!("scenario", "speed", "speed", Float, "10", "fixed vehicle speed, m/s"),
    tunable!("scenario", "saturation", "saturation", Float, "0.6", "steering saturation, rad"),
    tunable!("sim", "dt", "dt", Float, "0.001", "simulation step, s"),
    tunable!("sim", "duration", "duration", Float, "0", "run duration, s (0 = until path end)"),
    tunable!("sweep", "taus", "taus", Str, "0.01,0.05,0.1,0.3", "sweep delays, s, comma separated"),
    tunable!("sweep", "modes", "modes", Str, "pid,pid-cdob-modified", "sweep strategies, comma separated"),
    tunable!("run", "strict", "strict", Bool, "false", "exit 3 when the run diverges"),
    tunable!("output", "dir", "out", Str, "out", "output directory"),
];

/// Configuration parsing/validation errors; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: syntax error, expected 'key = value' or '[section]'")]
    Syntax { line: usize },
    #[error("line {line}: unknown key '{name}'")]
    UnknownKey { name: String, line: usize },
    #[error("line {line}: value '{value}' for '{key}' is not a valid {expected}")]
    TypeMismatch {
        key: String,
        value: String,
        expected: &'static str,
        line: usize,
    },
    #[error("flag --{flag}: value '{value}' is not a valid {expected}")]
    FlagTypeMismatch {
        flag: String,
        value: String,
        expected: &'static str,
    },
    #[error("unknown flag '--{0}'")]
    UnknownFlag(String),
    #[error("flag '--{0}' needs a value")]
    MissingValue(String),
    #[error("'{key}': '{value}' is not one of {allowed:?}")]
    BadChoice {
        key: String,
        value: String,
        allowed: Vec<String>,
    },
    #[error("gain schedule design failed: {0}")]
    Design(String),
    #[error("cannot read config file '{path}': {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn lookup(section: &str, key: &str) -> Option<&'static Tunable> {
    TUNABLES
        .iter()
        .find(|t| t.section == section && t.key == key)
}

pub fn lookup_flag(flag: &str) -> Option<&'static Tunable> {
    TUNABLES.iter().find(|t| t.flag == flag)
}

fn check_kind(kind: Kind, value: &str) -> Option<&'static str> {
    match kind {
        Kind::Float => value.parse::<f64>().err().map(|_| "number"),
        Kind::Int => value.parse::<usize>().err().map(|_| "integer"),
        Kind::Bool => match value {
            "true" | "false" => None,
            _ => Some("boolean (true|false)"),
        },
        Kind::Str => None,
    }
}

/// Parses `[section]` / `key = value` / `#` comment lines into a
/// `section.key -> value` map, rejecting unknown keys and bad types with
/// line-precise diagnostics.
pub fn parse_file(text: &str) -> Result<HashMap<String, String>, ConfigError> {
    let mut out = HashMap::new();
    let mut section = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        if stripped.starts_with('[') {
            if !stripped.ends_with(']') {
                return Err(ConfigError::Syntax { line });
            }
            section = stripped[1..stripped.len() - 1].trim().to_string();
            continue;
        }
        let Some((k, v)) = stripped.split_once('=') else {
            return Err(ConfigError::Syntax { line });
        };
        let (k, v) = (k.trim(), v.trim());
        let Some(t) = lookup(&section, k) else {
            return Err(ConfigError::UnknownKey {
                name: if section.is_empty() {
                    k.to_string()
                } else {
                    format!("{section}.{k}")
                },
                line,
            });
        };
        if let Some(expected) = check_kind(t.kind, v) {
            return Err(ConfigError::TypeMismatch {
                key: format!("{section}.{k}"),
                value: v.to_string(),
                expected,
                line,
            });
        }
        out.insert(format!("{}.{}", t.section, t.key), v.to_string());
    }
    Ok(out)
}

/// Fully resolved configuration: defaults, then file values, then flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    values: HashMap<String, String>,
}

impl RunConfig {
    /// Resolves the three layers. `flag_overrides` maps `section.key` to the
    /// already-type-checked flag value.
    pub fn resolve(
        file_values: HashMap<String, String>,
        flag_overrides: HashMap<String, String>,
    ) -> Self {
        let mut values: HashMap<String, String> = TUNABLES
            .iter()
            .map(|t| (format!("{}.{}", t.section, t.key), t.default.to_string()))
            .collect();
        values.extend(file_values);
        values.extend(flag_overrides);
        Self { values }
    }

    pub fn defaults() -> Self {
        Self::resolve(HashMap::new(), HashMap::new())
    }

    fn get(&self, key: &str) -> &str {
        self.values
            .get(key)
            .unwrap_or_else(|| panic!("unregistered key {key}"))
    }

    pub fn f64(&self, key: &str) -> f64 {
        self.get(key).parse().expect("type-checked earlier")
    }

    pub fn usize(&self, key: &str) -> usize {
        self.get(key).parse().expect("type-checked earlier")
    }

    pub fn str(&self, key: &str) -> &str {
        self.get(key)
    }

    pub fn bool(&self, key: &str) -> bool {
        self.get(key) == "true"
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, ConfigError> {
        let raw = self.get(key).trim();
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|v| {
                v.trim().parse::<f64>().map_err(|_| ConfigError::BadChoice {
                    key: key.to_string(),
                    value: v.trim().to_string(),
                    allowed: vec!["comma-separated numbers".into()],
                })
            })
            .collect()
    }

    pub fn vehicle_params(&self) -> VehicleParams {
        VehicleParams {
            cf: self.f64("vehicle.cf"),
            cr: self.f64("vehicle.cr"),
            lf: self.f64("vehicle.lf"),
            lr: self.f64("vehicle.lr"),
            mass: self.f64("vehicle.mass"),
            iz: self.f64("vehicle.iz"),
        }
    }

    pub fn scheduling(&self) -> SchedulingConfig {
        SchedulingConfig {
            k: self.f64("scheduling.preview-k"),
            ls_min: self.f64("scheduling.ls-min"),
            a_lat_max: self.f64("scheduling.a-lat-max"),
            v_max: self.f64("scheduling.v-max"),
        }
    }

    pub fn geometry(&self) -> PresetGeometry {
        PresetGeometry {
            length: self.f64("path.length"),
            lane_offset: self.f64("path.lane-offset"),
            single_span: (self.f64("path.single-span-start"), self.f64("path.single-span-end")),
            double_up: (self.f64("path.double-up-start"), self.f64("path.double-up-end")),
            double_down: (self.f64("path.double-down-start"), self.f64("path.double-down-end")),
            avoid_peak: self.f64("path.avoid-peak"),
            avoid_span: (self.f64("path.avoid-span-start"), self.f64("path.avoid-span-end")),
            waypoint_spacing: self.f64("path.waypoint-spacing"),
        }
    }

    pub fn qspec(&self) -> QFilterSpec {
        QFilterSpec {
            wp: self.f64("qfilter.wp"),
            ws: self.f64("qfilter.ws"),
            ap: self.f64("qfilter.ap"),
            as_: self.f64("qfilter.as"),
        }
    }

    pub fn dspec(&self) -> DStabilitySpec {
        DStabilitySpec {
            sigma: self.f64("dregion.sigma"),
            zeta_min: self.f64("dregion.zeta-min"),
            r_max: self.f64("dregion.r-max"),
        }
    }

    pub fn grid(&self) -> GainGrid {
        let lin = |hi: f64, n: usize| -> Vec<f64> {
            (0..n).map(|i| hi * i as f64 / (n - 1).max(1) as f64).collect()
        };
        GainGrid {
            kp: lin(self.f64("grid.kp-max"), self.usize("grid.kp-steps")),
            ki: lin(self.f64("grid.ki-max"), self.usize("grid.ki-steps")),
            kd: lin(self.f64("grid.kd-max"), self.usize("grid.kd-steps")),
        }
    }

    pub fn preset(&self) -> Result<PresetKind, ConfigError> {
        let v = self.str("scenario.preset");
        PresetKind::parse(v).ok_or_else(|| ConfigError::BadChoice {
            key: "scenario.preset".into(),
            value: v.into(),
            allowed: PresetKind::all().iter().map(|p| p.name().to_string()).collect(),
        })
    }

    pub fn controller(&self) -> Result<String, ConfigError> {
        let v = self.str("scenario.controller");
        if strategy_names().contains(&v) {
            Ok(v.to_string())
        } else {
            Err(ConfigError::BadChoice {
                key: "scenario.controller".into(),
                value: v.into(),
                allowed: strategy_names().iter().map(|s| s.to_string()).collect(),
            })
        }
    }

    pub fn delay_placement(&self) -> Result<DelayPlacement, ConfigError> {
        match self.str("scenario.delay-placement") {
            "measurement" => Ok(DelayPlacement::Measurement),
            "actuation" => Ok(DelayPlacement::Actuation),
            other => Err(ConfigError::BadChoice {
                key: "scenario.delay-placement".into(),
                value: other.into(),
                allowed: vec!["measurement".into(), "actuation".into()],
            }),
        }
    }

    pub fn speed_policy(&self) -> Result<SpeedPolicy, ConfigError> {
        match self.str("scenario.speed-policy") {
            "fixed" => Ok(SpeedPolicy::Fixed(self.f64("scenario.speed"))),
            "scheduled" => Ok(SpeedPolicy::CurvatureScheduled),
            other => Err(ConfigError::BadChoice {
                key: "scenario.speed-policy".into(),
                value: other.into(),
                allowed: vec!["fixed".into(), "scheduled".into()],
            }),
        }
    }

    pub fn gains_source(&self) -> Result<GainsSource, ConfigError> {
        match self.str("gains.source") {
            // "schedule" is resolved in scenario(): it needs the rest of the
            // scenario (vehicle, grid, region spec) to design the knots
            "designed" | "schedule" => Ok(GainsSource::Designed),
            "explicit" => Ok(GainsSource::Explicit(PidGains {
                kp: self.f64("gains.kp"),
                ki: self.f64("gains.ki"),
                kd: self.f64("gains.kd"),
            })),
            other => Err(ConfigError::BadChoice {
                key: "gains.source".into(),
                value: other.into(),
                allowed: vec!["designed".into(), "explicit".into(), "schedule".into()],
            }),
        }
    }

    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        let mut scn = self.scenario_base()?;
        if self.str("gains.source") == "schedule" {
            let knots = self.f64_list("gains.schedule-knots")?;
            let sched = crate::sim::design_schedule(&scn, &knots)
                .map_err(|e| ConfigError::Design(e.to_string()))?;
            scn.gains = GainsSource::Schedule(sched);
        }
        Ok(scn)
    }

    fn scenario_base(&self) -> Result<Scenario, ConfigError> {
        Ok(Scenario {
            preset: self.preset()?,
            geometry: self.geometry(),
            controller: self.controller()?,
            tau: self.f64("scenario.tau"),
            delay_placement: self.delay_placement()?,
            speed: self.speed_policy()?,
            gains: self.gains_source()?,
            saturation: self.f64("scenario.saturation"),
            params: self.vehicle_params(),
            sched: self.scheduling(),
            qspec: self.qspec(),
            dspec: self.dspec(),
            grid: self.grid(),
            dense_spacing: self.f64("path.dense-spacing"),
            n_segments: self.usize("path.segments"),
            degree: self.usize("path.degree"),
            arc_ds: self.f64("path.arc-ds"),
        })
    }

    pub fn sim_config(&self) -> SimConfig {
        let d = self.f64("sim.duration");
        SimConfig {
            dt: self.f64("sim.dt"),
            duration: if d > 0.0 { Some(d) } else { None },
            initial_state: Default::default(),
        }
    }

    pub fn out_dir(&self) -> PathBuf {
        PathBuf::from(self.str("output.dir"))
    }

    pub fn modes(&self) -> Result<Vec<String>, ConfigError> {
        let raw = self.str("sweep.modes").trim();
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|m| {
                let m = m.trim();
                if strategy_names().contains(&m) {
                    Ok(m.to_string())
                } else {
                    Err(ConfigError::BadChoice {
                        key: "sweep.modes".into(),
                        value: m.into(),
                        allowed: strategy_names().iter().map(|s| s.to_string()).collect(),
                    })
                }
            })
            .collect()
    }
}

/// Parses `--flag value` pairs against the registry. Bool flags may omit the
/// value. Returns `section.key -> value` overrides.
pub fn parse_flags(args: &[String]) -> Result<HashMap<String, String>, ConfigError> {
    let mut out = HashMap::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        let Some(name) = arg.strip_prefix("--") else {
            return Err(ConfigError::UnknownFlag(arg.clone()));
        };
        let Some(t) = lookup_flag(name) else {
            return Err(ConfigError::UnknownFlag(name.to_string()));
        };
        let value = if t.kind == Kind::Bool {
            match args.get(i + 1).map(|s| s.as_str()) {
                Some("true") | Some("false") => {
                    i += 1;
                    args[i].clone()
                }
                _ => "true".to_string(),
            }
        } else {
            let Some(v) = args.get(i + 1) else {
                return Err(ConfigError::MissingValue(name.to_string()));
            };
            i += 1;
            v.clone()
        };
        if let Some(expected) = check_kind(t.kind, &value) {
            return Err(ConfigError::FlagTypeMismatch {
                flag: name.to_string(),
                value,
                expected,
            });
        }
        out.insert(format!("{}.{}", t.section, t.key), value);
        i += 1;
    }
    Ok(out)
}

/// Help text enumerating every flag together with its config-file key.
pub fn help_text() -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "options (flag / config key / default):");
    for t in TUNABLES {
        let _ = writeln!(
            out,
            "  --{:<20} {}.{:<22} [{}]  {}",
            t.flag,
            t.section,
            t.key,
            t.default,
            t.help
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve_and_parse() {
        let cfg = RunConfig::defaults();
        assert_eq!(cfg.f64("vehicle.cf"), 195_000.0);
        assert_eq!(cfg.usize("grid.kp-steps"), 81);
        assert!(!cfg.bool("run.strict"));
        let scn = cfg.scenario().unwrap();
        assert_eq!(scn.controller, "pid-cdob-modified");
        assert_eq!(scn.tau, 0.1);
        // every registered default must parse as its declared kind
        for t in TUNABLES {
            assert!(
                check_kind(t.kind, t.default).is_none(),
                "default of {}.{} fails its own type",
                t.section,
                t.key
            );
        }
    }

    #[test]
    fn registry_is_consistent() {
        use std::collections::HashSet;
        let mut flags = HashSet::new();
        let mut keys = HashSet::new();
        for t in TUNABLES {
            assert!(flags.insert(t.flag), "duplicate flag {}", t.flag);
            assert!(
                keys.insert((t.section, t.key)),
                "duplicate key {}.{}",
                t.section,
                t.key
            );
        }
        // help enumerates both surfaces
        let help = help_text();
        for t in TUNABLES {
            assert!(help.contains(&format!("--{}", t.flag)));
            assert!(help.contains(&format!("{}.{}", t.section, t.key)));
        }
    }

    #[test]
    fn file_parsing_and_precedence() {
        let text = "# comment\n[scenario]\ntau = 0.1\ncontroller = pid\n";
        let file = parse_file(text).unwrap();
        let flags = parse_flags(&["--tau".into(), "0.3".into()].to_vec()).unwrap();
        let cfg = RunConfig::resolve(file, flags);
        assert_eq!(cfg.f64("scenario.tau"), 0.3); // flag wins
        assert_eq!(cfg.str("scenario.controller"), "pid");
    }

    #[test]
    fn type_mismatch_names_the_line() {
        let err = parse_file("[scenario]\ntau = fast\n").unwrap_err();
        match err {
            ConfigError::TypeMismatch { line, key, .. } => {
                assert_eq!(line, 2);
                assert_eq!(key, "scenario.tau");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let err = parse_file("[scenario]\nwarp = 9\n").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownKey { line: 2, .. }));
        let err = parse_flags(&["--warp".into(), "9".into()].to_vec()).unwrap_err();
        assert!(matches!(err, ConfigError::UnknownFlag(_)));
    }

    #[test]
    fn list_parsing() {
        let cfg = RunConfig::defaults();
        assert_eq!(cfg.f64_list("sweep.taus").unwrap(), vec![0.01, 0.05, 0.1, 0.3]);
        assert_eq!(cfg.modes().unwrap(), vec!["pid", "pid-cdob-modified"]);
    }

    #[test]
    fn bad_choices_rejected() {
        let cfg = RunConfig::resolve(
            parse_file("[scenario]\ncontroller = mpc\n").unwrap(),
            HashMap::new(),
        );
        assert!(matches!(cfg.controller(), Err(ConfigError::BadChoice { .. })));
        let cfg = RunConfig::resolve(
            parse_file("[scenario]\npreset = oval\n").unwrap(),
            HashMap::new(),
        );
        assert!(matches!(cfg.preset(), Err(ConfigError::BadChoice { .. })));
    }

    #[test]
    fn bool_flag_without_value() {
        let flags = parse_flags(&["--strict".into()].to_vec()).unwrap();
        assert_eq!(flags.get("run.strict").unwrap(), "true");
        let flags = parse_flags(&["--strict".into(), "false".into()].to_vec()).unwrap();
        assert_eq!(flags.get("run.strict").unwrap(), "false");
    }
}
