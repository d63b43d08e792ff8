//! The JSON run configuration and its validator.
//!
//! ```json
//! {
//!   "scenarios": [ { "scenario": "magnetic_ab", "shield": "ideal" } ],
//!   "quadrature": { "relative_tolerance": 1e-9 },
//!   "tolerances": { "relative": 1e-6 },
//!   "output": { "json": "report.json", "csv": "phases.csv" }
//! }
//! ```
//!
//! Every key except `scenarios` and `scenario` is optional. Validation walks
//! the whole document and reports every offending field, not just the first.

use std::fmt;

use abphase_core::phase::QuadratureConfig;
use abphase_core::scenarios::presets::{NEUTRON_MOMENT, NIOBIUM_TC};
use abphase_core::scenarios::{Arm, SymmetryClaim, Tolerances};
use abphase_core::sources::ShieldMode;
use abphase_core::PhaseError;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SEED_ENV: &str = "ABPHASE_SEED";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub scenarios: Vec<ScenarioConfig>,
    pub quadrature: QuadratureConfig,
    pub tolerances: Tolerances,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub json: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum ScenarioConfig {
    ElectrostaticAb(ElectrostaticConfig),
    NeutronScalar(NeutronConfig),
    MagneticAb(MagneticConfig),
    ShieldPathIndependence(ShieldPathConfig),
    Reciprocity(ReciprocityConfig),
}

impl ScenarioConfig {
    pub const KINDS: [&'static str; 5] = [
        "electrostatic_ab",
        "neutron_scalar",
        "magnetic_ab",
        "shield_path_independence",
        "reciprocity",
    ];

    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioConfig::ElectrostaticAb(_) => Self::KINDS[0],
            ScenarioConfig::NeutronScalar(_) => Self::KINDS[1],
            ScenarioConfig::MagneticAb(_) => Self::KINDS[2],
            ScenarioConfig::ShieldPathIndependence(_) => Self::KINDS[3],
            ScenarioConfig::Reciprocity(_) => Self::KINDS[4],
        }
    }
}

/// Arm A sits at `volts_a` and arm B at `volts_b` between linear ramps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ElectrostaticConfig {
    pub volts_a: f64,
    pub volts_b: f64,
    pub duration: f64,
    pub samples: usize,
}

impl Default for ElectrostaticConfig {
    fn default() -> Self {
        Self {
            volts_a: 1e-3,
            volts_b: 0.0,
            duration: 2e-9,
            samples: 101,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeutronConfig {
    pub radius: f64,
    pub turns_per_meter: f64,
    pub current: f64,
    pub mu: f64,
    /// Defaults to the dwell that gives one radian.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dwell: Option<f64>,
    pub arm: Arm,
    pub segments_per_turn: usize,
    pub truncation_radii: f64,
}

impl Default for NeutronConfig {
    fn default() -> Self {
        Self {
            radius: 5e-3,
            turns_per_meter: 2000.0,
            current: 1.0,
            mu: NEUTRON_MOMENT,
            dwell: None,
            arm: Arm::Through,
            segments_per_turn: 64,
            truncation_radii: 100.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagneticConfig {
    pub radius: f64,
    pub turns_per_meter: f64,
    /// Enclosed flux, Wb. Defaults to h/(2e).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flux: Option<f64>,
    /// Defaults to 3 × radius.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_radius: Option<f64>,
    pub loop_segments: usize,
    /// Transit time of the equivalent loop current, s.
    pub duration: f64,
    pub shield: ShieldMode,
    /// Defaults to 2 × radius.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shield_radius: Option<f64>,
    pub shield_segments: usize,
    pub critical_temperature: f64,
    /// Overrides the claimed total phase.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
}

impl Default for MagneticConfig {
    fn default() -> Self {
        Self {
            radius: 1e-6,
            turns_per_meter: 1e5,
            flux: None,
            loop_radius: None,
            loop_segments: 32,
            duration: 1e-12,
            shield: ShieldMode::Off,
            shield_radius: None,
            shield_segments: 48,
            critical_temperature: NIOBIUM_TC,
            expected: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShieldPathConfig {
    /// Offset of the shield loop from the symmetry point, m.
    pub loop_offset: [f64; 3],
    pub claim: SymmetryClaim,
}

impl Default for ShieldPathConfig {
    fn default() -> Self {
        Self {
            loop_offset: [0.0; 3],
            claim: SymmetryClaim::Asserted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReciprocityConfig {
    pub count: usize,
    /// Defaults to `ABPHASE_SEED`, or 0.
    pub seed: u64,
}

impl Config {
    /// The built-in reproduction suite.
    pub fn reproduction_suite() -> Self {
        Self {
            scenarios: vec![
                ScenarioConfig::ElectrostaticAb(ElectrostaticConfig::default()),
                ScenarioConfig::NeutronScalar(NeutronConfig::default()),
                ScenarioConfig::MagneticAb(MagneticConfig::default()),
                ScenarioConfig::MagneticAb(MagneticConfig {
                    shield: ShieldMode::Ideal,
                    ..MagneticConfig::default()
                }),
                ScenarioConfig::ShieldPathIndependence(ShieldPathConfig::default()),
            ],
            quadrature: QuadratureConfig::default(),
            tolerances: Tolerances::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Reads `ABPHASE_SEED`; unset means 0.
pub fn seed_from_env() -> Result<u64, ConfigError> {
    match std::env::var(SEED_ENV) {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| {
            ConfigError::Invalid(vec![ValidationError {
                path: SEED_ENV.into(),
                message: format!("expected a non-negative integer, got {s:?}"),
            }])
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationError {
    /// Dotted location of the offending field, e.g. `scenarios[0].radius`.
    pub path: String,
    pub message: String,
}

impl ValidationError {
    /// The last component of the path.
    pub fn field(&self) -> &str {
        let tail = self.path.rsplit('.').next().unwrap_or(&self.path);
        tail.split('[').next().unwrap_or(tail)
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{} invalid field(s):\n{}", .0.len(), list(.0))]
    Invalid(Vec<ValidationError>),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn list(errors: &[ValidationError]) -> String {
    errors.iter().map(|e| format!("  {e}")).collect::<Vec<_>>().join("\n")
}

impl ConfigError {
    pub fn validation_errors(&self) -> &[ValidationError] {
        match self {
            ConfigError::Invalid(v) => v,
            _ => &[],
        }
    }
}

pub fn parse_config(text: &[u8]) -> Result<Config, ConfigError> {
    parse_config_with_seed(text, seed_from_env()?)
}

/// As [`parse_config`], with the default reciprocity seed given explicitly.
pub fn parse_config_with_seed(text: &[u8], default_seed: u64) -> Result<Config, ConfigError> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let (line, column) = position_of(text, e.valid_up_to());
        ConfigError::Parse {
            line,
            column,
            message: "invalid UTF-8".into(),
        }
    })?;
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut errors = Vec::new();
    let config = validate(&value, default_seed, &mut errors);
    match config {
        Some(c) if errors.is_empty() => Ok(c),
        _ => Err(ConfigError::Invalid(errors)),
    }
}

fn position_of(bytes: &[u8], offset: usize) -> (usize, usize) {
    let before = &bytes[..offset];
    let line = before.iter().filter(|b| **b == b'\n').count() + 1;
    let column = offset - before.iter().rposition(|b| *b == b'\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

/// Closest key by edit distance, if it is plausibly a typo.
pub fn suggest<'a>(key: &str, known: &[&'a str]) -> Option<&'a str> {
    known
        .iter()
        .map(|k| (strsim::levenshtein(key, k), *k))
        .filter(|(d, k)| *d <= 3.max(k.len() / 3))
        .min_by_key(|(d, _)| *d)
        .map(|(_, k)| k)
}

fn validate(root: &Value, default_seed: u64, errors: &mut Vec<ValidationError>) -> Option<Config> {
    let mut top = Obj::open(root, "", errors)?;
    let scenarios = match top.take("scenarios") {
        None => {
            top.error("scenarios", "required".into());
            None
        }
        Some(Value::Array(items)) if items.is_empty() => {
            top.error("scenarios", "must list at least one scenario".into());
            None
        }
        Some(Value::Array(items)) => {
            let parsed: Vec<_> = items
                .iter()
                .enumerate()
                .map(|(i, v)| scenario(v, &format!("scenarios[{i}]"), default_seed, top.errors))
                .collect();
            parsed.into_iter().collect::<Option<Vec<_>>>()
        }
        Some(_) => {
            top.error("scenarios", "expected an array".into());
            None
        }
    };
    let quadrature = match top.take("quadrature") {
        Some(v) => quadrature(v, top.errors),
        None => Some(QuadratureConfig::default()),
    };
    let tolerances = match top.take("tolerances") {
        Some(v) => tolerances(v, top.errors),
        None => Some(Tolerances::default()),
    };
    let output = match top.take("output") {
        Some(v) => output(v, top.errors),
        None => Some(OutputConfig::default()),
    };
    top.finish(&["scenarios", "quadrature", "tolerances", "output"]);
    Some(Config {
        scenarios: scenarios?,
        quadrature: quadrature?,
        tolerances: tolerances?,
        output: output?,
    })
}

fn scenario(v: &Value, path: &str, default_seed: u64, errors: &mut Vec<ValidationError>) -> Option<ScenarioConfig> {
    let mut o = Obj::open(v, path, errors)?;
    let kind = match o.take("scenario") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => {
            o.error("scenario", "expected a string".into());
            return None;
        }
        None => {
            o.error(
                "scenario",
                format!("required; one of {}", ScenarioConfig::KINDS.join(", ")),
            );
            return None;
        }
    };
    let parsed = match kind.as_str() {
        "electrostatic_ab" => {
            let d = ElectrostaticConfig::default();
            let c = ElectrostaticConfig {
                volts_a: o.finite("volts_a", d.volts_a),
                volts_b: o.finite("volts_b", d.volts_b),
                duration: o.positive("duration", d.duration),
                samples: o.count("samples", d.samples, 2),
            };
            o.finish(&["scenario", "volts_a", "volts_b", "duration", "samples"]);
            ScenarioConfig::ElectrostaticAb(c)
        }
        "neutron_scalar" => {
            let d = NeutronConfig::default();
            let c = NeutronConfig {
                radius: o.positive("radius", d.radius),
                turns_per_meter: o.positive("turns_per_meter", d.turns_per_meter),
                current: o.finite("current", d.current),
                mu: o.finite("mu", d.mu),
                dwell: o.optional_positive("dwell"),
                arm: o.choice("arm", d.arm, &[("through", Arm::Through), ("outside", Arm::Outside)]),
                segments_per_turn: o.count("segments_per_turn", d.segments_per_turn, 16),
                truncation_radii: o.positive("truncation_radii", d.truncation_radii),
            };
            o.finish(&[
                "scenario",
                "radius",
                "turns_per_meter",
                "current",
                "mu",
                "dwell",
                "arm",
                "segments_per_turn",
                "truncation_radii",
            ]);
            ScenarioConfig::NeutronScalar(c)
        }
        "magnetic_ab" => {
            let d = MagneticConfig::default();
            let c = MagneticConfig {
                radius: o.positive("radius", d.radius),
                turns_per_meter: o.positive("turns_per_meter", d.turns_per_meter),
                flux: o.optional_finite("flux"),
                loop_radius: o.optional_positive("loop_radius"),
                loop_segments: o.count("loop_segments", d.loop_segments, 3),
                duration: o.positive("duration", d.duration),
                shield: o.choice(
                    "shield",
                    d.shield,
                    &[("off", ShieldMode::Off), ("ideal", ShieldMode::Ideal)],
                ),
                shield_radius: o.optional_positive("shield_radius"),
                shield_segments: o.count("shield_segments", d.shield_segments, 3),
                critical_temperature: o.positive("critical_temperature", d.critical_temperature),
                expected: o.optional_finite("expected"),
            };
            o.finish(&[
                "scenario",
                "radius",
                "turns_per_meter",
                "flux",
                "loop_radius",
                "loop_segments",
                "duration",
                "shield",
                "shield_radius",
                "shield_segments",
                "critical_temperature",
                "expected",
            ]);
            ScenarioConfig::MagneticAb(c)
        }
        "shield_path_independence" => {
            let d = ShieldPathConfig::default();
            let c = ShieldPathConfig {
                loop_offset: o.vec3("loop_offset", d.loop_offset),
                claim: o.choice(
                    "claim",
                    d.claim,
                    &[("asserted", SymmetryClaim::Asserted), ("probe", SymmetryClaim::Probe)],
                ),
            };
            o.finish(&["scenario", "loop_offset", "claim"]);
            ScenarioConfig::ShieldPathIndependence(c)
        }
        "reciprocity" => {
            let c = ReciprocityConfig {
                count: o.count("count", 100, 1),
                seed: o.unsigned("seed", default_seed),
            };
            o.finish(&["scenario", "count", "seed"]);
            ScenarioConfig::Reciprocity(c)
        }
        other => {
            let hint = suggest(other, &ScenarioConfig::KINDS)
                .map(|k| format!("; did you mean {k:?}?"))
                .unwrap_or_else(|| format!("; expected one of {}", ScenarioConfig::KINDS.join(", ")));
            o.error("scenario", format!("unknown scenario {other:?}{hint}"));
            return None;
        }
    };
    o.ok().then_some(parsed)
}

fn quadrature(v: &Value, errors: &mut Vec<ValidationError>) -> Option<QuadratureConfig> {
    let mut o = Obj::open(v, "quadrature", errors)?;
    let d = QuadratureConfig::default();
    let c = QuadratureConfig {
        relative_tolerance: o.positive("relative_tolerance", d.relative_tolerance),
        max_subdivisions: o.count("max_subdivisions", d.max_subdivisions, 1),
        gauss_order: o.count("gauss_order", d.gauss_order, 1),
        singularity_guard: o.positive("singularity_guard", d.singularity_guard),
    };
    o.finish(&[
        "relative_tolerance",
        "max_subdivisions",
        "gauss_order",
        "singularity_guard",
    ]);
    if o.ok() {
        match c.validate() {
            Ok(()) => {}
            Err(PhaseError::InvalidParameter { name, reason }) => o.error(name, reason),
            Err(e) => o.error("", e.to_string()),
        }
    }
    o.ok().then_some(c)
}

fn tolerances(v: &Value, errors: &mut Vec<ValidationError>) -> Option<Tolerances> {
    let mut o = Obj::open(v, "tolerances", errors)?;
    let d = Tolerances::default();
    let c = Tolerances {
        zero_absolute: o.non_negative("zero_absolute", d.zero_absolute),
        relative: o.non_negative("relative", d.relative),
        discretized_relative: o.non_negative("discretized_relative", d.discretized_relative),
        direction_relative: o.non_negative("direction_relative", d.direction_relative),
        path_relative: o.non_negative("path_relative", d.path_relative),
    };
    o.finish(&[
        "zero_absolute",
        "relative",
        "discretized_relative",
        "direction_relative",
        "path_relative",
    ]);
    o.ok().then_some(c)
}

fn output(v: &Value, errors: &mut Vec<ValidationError>) -> Option<OutputConfig> {
    let mut o = Obj::open(v, "output", errors)?;
    let c = OutputConfig {
        json: o.path("json"),
        csv: o.path("csv"),
    };
    o.finish(&["json", "csv"]);
    o.ok().then_some(c)
}

/// Cursor over one JSON object that records which keys were read.
struct Obj<'a, 'e> {
    map: &'a Map<String, Value>,
    path: String,
    seen: Vec<&'a str>,
    errors: &'e mut Vec<ValidationError>,
    start: usize,
}

impl<'a, 'e> Obj<'a, 'e> {
    fn open(v: &'a Value, path: &str, errors: &'e mut Vec<ValidationError>) -> Option<Self> {
        match v {
            Value::Object(map) => Some(Self {
                map,
                path: path.to_string(),
                seen: Vec::new(),
                start: errors.len(),
                errors,
            }),
            _ => {
                errors.push(ValidationError {
                    path: if path.is_empty() { "<root>".into() } else { path.into() },
                    message: "expected an object".into(),
                });
                None
            }
        }
    }

    fn ok(&self) -> bool {
        self.errors.len() == self.start
    }

    fn had(&self, key: &str) -> bool {
        self.map.contains_key(key)
    }

    fn field_path(&self, key: &str) -> String {
        match (self.path.is_empty(), key.is_empty()) {
            (true, _) => key.to_string(),
            (false, true) => self.path.clone(),
            (false, false) => format!("{}.{key}", self.path),
        }
    }

    fn error(&mut self, key: &str, message: String) {
        let path = self.field_path(key);
        self.errors.push(ValidationError { path, message });
    }

    fn take(&mut self, key: &'a str) -> Option<&'a Value> {
        self.seen.push(key);
        self.map.get(key)
    }

    fn number(&mut self, key: &'a str) -> Option<f64> {
        match self.take(key)? {
            Value::Number(n) => n.as_f64(),
            _ => {
                self.error(key, "expected a number".into());
                None
            }
        }
    }

    fn checked(&mut self, key: &'a str, default: f64, ok: fn(f64) -> bool, rule: &str) -> f64 {
        match self.number(key) {
            Some(x) if ok(x) => x,
            Some(x) => {
                self.error(key, format!("must be {rule}, got {x}"));
                default
            }
            None => default,
        }
    }

    fn finite(&mut self, key: &'a str, default: f64) -> f64 {
        self.checked(key, default, f64::is_finite, "finite")
    }

    fn positive(&mut self, key: &'a str, default: f64) -> f64 {
        self.checked(key, default, |x| x.is_finite() && x > 0.0, "positive")
    }

    fn non_negative(&mut self, key: &'a str, default: f64) -> f64 {
        self.checked(key, default, |x| x.is_finite() && x >= 0.0, "non-negative")
    }

    fn optional_positive(&mut self, key: &'a str) -> Option<f64> {
        self.had(key).then(|| self.positive(key, 1.0))
    }

    fn optional_finite(&mut self, key: &'a str) -> Option<f64> {
        self.had(key).then(|| self.finite(key, 0.0))
    }

    fn unsigned(&mut self, key: &'a str, default: u64) -> u64 {
        match self.take(key) {
            None => default,
            Some(v) => v.as_u64().unwrap_or_else(|| {
                self.error(key, "expected a non-negative integer".into());
                default
            }),
        }
    }

    fn count(&mut self, key: &'a str, default: usize, min: usize) -> usize {
        match self.take(key) {
            None => default,
            Some(v) => match v.as_u64().and_then(|n| usize::try_from(n).ok()) {
                Some(n) if n >= min => n,
                Some(n) => {
                    self.error(key, format!("must be at least {min}, got {n}"));
                    default
                }
                None => {
                    self.error(key, "expected a non-negative integer".into());
                    default
                }
            },
        }
    }

    fn choice<T: Copy>(&mut self, key: &'a str, default: T, options: &[(&'static str, T)]) -> T {
        let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
        match self.take(key) {
            None => default,
            Some(Value::String(s)) => match options.iter().find(|(n, _)| n == s) {
                Some((_, v)) => *v,
                None => {
                    self.error(
                        key,
                        format!("unknown value {s:?}; expected one of {}", names.join(", ")),
                    );
                    default
                }
            },
            Some(_) => {
                self.error(key, format!("expected one of {}", names.join(", ")));
                default
            }
        }
    }

    fn vec3(&mut self, key: &'a str, default: [f64; 3]) -> [f64; 3] {
        match self.take(key) {
            None => default,
            Some(Value::Array(a)) if a.len() == 3 => {
                let xs: Vec<Option<f64>> = a.iter().map(|v| v.as_f64().filter(|x| x.is_finite())).collect();
                match xs.as_slice() {
                    [Some(x), Some(y), Some(z)] => [*x, *y, *z],
                    _ => {
                        self.error(key, "components must be finite numbers".into());
                        default
                    }
                }
            }
            Some(_) => {
                self.error(key, "expected an array of 3 numbers".into());
                default
            }
        }
    }

    fn path(&mut self, key: &'a str) -> Option<String> {
        match self.take(key)? {
            Value::String(s) if !s.is_empty() => Some(s.clone()),
            _ => {
                self.error(key, "expected a non-empty path string".into());
                None
            }
        }
    }

    /// Reports every key that was not read, with the nearest known key.
    fn finish(&mut self, known: &[&str]) {
        let unknown: Vec<&String> = self.map.keys().filter(|k| !self.seen.contains(&k.as_str())).collect();
        for key in unknown {
            let hint = suggest(key, known)
                .map(|k| format!("; did you mean {k:?}?"))
                .unwrap_or_default();
            self.error(key, format!("unknown key {key:?}{hint}"));
        }
    }
}
