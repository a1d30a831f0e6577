//! Run configuration: defaults, then `ACTIONVAR_TOL`, then a `key = value`
//! file, then command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use actionvar_core::OscillatorParams;
use clap::ValueEnum;

use crate::error::{CliError, Result};

pub const TOL_ENV: &str = "ACTIONVAR_TOL";

pub const DEFAULT_EPSILONS: [f64; 3] = [0.01, 0.05, 0.1];
pub const DEFAULT_N_MAX: usize = 10;
pub const DEFAULT_DELTA: f64 = 1e-3;
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// m, k, ħ and c. When a level ratio is given, c is derived from it.
    pub params: OscillatorParams,
    pub epsilon_list: Vec<f64>,
    /// ħω₀/mc²; zero selects the non-relativistic limit.
    pub level_ratio: f64,
    pub n_max: usize,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    /// Quartic strength δ for the anharmonic spectrum.
    pub delta: f64,
    /// Relative tolerance for formula-vs-oracle flags.
    pub tolerance: f64,
    pub show_scheme: bool,
}

/// Settings collected from the file and the flags before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub units: Option<String>,
    pub epsilons: Option<Vec<f64>>,
    pub ratio: Option<f64>,
    pub n_max: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub delta: Option<f64>,
    pub tolerance: Option<f64>,
    pub show_scheme: Option<bool>,
}

impl Overrides {
    /// Fields set in `other` replace those in `self`.
    pub fn merge(mut self, other: Overrides) -> Overrides {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(units, epsilons, ratio, n_max, output_path, format, delta, tolerance, show_scheme);
        self
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::ConfigInvalid(msg.into())
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| invalid(format!("{key}: '{v}' is not a number")))
}

pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_f64(key, s)).collect()
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_config_text(text: &str) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| invalid(format!("line {}: expected key = value", i + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "units" => o.units = Some(value.to_string()),
            "m" | "k" | "hbar" | "c" => {
                let mut units = o.units.take().unwrap_or_default();
                if !units.is_empty() {
                    units.push(',');
                }
                units.push_str(&format!("{key}={value}"));
                o.units = Some(units);
            }
            "eps" | "epsilon" => o.epsilons = Some(parse_list(key, value)?),
            "ratio" => o.ratio = Some(parse_f64(key, value)?),
            "nmax" | "n_max" => {
                o.n_max = Some(value.parse().map_err(|_| invalid(format!("{key}: '{value}' is not a count")))?)
            }
            "csv" | "output" => o.output_path = Some(PathBuf::from(value)),
            "format" => {
                o.format = Some(OutputFormat::from_str(value, true).map_err(|_| invalid(format!("format: '{value}'")))?)
            }
            "delta" => o.delta = Some(parse_f64(key, value)?),
            "tol" | "tolerance" => o.tolerance = Some(parse_f64(key, value)?),
            "show_scheme" | "show-scheme" => {
                o.show_scheme = Some(value.parse().map_err(|_| invalid(format!("{key}: '{value}' is not a boolean")))?)
            }
            other => return Err(invalid(format!("line {}: unknown key '{other}'", i + 1))),
        }
    }
    Ok(o)
}

pub fn read_config_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::IoFailure {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
}

/// `m=1,k=1,hbar=1,c=10`; omitted entries keep their defaults.
pub fn parse_units(spec: &str) -> Result<OscillatorParams> {
    let (mut m, mut k, mut hbar, mut c) = (1.0, 1.0, 1.0, 10.0);
    let mut seen = BTreeMap::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| invalid(format!("units: expected name=value, got '{part}'")))?;
        let key = key.trim();
        let value = parse_f64(key, value)?;
        if seen.insert(key.to_string(), value).is_some() {
            return Err(invalid(format!("units: '{key}' given twice")));
        }
        match key {
            "m" => m = value,
            "k" => k = value,
            "hbar" => hbar = value,
            "c" => c = value,
            other => return Err(invalid(format!("units: unknown name '{other}'"))),
        }
    }
    OscillatorParams::new(m, k, c, hbar).map_err(|e| invalid(format!("units: {e}")))
}

/// Tolerance from `ACTIONVAR_TOL`, if set.
pub fn env_tolerance() -> Result<Option<f64>> {
    match std::env::var(TOL_ENV) {
        Ok(v) => parse_f64(TOL_ENV, &v).map(Some),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(invalid(format!("{TOL_ENV}: {e}"))),
    }
}

impl RunConfig {
    pub fn from_overrides(o: Overrides) -> Result<Self> {
        let base = parse_units(o.units.as_deref().unwrap_or(""))?;
        let epsilon_list = o.epsilons.unwrap_or_else(|| DEFAULT_EPSILONS.to_vec());
        if epsilon_list.is_empty() {
            return Err(invalid("eps: the list is empty"));
        }
        for &e in &epsilon_list {
            if !(0.0..0.5).contains(&e) {
                return Err(invalid(format!("eps: {e} is outside [0, 1/2)")));
            }
        }
        let (params, level_ratio) = match o.ratio {
            None => (base, base.level_ratio()),
            Some(r) if !(0.0..0.5).contains(&r) => return Err(invalid(format!("ratio: {r} is outside [0, 1/2)"))),
            Some(r) if r == 0.0 => (base, 0.0),
            Some(r) => {
                if base.hbar() <= 0.0 {
                    return Err(invalid("ratio: a level ratio needs hbar > 0"));
                }
                let c = (base.quantum_energy() / (base.mass() * r)).sqrt();
                let params = base.with_light_speed(c).map_err(|e| invalid(format!("ratio: {e}")))?;
                (params, r)
            }
        };
        let tolerance = o.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance > 0.0) {
            return Err(invalid(format!("tolerance: {tolerance} must be positive")));
        }
        let delta = o.delta.unwrap_or(DEFAULT_DELTA);
        if !delta.is_finite() {
            return Err(invalid("delta: not finite"));
        }
        Ok(Self {
            params,
            epsilon_list,
            level_ratio,
            n_max: o.n_max.unwrap_or(DEFAULT_N_MAX),
            output_path: o.output_path,
            format: o.format.unwrap_or(OutputFormat::Table),
            delta,
            tolerance,
            show_scheme: o.show_scheme.unwrap_or(false),
        })
    }

    /// Parameters for a relativistic computation, or `None` at ratio zero.
    pub fn relativistic(&self) -> Option<OscillatorParams> {
        (self.level_ratio > 0.0).then_some(self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_config_text("# sample\nm = 2\nc = 5\neps = 0.01, 0.02\nnmax = 4\n").unwrap();
        let flags = Overrides {
            n_max: Some(7),
            ..Default::default()
        };
        let cfg = RunConfig::from_overrides(file.merge(flags)).unwrap();
        assert_eq!(cfg.params.mass(), 2.0);
        assert_eq!(cfg.params.light_speed(), 5.0);
        assert_eq!(cfg.epsilon_list, vec![0.01, 0.02]);
        assert_eq!(cfg.n_max, 7);
    }

    #[test]
    fn ratio_sets_light_speed() {
        let o = Overrides {
            ratio: Some(0.01),
            ..Default::default()
        };
        let cfg = RunConfig::from_overrides(o).unwrap();
        assert!((cfg.params.level_ratio() - 0.01).abs() < 1e-15);
        assert!((cfg.params.light_speed() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn zero_ratio_is_non_relativistic() {
        let o = Overrides {
            ratio: Some(0.0),
            ..Default::default()
        };
        assert!(RunConfig::from_overrides(o).unwrap().relativistic().is_none());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config_text("eps 0.1").is_err());
        assert!(parse_config_text("colour = red").is_err());
        assert!(parse_units("m=1,q=2").is_err());
        assert!(parse_units("m=-1").is_err());
        let o = Overrides {
            epsilons: Some(vec![0.6]),
            ..Default::default()
        };
        assert!(RunConfig::from_overrides(o).is_err());
    }

    #[test]
    fn units_string() {
        let p = parse_units("m=1,k=4,hbar=0.5,c=10").unwrap();
        assert_eq!(p.omega0(), 2.0);
        assert_eq!(p.quantum_energy(), 1.0);
    }
}
