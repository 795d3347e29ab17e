//! Scan configuration: a flat `key=value` file merged under command-line
//! flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use transmute_lab::{PhysicalScales, Regulator};

use crate::grid::{parse_energy, parse_grid, EnergySpec, Spacing};
use crate::CliError;

/// Keys accepted in a config file. Flags use the same names with `--`.
pub const KEYS: &[&str] = &[
    "regulator",
    "epsilon",
    "lambda",
    "energy",
    "out",
    "format",
    "tol-override",
    "range",
    "radius",
    "anchor",
    "tau0",
    "z",
    "binding-energy",
    "steps",
    "kinetic-constant",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Raw string settings, flag values layered over file values.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
    overrides: Vec<String>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key=value", n + 1))
            })?;
            s.set(k.trim(), v.trim())?;
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        if !KEYS.contains(&key) {
            return Err(CliError::Usage(format!("unknown setting `{key}`")));
        }
        if key == "tol-override" {
            self.overrides.push(value.to_string());
        } else {
            self.values.insert(key.to_string(), value.to_string());
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn overrides(&self) -> &[String] {
        &self.overrides
    }
}

fn number(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("`{key}`: not a number: {v}")))
}

/// Resolved configuration for one run.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub command: String,
    pub settings: Settings,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub scales: PhysicalScales,
    pub tolerances: Tolerances,
}

impl ScanConfig {
    pub fn new(command: &str, settings: Settings) -> Result<Self, CliError> {
        let format = match settings.get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(CliError::Usage(format!("unknown format `{other}`"))),
        };
        let c = match settings.get("kinetic-constant") {
            Some(v) => number("kinetic-constant", v)?,
            None => 1.0,
        };
        let scales = PhysicalScales::new(c).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut tolerances = Tolerances::default();
        for o in settings.overrides() {
            tolerances.apply(o)?;
        }
        Ok(Self {
            command: command.to_string(),
            out: settings.get("out").map(PathBuf::from),
            settings,
            format,
            scales,
            tolerances,
        })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.settings.get(key)
    }

    pub fn number_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        self.get(key).map_or(Ok(default), |v| number(key, v))
    }

    pub fn count_or(&self, key: &str, default: u32) -> Result<u32, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("`{key}`: not a count: {v}"))),
        }
    }

    pub fn grid_or(
        &self,
        key: &str,
        default: &str,
        spacing: Spacing,
    ) -> Result<Vec<f64>, CliError> {
        parse_grid(key, self.get(key).unwrap_or(default), spacing)
    }

    pub fn energy_or(&self, default: &str) -> Result<EnergySpec, CliError> {
        parse_energy(self.get("energy").unwrap_or(default))
    }

    /// Regulator names from `--regulator`, comma separated.
    pub fn regulator_names(&self, default: &str) -> Vec<String> {
        self.get("regulator")
            .unwrap_or(default)
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    }

    /// Builds a regulator by name. `lambda` must be a single value here.
    pub fn regulator(&self, name: &str) -> Result<Regulator, CliError> {
        let usage = |e: transmute_lab::Error| CliError::Usage(e.to_string());
        match name {
            "pure-delta" => Ok(Regulator::PureDelta),
            "sharp-cutoff" => {
                let l = self.grid_or("lambda", "1", Spacing::Log)?;
                if l.len() != 1 {
                    return Err(CliError::Usage(
                        "sharp-cutoff needs a single --lambda".into(),
                    ));
                }
                Regulator::sharp_cutoff(l[0]).map_err(usage)
            }
            "gaussian" => Regulator::gaussian(self.number_or("range", 1.0)?).map_err(usage),
            "circular-well" => {
                Regulator::circular_well(self.number_or("radius", 1.0)?).map_err(usage)
            }
            other => Err(CliError::Usage(format!("unknown regulator `{other}`"))),
        }
    }
}

/// Acceptance thresholds for the checks the commands report.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub group_property: f64,
    pub l_agreement: f64,
    pub unitarity: f64,
    pub theorem_slope: f64,
    pub bind_slope: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            group_property: transmute_lab::tolerances::GROUP_PROPERTY,
            l_agreement: 1e-12,
            unitarity: transmute_lab::tolerances::UNITARITY,
            theorem_slope: 0.01,
            bind_slope: 0.02,
        }
    }
}

impl Tolerances {
    pub fn apply(&mut self, item: &str) -> Result<(), CliError> {
        let (name, value) = item.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("tolerance override `{item}` needs name=value"))
        })?;
        let v = number(name, value)?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!(
                "tolerance `{name}` must be positive"
            )));
        }
        let slot = match name.trim() {
            "group_property" => &mut self.group_property,
            "l_agreement" => &mut self.l_agreement,
            "unitarity" => &mut self.unitarity,
            "theorem_slope" => &mut self.theorem_slope,
            "bind_slope" => &mut self.bind_slope,
            other => return Err(CliError::Usage(format!("unknown tolerance `{other}`"))),
        };
        *slot = v;
        Ok(())
    }
}
