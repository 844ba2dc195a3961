//! Flat INI-style experiment configs with line-numbered validation errors.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

/// Parse or validation failure, carrying the offending line.
#[derive(Debug, Clone)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

macro_rules! cfg_err {
    ($line:expr, $($arg:tt)*) => {
        return Err(ConfigError { line: $line, message: format!($($arg)*) })
    };
}

/// Raw key-value view: `section.key -> (value, line)`.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: HashMap<String, (String, usize)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<RawConfig, ConfigError> {
        let mut entries = HashMap::new();
        let mut section = String::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let Some(name) = name.strip_suffix(']') else {
                    cfg_err!(line_no, "unterminated section header");
                };
                section = name.trim().to_string();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                cfg_err!(line_no, "expected key = value");
            };
            let full = if section.is_empty() {
                key.trim().to_string()
            } else {
                format!("{section}.{}", key.trim())
            };
            if entries
                .insert(full.clone(), (value.trim().to_string(), line_no))
                .is_some()
            {
                cfg_err!(line_no, "duplicate key {full}");
            }
        }
        Ok(RawConfig { entries })
    }

    fn get(&self, key: &str) -> Option<&(String, usize)> {
        self.entries.get(key)
    }

    fn require(&self, key: &str) -> Result<&(String, usize), ConfigError> {
        self.get(key).ok_or_else(|| ConfigError {
            line: 0,
            message: format!("missing required key {key}"),
        })
    }

    fn parse_num<T: std::str::FromStr>(&self, key: &str) -> Result<Option<(T, usize)>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((v, line)) => match v.parse::<T>() {
                Ok(x) => Ok(Some((x, *line))),
                Err(_) => cfg_err!(*line, "cannot parse {key} value {v:?}"),
            },
        }
    }

    fn num_or<T: std::str::FromStr + Copy>(&self, key: &str, default: T) -> Result<T, ConfigError> {
        Ok(self.parse_num::<T>(key)?.map(|p| p.0).unwrap_or(default))
    }

    fn list_f64(&self, key: &str) -> Result<Option<(Vec<f64>, usize)>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((v, line)) => {
                let mut out = Vec::new();
                for part in v.split(',') {
                    match part.trim().parse::<f64>() {
                        Ok(x) => out.push(x),
                        Err(_) => cfg_err!(*line, "cannot parse list entry {part:?} in {key}"),
                    }
                }
                Ok(Some((out, *line)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Decay,
    Energy,
    Decouple,
    Incidence,
    Furstenberg,
    Pipeline,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Decay => "decay",
            Scenario::Energy => "energy",
            Scenario::Decouple => "decouple",
            Scenario::Incidence => "incidence",
            Scenario::Furstenberg => "furstenberg",
            Scenario::Pipeline => "pipeline",
        }
    }

    pub fn from_name(name: &str) -> Option<Scenario> {
        Some(match name {
            "decay" => Scenario::Decay,
            "energy" => Scenario::Energy,
            "decouple" => Scenario::Decouple,
            "incidence" => Scenario::Incidence,
            "furstenberg" => Scenario::Furstenberg,
            "pipeline" => Scenario::Pipeline,
            _ => return None,
        })
    }

    /// Scenarios whose cap grids need exact cap counts.
    pub fn requires_fourth_power_radii(self) -> bool {
        matches!(
            self,
            Scenario::Incidence | Scenario::Furstenberg | Scenario::Pipeline
        )
    }
}

#[derive(Debug, Clone, serde::Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureSpec {
    Cantor { ratio: f64, depth: u32, mass: f64 },
    Ap { num_intervals: usize, interval_length: f64, mass: f64 },
    Uniform { atoms: usize, mass: f64 },
}

#[derive(Debug, Clone, serde::Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveConfig {
    Parabola,
    Custom { coefficients: Vec<f64>, grid_points: usize },
}

/// Fully validated experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub measure: MeasureSpec,
    pub curve: CurveConfig,
    pub r_list: Vec<f64>,
    pub s: f64,
    pub alpha: f64,
    pub h: f64,
    pub slack: f64,
    /// Fitted-constant cap for bound checks (exit code 2 when exceeded).
    pub constant_cap: f64,
    /// Truncation-depth ladder for the energy scenario.
    pub depths: Vec<u32>,
    /// Furstenberg line-family exponent.
    pub t: f64,
    /// Canonical text used for the manifest hash.
    pub canonical_text: String,
}

fn is_fourth_power_of_integer(r: f64) -> bool {
    let root = r.powf(0.25).round();
    root >= 2.0 && (root.powi(4) - r).abs() < 1e-9
}

impl ExperimentConfig {
    pub fn from_text(text: &str) -> Result<ExperimentConfig, ConfigError> {
        let raw = RawConfig::parse(text)?;

        let (scenario_str, scen_line) = raw.require("run.scenario")?.clone();
        let Some(scenario) = Scenario::from_name(&scenario_str) else {
            cfg_err!(
                scen_line,
                "unknown scenario {scenario_str:?} (expected decay|energy|decouple|incidence|furstenberg|pipeline)"
            );
        };
        let seed = raw.num_or("run.seed", 0u64)?;
        let out_dir = PathBuf::from(
            raw.get("run.out")
                .map(|(v, _)| v.clone())
                .unwrap_or_else(|| "runs/out".to_string()),
        );

        let measure = match raw.get("measure.kind").map(|(v, l)| (v.as_str(), *l)) {
            None | Some(("cantor", _)) => MeasureSpec::Cantor {
                ratio: raw.num_or("measure.ratio", 1.0 / 3.0)?,
                depth: raw.num_or("measure.depth", 8u32)?,
                mass: raw.num_or("measure.mass", 1.0)?,
            },
            Some(("ap", _)) => MeasureSpec::Ap {
                num_intervals: raw.num_or("measure.num_intervals", 32usize)?,
                interval_length: raw.num_or("measure.interval_length", 2f64.powi(-10))?,
                mass: raw.num_or("measure.mass", 1.0)?,
            },
            Some(("uniform", _)) => MeasureSpec::Uniform {
                atoms: raw.num_or("measure.atoms", 256usize)?,
                mass: raw.num_or("measure.mass", 1.0)?,
            },
            Some((other, line)) => {
                cfg_err!(line, "unknown measure kind {other:?} (cantor|ap|uniform)")
            }
        };

        let curve = match raw.get("curve.kind").map(|(v, l)| (v.as_str(), *l)) {
            None | Some(("parabola", _)) => CurveConfig::Parabola,
            Some(("custom", _)) => {
                let (coefficients, line) = raw
                    .list_f64("curve.coefficients")?
                    .ok_or(ConfigError {
                        line: 0,
                        message: "custom curve needs curve.coefficients".into(),
                    })?;
                if coefficients.len() < 3 {
                    cfg_err!(line, "custom curve needs at least degree 2");
                }
                CurveConfig::Custom {
                    coefficients,
                    grid_points: raw.num_or("curve.grid_points", 4097usize)?,
                }
            }
            Some((other, line)) => cfg_err!(line, "unknown curve kind {other:?}"),
        };

        let (r_list, r_line) = raw
            .list_f64("scan.r_list")?
            .unwrap_or((vec![256.0], 0));
        let (s, s_line) = raw
            .parse_num::<f64>("scan.s")?
            .unwrap_or((0.6309297535714574, 0));
        if !(0.0 < s && s < 1.0) {
            cfg_err!(s_line, "s must lie in (0,1)");
        }
        let alpha = raw.num_or("scan.alpha", 0.02f64)?;
        if !(0.0 < alpha && alpha < 0.25) {
            let line = raw.get("scan.alpha").map(|p| p.1).unwrap_or(0);
            cfg_err!(line, "alpha must lie in (0, 0.25)");
        }
        let h = raw.num_or("scan.h", 0.125f64)?;
        let slack = raw.num_or("scan.slack", 0.15f64)?;
        let constant_cap = raw.num_or("scan.constant_cap", 16.0f64)?;
        let t = raw.num_or("scan.t", 1.0f64)?;
        let depths = raw
            .list_f64("scan.depths")?
            .map(|(v, _)| v.iter().map(|&d| d as u32).collect())
            .unwrap_or_else(|| vec![4, 5, 6, 7, 8]);

        for &r in &r_list {
            if r < 16.0 {
                cfg_err!(r_line, "scan radii must be at least 16, got {r}");
            }
            if scenario.requires_fourth_power_radii() && !is_fourth_power_of_integer(r) {
                cfg_err!(
                    r_line,
                    "scenario {} needs R to be a fourth power of an integer, got {r}",
                    scenario.name()
                );
            }
        }

        Ok(ExperimentConfig {
            scenario,
            seed,
            out_dir,
            measure,
            curve,
            r_list,
            s,
            alpha,
            h,
            slack,
            constant_cap,
            depths,
            t,
            canonical_text: text.to_string(),
        })
    }

    /// Apply command-line overrides, keeping the canonical text in sync so
    /// the manifest hash reflects what actually ran.
    pub fn with_overrides(
        mut self,
        out: Option<PathBuf>,
        alpha: Option<f64>,
        seed: Option<u64>,
    ) -> Self {
        if let Some(out) = out {
            self.out_dir = out;
        }
        if let Some(alpha) = alpha {
            self.alpha = alpha;
            self.canonical_text
                .push_str(&format!("\n# override\nscan.alpha = {alpha}\n"));
        }
        if let Some(seed) = seed {
            self.seed = seed;
            self.canonical_text
                .push_str(&format!("\n# override\nrun.seed = {seed}\n"));
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
[run]
scenario = decay
seed = 7
out = runs/x
[measure]
kind = cantor
ratio = 0.3333333333333333
depth = 8
[scan]
r_list = 64,128,256
s = 0.6309297535714574
";

    #[test]
    fn parses_a_valid_config() {
        let cfg = ExperimentConfig::from_text(GOOD).unwrap();
        assert_eq!(cfg.scenario, Scenario::Decay);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.r_list, vec![64.0, 128.0, 256.0]);
    }

    #[test]
    fn s_out_of_range_reports_line() {
        let text = GOOD.replace("s = 0.6309297535714574", "s = 1.5");
        let err = ExperimentConfig::from_text(&text).unwrap_err();
        assert!(err.message.contains("s must lie in (0,1)"), "{err}");
        assert!(err.line > 0, "line number recorded: {err}");
    }

    #[test]
    fn incidence_requires_fourth_powers() {
        let text = GOOD
            .replace("scenario = decay", "scenario = incidence")
            .replace("r_list = 64,128,256", "r_list = 256,1024");
        let err = ExperimentConfig::from_text(&text).unwrap_err();
        assert!(err.message.contains("fourth power"), "{err}");

        let ok = GOOD
            .replace("scenario = decay", "scenario = incidence")
            .replace("r_list = 64,128,256", "r_list = 256,4096");
        assert!(ExperimentConfig::from_text(&ok).is_ok());
    }

    #[test]
    fn bad_syntax_reports_line() {
        let err = ExperimentConfig::from_text("[run\nscenario = decay").unwrap_err();
        assert_eq!(err.line, 1);
        let err = ExperimentConfig::from_text("[run]\nnonsense here").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn duplicate_key_rejected() {
        let err =
            ExperimentConfig::from_text("[run]\nscenario = decay\nscenario = energy").unwrap_err();
        assert_eq!(err.line, 3);
    }
}
