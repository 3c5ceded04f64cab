//! Run configuration: defaults per scenario, `key=value` files, validation.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::BatteryParams;

/// Smallest accepted time-grid size.
pub const MIN_TIME_POINTS: usize = 201;
pub const DEFAULT_TIME_POINTS: usize = 1001;
pub const DEFAULT_SWEEP_J_POINTS: usize = 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    /// Two cells, no coupling.
    Parallel,
    /// Two coupled cells, one trace per Δ.
    Collective2,
    /// Two cells, window averages as a function of Δ.
    DeltaScan,
    /// Two cells, window averages on a (Δ, J/Ω) grid.
    Sweep2d,
    /// Three coupled cells, one trace per Δ.
    Collective3,
    /// Two cells under σᶻ dephasing, one trace per γ.
    Dephasing,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::Parallel,
        ScenarioKind::Collective2,
        ScenarioKind::DeltaScan,
        ScenarioKind::Sweep2d,
        ScenarioKind::Collective3,
        ScenarioKind::Dephasing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Parallel => "parallel",
            ScenarioKind::Collective2 => "collective2",
            ScenarioKind::DeltaScan => "delta-scan",
            ScenarioKind::Sweep2d => "sweep2d",
            ScenarioKind::Collective3 => "collective3",
            ScenarioKind::Dephasing => "dephasing",
        }
    }

    pub fn n_cells(self) -> usize {
        match self {
            ScenarioKind::Collective3 => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
            Error::config("scenario", format!("unknown scenario `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

/// `points` values log-spaced over `[lo, hi]`.
pub fn log_spaced(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > 0.0 && points >= 2);
    let (a, b) = (lo.log10(), hi.log10());
    (0..points)
        .map(|k| {
            if k == points - 1 {
                hi
            } else {
                10f64.powf(a + (b - a) * k as f64 / (points - 1) as f64)
            }
        })
        .collect()
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
        .collect()
}

/// Everything needed to run one scenario. Rates are in units of Ω.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub params: BatteryParams<f64>,
    pub delta_list: Vec<f64>,
    pub j_over_omega_list: Vec<f64>,
    pub gamma_list: Vec<f64>,
    /// `None` writes to standard output.
    pub output_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn new(scenario: ScenarioKind) -> Self {
        let params = BatteryParams {
            n_cells: scenario.n_cells(),
            t_steps: DEFAULT_TIME_POINTS,
            ..BatteryParams::default()
        };
        let (delta_list, j_over_omega_list, gamma_list) = match scenario {
            ScenarioKind::Parallel => (vec![1.0], vec![0.0], vec![0.0]),
            ScenarioKind::Collective2 | ScenarioKind::Collective3 => (vec![-1.0, 0.0, 1.0], vec![1.0], vec![0.0]),
            ScenarioKind::DeltaScan => (linspace(-1.0, 1.0, 21), vec![1.0], vec![0.0]),
            ScenarioKind::Sweep2d => (
                vec![-1.0, -0.5, 0.0, 0.5, 1.0],
                log_spaced(0.1, 10.0, DEFAULT_SWEEP_J_POINTS),
                vec![0.0],
            ),
            ScenarioKind::Dephasing => (vec![1.0], vec![1.0], vec![0.0, 0.1, 0.5]),
        };
        Self {
            scenario,
            params,
            delta_list,
            j_over_omega_list,
            gamma_list,
            output_path: None,
        }
    }

    /// Applies one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "delta" => self.delta_list = parse_list(key, value)?,
            "j_over_omega" | "j-over-omega" => self.j_over_omega_list = parse_list(key, value)?,
            "gamma" => self.gamma_list = parse_list(key, value)?,
            "steps" => {
                self.params.t_steps = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(key, format!("`{value}` is not a positive integer")))?
            }
            "omega0" => self.params.omega0 = parse_number(key, value)?,
            "out" | "output" => self.output_path = Some(PathBuf::from(value.trim())),
            "scenario" => {
                let kind: ScenarioKind = value.trim().parse()?;
                if kind != self.scenario {
                    return Err(Error::config(
                        "scenario",
                        format!("file names `{kind}` but `{}` was requested", self.scenario),
                    ));
                }
            }
            other => return Err(Error::config(other, "unknown key")),
        }
        Ok(())
    }

    /// Applies every setting of a `key=value` text. Blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}", lineno + 1), "expected key=value"))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        if p.t_steps < MIN_TIME_POINTS || p.t_steps.is_multiple_of(2) {
            return Err(Error::config(
                "steps",
                format!("need an odd point count >= {MIN_TIME_POINTS}, got {}", p.t_steps),
            ));
        }
        if !(p.omega0 > 0.0 && p.omega0.is_finite()) {
            return Err(Error::config("omega0", "must be positive"));
        }
        let lists = [
            ("delta", &self.delta_list),
            ("j_over_omega", &self.j_over_omega_list),
            ("gamma", &self.gamma_list),
        ];
        for (name, list) in lists {
            if list.is_empty() {
                return Err(Error::config(name, "list is empty"));
            }
            if list.iter().any(|x| !x.is_finite()) {
                return Err(Error::config(name, "values must be finite"));
            }
        }
        if self.j_over_omega_list.iter().any(|&j| j < 0.0) {
            return Err(Error::config("j_over_omega", "values must be non-negative"));
        }
        if self.gamma_list.iter().any(|&g| g < 0.0) {
            return Err(Error::config("gamma", "values must be non-negative"));
        }
        let single_j = matches!(
            self.scenario,
            ScenarioKind::Collective2 | ScenarioKind::Collective3 | ScenarioKind::DeltaScan | ScenarioKind::Dephasing
        );
        if single_j && self.j_over_omega_list.len() != 1 {
            return Err(Error::config(
                "j_over_omega",
                format!("scenario `{}` takes a single value", self.scenario),
            ));
        }
        if self.scenario == ScenarioKind::Dephasing && self.delta_list.len() != 1 {
            return Err(Error::config("delta", "scenario `dephasing` takes a single value"));
        }
        Ok(())
    }
}

fn parse_number(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::config(key, format!("`{}` is not a number", value.trim())))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_number(key, s))
        .collect()
}
