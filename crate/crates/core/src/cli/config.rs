//! Parsing and validation of run configurations.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{Breaking, SystemParams, DEFAULT_ETA};

/// The computation a run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Transmission and densities of states, refined on transmission.
    Spectrum,
    /// Same table, refined on the densities of states.
    Dos,
    /// Segment density of states over frequency and separation.
    Heatmap,
    /// Time evolution of an initial state.
    Evolve,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Spectrum => "spectrum",
            Mode::Dos => "dos",
            Mode::Heatmap => "heatmap",
            Mode::Evolve => "evolve",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectrum" => Ok(Mode::Spectrum),
            "dos" => Ok(Mode::Dos),
            "heatmap" => Ok(Mode::Heatmap),
            "evolve" => Ok(Mode::Evolve),
            other => Err(Error::Validation(format!(
                "unknown mode `{other}` (expected spectrum, dos, heatmap or evolve)"
            ))),
        }
    }
}

/// Frequency grid of the stationary modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub omega_min: f64,
    pub omega_max: f64,
    pub count: usize,
    /// Bisect intervals where the tabulated quantity changes quickly.
    pub adaptive: bool,
}

/// Initial state of an evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Packet { sigma: f64, x0: f64, k0: f64 },
    AntisymW1,
    AntisymW1W2,
}

impl InitialState {
    pub fn name(&self) -> &'static str {
        match self {
            InitialState::Packet { .. } => "packet",
            InitialState::AntisymW1 => "antisym_w1",
            InitialState::AntisymW1W2 => "antisym_w1w2",
        }
    }
}

/// Settings of an evolution run.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsSpec {
    pub n_side: usize,
    pub initial: InitialState,
    pub t_final: f64,
    pub samples: usize,
    pub snapshot_times: Vec<f64>,
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: SystemParams,
    /// Present for `spectrum`, `dos` and `heatmap`.
    pub grid: Option<GridSpec>,
    /// Separations of a heatmap.
    pub separations: Vec<usize>,
    /// Present for `evolve`.
    pub dynamics: Option<DynamicsSpec>,
    /// Prefix of every output file.
    pub output: String,
    pub workers: usize,
}

impl RunConfig {
    pub fn with_output(self, output: impl Into<String>) -> Self {
        Self {
            output: output.into(),
            ..self
        }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self { workers, ..self }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Option<String>,
    omega_c: Option<f64>,
    xi0: Option<f64>,
    xi1: Option<f64>,
    omega_a1: Option<f64>,
    omega_b1: Option<f64>,
    omega_a2: Option<f64>,
    omega_b2: Option<f64>,
    #[serde(rename = "L")]
    separation: Option<i64>,
    delta: Option<f64>,
    breaking: Option<String>,
    eta: Option<f64>,
    omega_min: Option<f64>,
    omega_max: Option<f64>,
    omega_count: Option<i64>,
    adaptive: Option<bool>,
    #[serde(rename = "L_list")]
    separations: Option<Vec<i64>>,
    n_side: Option<i64>,
    sigma: Option<f64>,
    x0: Option<f64>,
    k0: Option<f64>,
    initial: Option<String>,
    t_final: Option<f64>,
    samples: Option<i64>,
    snapshot_times: Option<Vec<f64>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Extracts the first backquoted name from a deserializer message.
fn quoted_key(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

/// Finds the line on which `key` is assigned.
fn key_line(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|l| {
            let l = l.trim_start();
            l.strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

fn parse_raw(text: &str) -> Result<RawConfig> {
    toml::from_str(text).map_err(|e| {
        let message = e.message().to_string();
        let key = quoted_key(&message);
        let line = key
            .as_deref()
            .and_then(|k| key_line(text, k))
            .or_else(|| e.span().map(|s| line_of(text, s.start)))
            .unwrap_or(0);
        Error::Parse { line, key, message }
    })
}

fn required<T>(value: Option<T>, key: &str, mode: Mode) -> Result<T> {
    value.ok_or_else(|| Error::Validation(format!("`{key}` is required in {mode} mode")))
}

fn non_negative(value: i64, key: &str) -> Result<usize> {
    usize::try_from(value)
        .map_err(|_| Error::Validation(format!("`{key}` must be non-negative, got {value}")))
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_for_mode(text, None)
}

/// Like [`parse_config`], with the mode optionally supplied by the caller.
///
/// A mode given both ways must agree.
pub fn parse_config_for_mode(text: &str, mode: Option<Mode>) -> Result<RunConfig> {
    let raw = parse_raw(text)?;
    let doc_mode = raw.mode.as_deref().map(Mode::from_str).transpose()?;
    let mode = match (doc_mode, mode) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Validation(format!(
                "configuration mode `{a}` conflicts with requested mode `{b}`"
            )))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Validation("`mode` is required".into())),
    };

    let eta = raw.eta.unwrap_or(DEFAULT_ETA);
    if eta.is_nan() || eta <= 0.0 {
        return Err(Error::Validation(format!(
            "eta must be positive, got {eta}"
        )));
    }
    let breaking = raw
        .breaking
        .as_deref()
        .map(Breaking::from_str)
        .transpose()
        .map_err(|e| Error::Validation(e.to_string()))?
        .unwrap_or_default();
    let separation = match (mode, raw.separation) {
        (Mode::Heatmap, l) => non_negative(l.unwrap_or(0), "L")?,
        (_, l) => non_negative(required(l, "L", mode)?, "L")?,
    };
    let params = SystemParams {
        omega_c: raw.omega_c.unwrap_or(0.0),
        xi0: raw.xi0.unwrap_or(1.0),
        xi1: required(raw.xi1, "xi1", mode)?,
        omega_a1: required(raw.omega_a1, "omega_a1", mode)?,
        omega_b1: required(raw.omega_b1, "omega_b1", mode)?,
        omega_a2: required(raw.omega_a2, "omega_a2", mode)?,
        omega_b2: required(raw.omega_b2, "omega_b2", mode)?,
        separation,
        delta: raw.delta.unwrap_or(0.0),
        breaking,
        eta,
    };
    params
        .validate()
        .map_err(|e| Error::Validation(e.to_string()))?;

    let mut config = RunConfig {
        mode,
        params,
        grid: None,
        separations: Vec::new(),
        dynamics: None,
        output: "wgr".into(),
        workers: 1,
    };

    match mode {
        Mode::Spectrum | Mode::Dos | Mode::Heatmap => {
            let grid = GridSpec {
                omega_min: required(raw.omega_min, "omega_min", mode)?,
                omega_max: required(raw.omega_max, "omega_max", mode)?,
                count: non_negative(
                    required(raw.omega_count, "omega_count", mode)?,
                    "omega_count",
                )?,
                adaptive: raw.adaptive.unwrap_or(false),
            };
            if grid.count < 2 {
                return Err(Error::Validation("omega_count must be at least 2".into()));
            }
            if grid.omega_min.partial_cmp(&grid.omega_max) != Some(std::cmp::Ordering::Less) {
                return Err(Error::Validation(format!(
                    "omega_min = {} must be below omega_max = {}",
                    grid.omega_min, grid.omega_max
                )));
            }
            for w in [grid.omega_min, grid.omega_max] {
                params
                    .check_in_band(w)
                    .map_err(|e| Error::Validation(format!("grid bound: {e}")))?;
            }
            config.grid = Some(grid);
            if mode == Mode::Heatmap {
                let list = required(raw.separations, "L_list", mode)?;
                if list.is_empty() {
                    return Err(Error::Validation("L_list must not be empty".into()));
                }
                config.separations = list
                    .into_iter()
                    .map(|l| non_negative(l, "L_list"))
                    .collect::<Result<_>>()?;
            }
        }
        Mode::Evolve => {
            let initial = match required(raw.initial, "initial", mode)?.as_str() {
                "packet" => InitialState::Packet {
                    sigma: required(raw.sigma, "sigma", mode)?,
                    x0: required(raw.x0, "x0", mode)?,
                    k0: required(raw.k0, "k0", mode)?,
                },
                "antisym_w1" => InitialState::AntisymW1,
                "antisym_w1w2" => InitialState::AntisymW1W2,
                other => {
                    return Err(Error::Validation(format!(
                    "unknown initial state `{other}` (expected packet, antisym_w1 or antisym_w1w2)"
                )))
                }
            };
            let n_side = non_negative(required(raw.n_side, "n_side", mode)?, "n_side")?;
            if n_side == 0 {
                return Err(Error::Validation("n_side must be positive".into()));
            }
            let t_final = required(raw.t_final, "t_final", mode)?;
            if !(t_final > 0.0 && t_final.is_finite()) {
                return Err(Error::Validation(format!(
                    "t_final must be positive, got {t_final}"
                )));
            }
            let samples = non_negative(raw.samples.unwrap_or(500), "samples")?;
            if samples < 2 {
                return Err(Error::Validation("samples must be at least 2".into()));
            }
            let snapshot_times = raw.snapshot_times.unwrap_or_default();
            if let Some(t) = snapshot_times
                .iter()
                .find(|&&t| !(t >= 0.0 && t <= t_final))
            {
                return Err(Error::Validation(format!(
                    "snapshot time {t} outside [0, {t_final}]"
                )));
            }
            config.dynamics = Some(DynamicsSpec {
                n_side,
                initial,
                t_final,
                samples,
                snapshot_times,
            });
        }
    }
    Ok(config)
}
