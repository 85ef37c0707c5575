//! Run configuration, output formats and the four commands behind the CLI.
//!
//! Every command is deterministic: the same configuration produces
//! byte-identical output. CSV files are header-first; floating-point columns
//! use `{:.15e}` (16 significant digits). JSON numbers use the shortest
//! representation that round-trips.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coin::{CoinMatrix, CoinParams, CoinState};
use crate::error::Error;
use crate::evolution::{evolve, evolve_observed};
use crate::lattice::{to_physical, Site, Sublattice};
use crate::limit_laws::{
    a_theta, asymptotic_origin_amplitude, delocalization_condition, delta_weight,
    limit_return_probability,
};
use crate::scalar::Triple;

/// Slack on `|α|² + |β|² + |γ|² = 1` accepted from user input; the state is
/// renormalized exactly afterwards.
pub const INPUT_NORM_TOL: f64 = 1e-9;

pub const DEFAULT_T_MAX: u64 = 100;
pub const DEFAULT_TOLERANCE: f64 = 0.01;
pub const DEFAULT_WINDOW: usize = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid input: {0}")]
    Model(Error),

    #[error("computation failed: {0}")]
    Computation(Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    ConfigParse {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl CliError {
    /// Process exit code: 1 for bad input, 2 for failed computations or I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Model(_) | CliError::ConfigParse { .. } => 1,
            CliError::Computation(_) | CliError::Io { .. } => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureNonConvergence { .. } | Error::DivergentDifference { .. } => {
                CliError::Computation(e)
            }
            _ => CliError::Model(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Grover,
}

/// Configuration as read from a JSON file or collected from flags. Every
/// field is optional; [`RawConfig::merge`] layers flags over a file.
///
/// ```json
/// { "preset": "grover", "state": [[0, 0], [1, 0], [0, 0]], "t_max": 400,
///   "out": "series.csv", "format": "csv", "tolerance": 0.01, "window": 10 }
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub theta: Option<f64>,
    pub preset: Option<Preset>,
    /// `(α, β, γ)` as `[re, im]` pairs.
    pub state: Option<[[f64; 2]; 3]>,
    pub t_max: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub tolerance: Option<f64>,
    pub window: Option<usize>,
    /// Add integer site indices to `simulate` output.
    pub indices: Option<bool>,
}

impl RawConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Invalid(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_owned(),
            source,
        })
    }

    /// Fields set in `over` replace those in `self`. Choosing a coin in
    /// `over` (angle or preset) replaces both coin fields.
    pub fn merge(self, over: RawConfig) -> RawConfig {
        let coin_overridden = over.theta.is_some() || over.preset.is_some();
        RawConfig {
            theta: if coin_overridden { over.theta } else { self.theta },
            preset: if coin_overridden { over.preset } else { self.preset },
            state: over.state.or(self.state),
            t_max: over.t_max.or(self.t_max),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            tolerance: over.tolerance.or(self.tolerance),
            window: over.window.or(self.window),
            indices: over.indices.or(self.indices),
        }
    }
}

/// Parses the real shorthand `a,b,c` for `(α, β, γ)`.
pub fn parse_state_shorthand(text: &str) -> Result<[[f64; 2]; 3], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Invalid(format!(
            "state needs three comma-separated amplitudes, got {text:?}"
        )));
    }
    let mut out = [[0.0; 2]; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        let v: f64 = part
            .parse()
            .map_err(|_| CliError::Invalid(format!("cannot parse amplitude {part:?}")))?;
        *slot = [v, 0.0];
    }
    Ok(out)
}

/// A validated run: coin and initial state are checked before anything runs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: CoinParams<f64>,
    pub state: CoinState<f64>,
    pub t_max: u64,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub tolerance: f64,
    pub window: usize,
    pub indices: bool,
}

impl TryFrom<RawConfig> for RunConfig {
    type Error = CliError;

    fn try_from(raw: RawConfig) -> Result<Self, CliError> {
        let params = match (raw.preset, raw.theta) {
            (Some(_), Some(_)) => {
                return Err(CliError::Invalid(
                    "give either an angle or a preset, not both".into(),
                ))
            }
            (Some(Preset::Grover), None) => CoinParams::grover(),
            (None, Some(theta)) => CoinParams::new(theta)?,
            (None, None) => {
                return Err(CliError::Invalid(
                    "no coin given: set an angle or the grover preset".into(),
                ))
            }
        };
        let amps = raw
            .state
            .ok_or_else(|| CliError::Invalid("no initial coin state given".into()))?;
        let [a, b, g] = amps.map(|[re, im]| Complex64::new(re, im));
        let norm_sqr = a.norm_sqr() + b.norm_sqr() + g.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > INPUT_NORM_TOL {
            return Err(CliError::Model(Error::Unnormalized { norm_sqr }));
        }
        let state = CoinState::normalized(a, b, g)?;
        let tolerance = raw.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance >= 0.0) {
            return Err(CliError::Invalid(format!(
                "tolerance must be non-negative, got {tolerance}"
            )));
        }
        let window = raw.window.unwrap_or(DEFAULT_WINDOW);
        if window == 0 {
            return Err(CliError::Invalid("window must be at least 1".into()));
        }
        Ok(RunConfig {
            params,
            state,
            t_max: raw.t_max.unwrap_or(DEFAULT_T_MAX),
            output_path: raw.out,
            format: raw.format.unwrap_or_default(),
            tolerance,
            window,
            indices: raw.indices.unwrap_or(false),
        })
    }
}

impl RunConfig {
    pub fn coin(&self) -> CoinMatrix<f64> {
        CoinMatrix::new(&self.params)
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.15e}")
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn pairs(v: &Triple<f64>) -> [[f64; 2]; 3] {
    v.map(pair)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteRow {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sub: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<i64>,
    pub px: f64,
    pub py: f64,
    pub prob: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateOutput {
    pub t: u64,
    pub rows: Vec<SiteRow>,
}

/// Distribution at `t_max` in physical coordinates, sorted by `(px, py)`.
pub fn simulate_rows(cfg: &RunConfig) -> SimulateOutput {
    let wf = evolve(&cfg.state, cfg.t_max, &cfg.coin());
    let mut sites: Vec<(Site, f64)> = wf.distribution().iter().map(|(s, p)| (*s, *p)).collect();
    sites.sort_by_key(|(s, _)| (s.doubled_px(), s.y));
    let rows = sites
        .into_iter()
        .map(|(site, prob)| {
            let p = to_physical::<f64>(site);
            let sub = match site.sub {
                Sublattice::A => "A",
                Sublattice::B => "B",
            };
            SiteRow {
                sub: cfg.indices.then(|| sub.to_string()),
                x: cfg.indices.then_some(site.x),
                y: cfg.indices.then_some(site.y),
                px: p.px,
                py: p.py,
                prob,
            }
        })
        .collect();
    SimulateOutput { t: wf.time(), rows }
}

pub fn cmd_simulate(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let data = simulate_rows(cfg);
    match cfg.format {
        OutputFormat::Json => write_json(out, &data),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let header: &[&str] = if cfg.indices {
                &["sub", "x", "y", "px", "py", "prob"]
            } else {
                &["px", "py", "prob"]
            };
            w.write_record(header).map_err(csv_err)?;
            for row in &data.rows {
                let mut rec = Vec::with_capacity(6);
                if let (Some(sub), Some(x), Some(y)) = (&row.sub, row.x, row.y) {
                    rec.extend([sub.clone(), x.to_string(), y.to_string()]);
                }
                rec.extend([fmt_f(row.px), fmt_f(row.py), fmt_f(row.prob)]);
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush().map_err(stdout_err)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub t: u64,
    pub p_origin: f64,
    pub limit: f64,
}

/// Return probability at every even time up to `t_max`, next to its long-time limit.
pub fn return_series_rows(cfg: &RunConfig) -> Vec<SeriesRow> {
    let limit = limit_return_probability(&cfg.params, &cfg.state);
    crate::evolution::return_series(&cfg.state, cfg.t_max, &cfg.coin())
        .into_iter()
        .map(|(t, p_origin)| SeriesRow { t, p_origin, limit })
        .collect()
}

pub fn cmd_return_series(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = return_series_rows(cfg);
    match cfg.format {
        OutputFormat::Json => write_json(out, &rows),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["t", "p_origin", "limit"]).map_err(csv_err)?;
            for r in &rows {
                w.write_record([r.t.to_string(), fmt_f(r.p_origin), fmt_f(r.limit)])
                    .map_err(csv_err)?;
            }
            w.flush().map_err(stdout_err)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub theta: f64,
    pub c: f64,
    pub s: f64,
    pub a_theta: f64,
    pub limit: f64,
    pub delta: f64,
    pub delocalized: bool,
    /// Long-time origin amplitude as `[re, im]` pairs.
    pub amplitude: [[f64; 2]; 3],
}

pub fn limit_report(cfg: &RunConfig) -> LimitReport {
    let p = &cfg.params;
    LimitReport {
        theta: p.theta(),
        c: p.c(),
        s: p.s(),
        a_theta: a_theta(p),
        limit: limit_return_probability(p, &cfg.state),
        delta: delta_weight(p, &cfg.state),
        delocalized: delocalization_condition(p, &cfg.state),
        amplitude: pairs(&asymptotic_origin_amplitude(p, &cfg.state).as_triple()),
    }
}

pub fn cmd_limit(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let r = limit_report(cfg);
    match cfg.format {
        OutputFormat::Json => write_json(out, &r),
        OutputFormat::Csv => {
            let mut rows = vec![
                ("theta".to_string(), fmt_f(r.theta)),
                ("c".into(), fmt_f(r.c)),
                ("s".into(), fmt_f(r.s)),
                ("a_theta".into(), fmt_f(r.a_theta)),
                ("limit".into(), fmt_f(r.limit)),
                ("delta".into(), fmt_f(r.delta)),
                ("delocalized".into(), r.delocalized.to_string()),
            ];
            for (j, [re, im]) in r.amplitude.iter().enumerate() {
                rows.push((format!("amplitude{j}_re"), fmt_f(*re)));
                rows.push((format!("amplitude{j}_im"), fmt_f(*im)));
            }
            write_key_values(out, &rows)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub t_max: u64,
    /// Even times actually averaged (at most `window`).
    pub times: Vec<u64>,
    pub simulated_probability: f64,
    pub limit_probability: f64,
    pub probability_error: f64,
    pub simulated_amplitude: [[f64; 2]; 3],
    pub asymptotic_amplitude: [[f64; 2]; 3],
    /// Largest componentwise modulus of the amplitude difference.
    pub amplitude_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Averages the origin probability and amplitude over the last `window` even
/// times up to `t_max` and compares them with the long-time limits.
pub fn compare_report(cfg: &RunConfig) -> CompareReport {
    let last_even = cfg.t_max - cfg.t_max % 2;
    let first = last_even.saturating_sub(2 * (cfg.window as u64 - 1));
    let mut times = Vec::new();
    let mut prob_sum = 0.0;
    let mut amp_sum = [Complex64::new(0.0, 0.0); 3];
    evolve_observed(&cfg.state, cfg.t_max, &cfg.coin(), |wf| {
        let t = wf.time();
        if t % 2 == 0 && t >= first {
            let amp = wf.amplitude(Site::ORIGIN);
            prob_sum += wf.probability(Site::ORIGIN);
            for j in 0..3 {
                amp_sum[j] += amp[j];
            }
            times.push(t);
        }
    });
    let n = times.len() as f64;
    let simulated_probability = prob_sum / n;
    let simulated_amplitude = amp_sum.map(|z| z / n);
    let limit_probability = limit_return_probability(&cfg.params, &cfg.state);
    let asym = asymptotic_origin_amplitude(&cfg.params, &cfg.state).as_triple();
    let probability_error = (simulated_probability - limit_probability).abs();
    let amplitude_error = (0..3)
        .map(|j| (simulated_amplitude[j] - asym[j]).norm())
        .fold(0.0, f64::max);
    CompareReport {
        t_max: cfg.t_max,
        times,
        simulated_probability,
        limit_probability,
        probability_error,
        simulated_amplitude: pairs(&simulated_amplitude),
        asymptotic_amplitude: pairs(&asym),
        amplitude_error,
        tolerance: cfg.tolerance,
        pass: probability_error <= cfg.tolerance && amplitude_error <= cfg.tolerance,
    }
}

pub fn cmd_compare(cfg: &RunConfig, out: &mut dyn Write) -> Result<CompareReport, CliError> {
    let r = compare_report(cfg);
    match cfg.format {
        OutputFormat::Json => write_json(out, &r)?,
        OutputFormat::Csv => {
            let mut rows = vec![
                ("t_max".to_string(), r.t_max.to_string()),
                ("steps_averaged".into(), r.times.len().to_string()),
                ("simulated_probability".into(), fmt_f(r.simulated_probability)),
                ("limit_probability".into(), fmt_f(r.limit_probability)),
                ("probability_error".into(), fmt_f(r.probability_error)),
                ("amplitude_error".into(), fmt_f(r.amplitude_error)),
                ("tolerance".into(), fmt_f(r.tolerance)),
            ];
            rows.push((
                "verdict".into(),
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
            ));
            write_key_values(out, &rows)?;
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    ReturnSeries,
    Limit,
    Compare,
}

/// Runs `command`, writing to `cfg.output_path` or to standard output.
/// Returns `false` only for a failed comparison.
pub fn execute(command: Command, cfg: &RunConfig) -> Result<bool, CliError> {
    match &cfg.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            let ok = dispatch(command, cfg, &mut w).map_err(|e| with_path(e, path))?;
            w.flush().map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(ok)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            dispatch(command, cfg, &mut lock)
        }
    }
}

fn dispatch(command: Command, cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    match command {
        Command::Simulate => cmd_simulate(cfg, out).map(|_| true),
        Command::ReturnSeries => cmd_return_series(cfg, out).map(|_| true),
        Command::Limit => cmd_limit(cfg, out).map(|_| true),
        Command::Compare => cmd_compare(cfg, out).map(|r| r.pass),
    }
}

fn with_path(e: CliError, path: &Path) -> CliError {
    match e {
        CliError::Io { source, .. } => CliError::Io {
            path: path.to_owned(),
            source,
        },
        other => other,
    }
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn csv_err(e: csv::Error) -> CliError {
    stdout_err(io::Error::other(e))
}

fn write_json<S: Serialize>(out: &mut dyn Write, value: &S) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| stdout_err(io::Error::other(e)))?;
    writeln!(out).map_err(stdout_err)
}

fn write_key_values(out: &mut dyn Write, rows: &[(String, String)]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["quantity", "value"]).map_err(csv_err)?;
    for (k, v) in rows {
        w.write_record([k, v]).map_err(csv_err)?;
    }
    w.flush().map_err(stdout_err)
}
