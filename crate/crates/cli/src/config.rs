//! Run configuration from flags and `key=value` files.

use std::path::{Path, PathBuf};

use igfv::integrator::ViscousGradients;
use igfv::{build, Case, Overrides, RunConfig, SchemeConfig};

use crate::CliError;

/// Keys accepted in a config file. Dashes and underscores are
/// interchangeable.
pub const KEYS: [&str; 11] = [
    "case",
    "scheme",
    "cells",
    "cfl",
    "t_end",
    "alpha_mp",
    "mu",
    "pr",
    "out",
    "viscous_gradients",
    "write_every",
];

/// Raw settings before validation. Every field is optional so that layers
/// can be merged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub case: Option<String>,
    pub scheme: Option<String>,
    pub cells: Option<Vec<usize>>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub alpha_mp: Option<f64>,
    pub mu: Option<f64>,
    pub pr: Option<f64>,
    pub out: Option<PathBuf>,
    pub viscous_gradients: Option<ViscousGradients>,
    pub write_every: Option<usize>,
}

impl Settings {
    /// Fields set in `over` replace those in `self`.
    pub fn merged(self, over: Settings) -> Settings {
        Settings {
            case: over.case.or(self.case),
            scheme: over.scheme.or(self.scheme),
            cells: over.cells.or(self.cells),
            cfl: over.cfl.or(self.cfl),
            t_end: over.t_end.or(self.t_end),
            alpha_mp: over.alpha_mp.or(self.alpha_mp),
            mu: over.mu.or(self.mu),
            pr: over.pr.or(self.pr),
            out: over.out.or(self.out),
            viscous_gradients: over.viscous_gradients.or(self.viscous_gradients),
            write_every: over.write_every.or(self.write_every),
        }
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "case" => self.case = Some(value.to_string()),
            "scheme" => self.scheme = Some(value.to_string()),
            "cells" => self.cells = Some(parse_cells(value)?),
            "cfl" => self.cfl = Some(parse_num(&key, value)?),
            "t_end" => self.t_end = Some(parse_num(&key, value)?),
            "alpha_mp" => self.alpha_mp = Some(parse_num(&key, value)?),
            "mu" => self.mu = Some(parse_num(&key, value)?),
            "pr" => self.pr = Some(parse_num(&key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "viscous_gradients" => self.viscous_gradients = Some(parse_gradients(value)?),
            "write_every" => {
                self.write_every = Some(
                    value
                        .parse()
                        .map_err(|_| CliError::Config(format!("write_every: `{value}` is not a count")))?,
                )
            }
            other => {
                return Err(CliError::Config(format!(
                    "unknown key `{other}` (expected one of {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }
}

fn parse_num(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Config(format!("{key}: `{value}` is not a finite number")))
}

/// Parses `N`, `NxM` or `NxMxK`.
pub fn parse_cells(s: &str) -> Result<Vec<usize>, CliError> {
    let parts: Result<Vec<usize>, _> = s.trim().split(['x', 'X']).map(|p| p.trim().parse::<usize>()).collect();
    match parts {
        Ok(v) if (1..=3).contains(&v.len()) && v.iter().all(|n| *n > 0) => Ok(v),
        _ => Err(CliError::Config(format!("cells: `{s}` is not of the form N, NxN or NxNxN"))),
    }
}

pub fn parse_gradients(s: &str) -> Result<ViscousGradients, CliError> {
    match s.trim() {
        "implicit" => Ok(ViscousGradients::Implicit),
        "explicit4e" => Ok(ViscousGradients::Explicit4e),
        other => Err(CliError::Config(format!(
            "viscous_gradients: `{other}` is not one of implicit, explicit4e"
        ))),
    }
}

/// Parses a flat `key=value` file. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected key=value, got `{line}`", n + 1)))?;
        s.set(k, v).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("line {}: {m}", n + 1)),
            other => other,
        })?;
    }
    Ok(s)
}

pub fn read_config_file(path: &Path) -> Result<Settings, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

/// A validated run: the built case, the run configuration and the output
/// settings.
#[derive(Debug)]
pub struct ResolvedRun {
    pub case: Case,
    pub config: RunConfig,
    pub out: PathBuf,
    pub write_every: usize,
}

/// Validates merged settings and builds the case.
pub fn resolve(s: &Settings) -> Result<ResolvedRun, CliError> {
    let id = s.case.as_deref().ok_or_else(|| CliError::Config("no case given (use --case)".into()))?;
    let ov = Overrides {
        cells: s.cells.clone(),
        t_end: s.t_end,
        mu: s.mu,
        pr: s.pr,
        ..Default::default()
    };
    let case = build(id, &ov)?;
    let mut scheme = SchemeConfig::from_name(s.scheme.as_deref().unwrap_or("ig4mp"), case.gas.is_multi())?;
    if let Some(a) = s.alpha_mp {
        scheme.alpha_mp = a;
    }
    let mut config = case.run_config(scheme);
    if let Some(c) = s.cfl {
        config.cfl = c;
    }
    if let Some(g) = s.viscous_gradients {
        config.viscous_gradients = g;
    }
    config.validate()?;
    if s.cfl.is_some() || s.alpha_mp.is_some() {
        config.check_limiter_cfl()?;
    }
    Ok(ResolvedRun {
        case,
        config,
        out: s.out.clone().unwrap_or_else(|| PathBuf::from("out")),
        write_every: s.write_every.unwrap_or(0),
    })
}
