//! Text output formats: line CSV, legacy structured-points volumes and the
//! run manifest.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use igfv::analysis::{density_gradient_indicator, Profile};
use igfv::{BoundarySet, Field, GasModel};

use crate::CliError;

/// Variable names of a primitive field.
pub fn var_names(gas: &GasModel) -> &'static [&'static str] {
    if gas.is_multi() {
        &["alpha1_rho1", "alpha2_rho2", "u", "v", "p", "alpha1"]
    } else {
        &["rho", "u", "v", "w", "p"]
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes a profile as CSV with header `x,<var>...`.
pub fn write_line_csv(profile: &Profile, names: &[&str], path: &Path) -> Result<(), CliError> {
    let mut s = String::from("x");
    for n in names {
        s.push(',');
        s.push_str(n);
    }
    s.push('\n');
    for (x, v) in profile.coord.iter().zip(&profile.values) {
        let _ = write!(s, "{x:.16e}");
        for k in 0..names.len() {
            let _ = write!(s, ",{:.16e}", v[k]);
        }
        s.push('\n');
    }
    write_file(path, &s)
}

/// Interior values along the first axis of a 1D field.
pub fn line_profile(field: &Field) -> Profile {
    let grid = &field.grid;
    Profile {
        axis: 0,
        coord: grid.interior().map(|ijk| grid.center(ijk)[0]).collect(),
        values: grid.interior().map(|ijk| field.cell(ijk).to_vec()).collect(),
    }
}

/// A structured-points volume: one scalar array per named variable, with
/// the first axis varying fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Volume {
    pub dims: [usize; 3],
    pub origin: [f64; 3],
    pub spacing: [f64; 3],
    pub scalars: Vec<(String, Vec<f64>)>,
}

impl Volume {
    pub fn scalar(&self, name: &str) -> Option<&[f64]> {
        self.scalars.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }
}

/// Builds the volume of a primitive field together with the density-gradient
/// indicator `phi`. `field` must have its ghost cells filled.
pub fn volume_of(field: &Field, bcs: &BoundarySet, gas: &GasModel) -> Result<Volume, CliError> {
    let grid = &field.grid;
    let mut scalars: Vec<(String, Vec<f64>)> = var_names(gas)
        .iter()
        .enumerate()
        .map(|(k, n)| (n.to_string(), grid.interior().map(|ijk| field.cell(ijk)[k]).collect()))
        .collect();
    scalars.push(("phi".into(), density_gradient_indicator(field, bcs, gas)?));
    Ok(Volume {
        dims: grid.dims,
        origin: grid.origin,
        spacing: grid.spacing,
        scalars,
    })
}

/// Writes a legacy ASCII structured-points file with 17 significant digits.
pub fn write_structured_volume(vol: &Volume, title: &str, path: &Path) -> Result<(), CliError> {
    let n: usize = vol.dims.iter().product();
    if let Some((name, _)) = vol.scalars.iter().find(|(_, v)| v.len() != n || v.iter().any(|x| !x.is_finite())) {
        return Err(CliError::Numerical(format!("scalar `{name}` is not a finite field of {n} points")));
    }
    let mut s = String::new();
    let [dx, dy, dz] = vol.dims;
    let [ox, oy, oz] = vol.origin;
    let [hx, hy, hz] = vol.spacing;
    let _ = writeln!(s, "# vtk DataFile Version 3.0");
    let _ = writeln!(s, "{}", title.replace('\n', " "));
    let _ = writeln!(s, "ASCII");
    let _ = writeln!(s, "DATASET STRUCTURED_POINTS");
    let _ = writeln!(s, "DIMENSIONS {dx} {dy} {dz}");
    let _ = writeln!(s, "ORIGIN {ox:.16e} {oy:.16e} {oz:.16e}");
    let _ = writeln!(s, "SPACING {hx:.16e} {hy:.16e} {hz:.16e}");
    let _ = writeln!(s, "POINT_DATA {n}");
    for (name, values) in &vol.scalars {
        let _ = writeln!(s, "SCALARS {name} double 1");
        let _ = writeln!(s, "LOOKUP_TABLE default");
        for v in values {
            let _ = writeln!(s, "{v:.16e}");
        }
    }
    write_file(path, &s)
}

/// Reads a file written by [`write_structured_volume`].
pub fn read_structured_volume(path: &Path) -> Result<Volume, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_structured_volume(&text)
}

pub fn parse_structured_volume(text: &str) -> Result<Volume, CliError> {
    let bad = |m: &str| CliError::Io(format!("malformed volume file: {m}"));
    let mut lines = text.lines().skip(2);
    if lines.next().map(str::trim) != Some("ASCII") || lines.next().map(str::trim) != Some("DATASET STRUCTURED_POINTS") {
        return Err(bad("expected an ASCII structured-points header"));
    }
    let mut triple = |key: &str| -> Result<Vec<String>, CliError> {
        let line = lines.next().ok_or_else(|| bad(&format!("missing {key}")))?;
        let mut it = line.split_whitespace();
        if it.next() != Some(key) {
            return Err(bad(&format!("expected {key}")));
        }
        let v: Vec<String> = it.map(str::to_string).collect();
        if v.len() != 3 {
            return Err(bad(&format!("{key} needs three values")));
        }
        Ok(v)
    };
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad(&format!("bad number `{s}`")));
    let d = triple("DIMENSIONS")?;
    let o = triple("ORIGIN")?;
    let h = triple("SPACING")?;
    let mut dims = [0usize; 3];
    let (mut origin, mut spacing) = ([0.0; 3], [0.0; 3]);
    for a in 0..3 {
        dims[a] = d[a].parse().map_err(|_| bad("bad dimension"))?;
        origin[a] = num(&o[a])?;
        spacing[a] = num(&h[a])?;
    }
    let n: usize = dims.iter().product();
    let header = lines.next().ok_or_else(|| bad("missing POINT_DATA"))?;
    if header.split_whitespace().collect::<Vec<_>>() != ["POINT_DATA", &n.to_string()] {
        return Err(bad("POINT_DATA does not match DIMENSIONS"));
    }
    let mut scalars = Vec::new();
    while let Some(line) = lines.next() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() < 2 || parts[0] != "SCALARS" {
            return Err(bad(&format!("expected SCALARS, got `{line}`")));
        }
        if lines.next().map(str::trim) != Some("LOOKUP_TABLE default") {
            return Err(bad("expected LOOKUP_TABLE default"));
        }
        let values = (0..n)
            .map(|_| lines.next().ok_or_else(|| bad("truncated scalar block")).and_then(|l| num(l.trim())))
            .collect::<Result<Vec<f64>, _>>()?;
        scalars.push((parts[1].to_string(), values));
    }
    Ok(Volume {
        dims,
        origin,
        spacing,
        scalars,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Fallbacks {
    pub to_mp5: usize,
    pub to_first_order: usize,
}

/// Summary of one run, written as `manifest.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub case: String,
    pub scheme: String,
    pub dims: Vec<usize>,
    pub cfl: f64,
    pub t_end: f64,
    /// Time actually reached.
    pub time: f64,
    pub wall_seconds: f64,
    pub steps: usize,
    pub fallbacks: Fallbacks,
    /// Volume-weighted conserved totals at the start and the end.
    pub totals_initial: Vec<f64>,
    pub totals_final: Vec<f64>,
    /// `totals_final - totals_initial`.
    pub drift: Vec<f64>,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Io(e.to_string()))?;
        write_file(path, &(text + "\n"))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
