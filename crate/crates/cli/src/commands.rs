//! Subcommand implementations.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use igfv::analysis::spectral::modified_wavenumber;
use igfv::analysis::{ooa_harness, theta_samples, OoaTable, SpectralScheme};
use igfv::{cases, Field, SchemeConfig, CASE_IDS};

use crate::config::{resolve, ResolvedRun, Settings};
use crate::output::{line_profile, var_names, volume_of, write_line_csv, write_structured_volume, Fallbacks, RunManifest};
use crate::CliError;

fn io(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Volume-weighted totals of the conserved variables.
pub fn conserved_totals(q: &Field) -> Vec<f64> {
    let vol = q.grid.cell_volume();
    q.interior_sum()[..q.nvars].iter().map(|s| s * vol).collect()
}

/// Writes one snapshot and returns its path.
fn write_snapshot(prim: &Field, run: &ResolvedRun, tag: &str, time: f64) -> Result<PathBuf, CliError> {
    let id = run.case.spec.id;
    let gas = &run.case.gas;
    if prim.grid.ndim == 1 {
        let path = run.out.join(format!("{id}_{tag}.csv"));
        write_line_csv(&line_profile(prim), var_names(gas), &path)?;
        Ok(path)
    } else {
        let path = run.out.join(format!("{id}_{tag}.vtk"));
        let vol = volume_of(prim, &run.case.bcs, gas)?;
        let title = format!("{id} scheme={} t={time:.17e}", run.config.scheme.name());
        write_structured_volume(&vol, &title, &path)?;
        Ok(path)
    }
}

/// Executes a run, writes its outputs and `manifest.json`, and returns the
/// manifest.
pub fn run(settings: &Settings) -> Result<RunManifest, CliError> {
    let run = resolve(settings)?;
    std::fs::create_dir_all(&run.out).map_err(|e| io(&run.out, e))?;
    let mut solver = run.case.solver(run.config.clone())?;
    let q0 = solver.to_conserved(&run.case.initial);
    let totals_initial = conserved_totals(&q0);
    let mut outputs = Vec::new();

    let every = run.write_every;
    let mut snapshots: Vec<(usize, f64, Field)> = Vec::new();
    let res = solver.run_with(q0, |info| {
        if every > 0 && info.step % every == 0 {
            snapshots.push((info.step, info.time, info.conserved.clone()));
        }
        Ok(true)
    })?;
    for (step, time, q) in snapshots {
        let prim = solver.primitive_with_ghosts(&q, time)?;
        outputs.push(write_snapshot(&prim, &run, &format!("{step:06}"), time)?);
    }
    let prim = res.primitive(&solver)?;
    outputs.push(write_snapshot(&prim, &run, "final", res.time)?);

    let totals_final = conserved_totals(&res.conserved);
    let drift = totals_final.iter().zip(&totals_initial).map(|(a, b)| a - b).collect();
    let grid = &run.case.grid;
    let manifest = RunManifest {
        case: run.case.spec.id.to_string(),
        scheme: run.config.scheme.name().to_string(),
        dims: grid.dims[..grid.ndim].to_vec(),
        cfl: run.config.cfl,
        t_end: run.config.t_end,
        time: res.time,
        wall_seconds: res.wall_seconds,
        steps: res.steps,
        fallbacks: Fallbacks {
            to_mp5: res.fallbacks.to_mp5,
            to_first_order: res.fallbacks.to_first_order,
        },
        totals_initial,
        totals_final,
        drift,
        outputs,
    };
    manifest.write(&run.out.join("manifest.json"))?;
    Ok(manifest)
}

/// Options of the convergence study.
#[derive(Clone, Debug, PartialEq)]
pub struct OoaOptions {
    pub schemes: Vec<String>,
    pub ns: Vec<usize>,
    pub t_end: Option<f64>,
    pub dt_coef: f64,
    pub cfl: f64,
}

impl Default for OoaOptions {
    fn default() -> Self {
        OoaOptions {
            schemes: vec!["mp5".into(), "ig6mp".into(), "ig4mp".into()],
            ns: vec![10, 20, 40, 80],
            t_end: None,
            dt_coef: 1.0,
            cfl: 0.2,
        }
    }
}

pub fn ooa(opts: &OoaOptions) -> Result<Vec<OoaTable>, CliError> {
    if opts.schemes.is_empty() {
        return Err(CliError::Config("no schemes given".into()));
    }
    let mut ns = opts.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    if ns.first().is_some_and(|n| *n < 4) {
        return Err(CliError::Config("resolutions must be at least 4".into()));
    }
    opts.schemes
        .iter()
        .map(|s| {
            let cfg = SchemeConfig::from_name(s, false)?;
            Ok(ooa_harness(cfg, &ns, opts.t_end, opts.dt_coef, opts.cfl)?)
        })
        .collect()
}

/// `6.79E-03` style: two decimals and a signed two-digit exponent.
pub fn sci(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.2E}");
    }
    let s = format!("{x:.2E}");
    let (m, e) = s.split_once('E').expect("formatted with an exponent");
    let e: i32 = e.parse().expect("integer exponent");
    format!("{m}E{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

/// Error/order table with one row per resolution and an error and order
/// column per scheme.
pub fn format_ooa_table(tables: &[OoaTable]) -> String {
    let mut s = String::new();
    let _ = write!(s, "{:>5}", "N");
    for t in tables {
        let _ = write!(s, "  {:>18}", t.scheme.to_uppercase());
    }
    s.push('\n');
    let _ = write!(s, "{:>5}", "");
    for _ in tables {
        let _ = write!(s, "  {:>10} {:>7}", "L2 error", "order");
    }
    s.push('\n');
    let rows = tables.iter().map(|t| t.rows.len()).max().unwrap_or(0);
    for r in 0..rows {
        let n = tables.iter().find_map(|t| t.rows.get(r).map(|row| row.n)).unwrap_or(0);
        let _ = write!(s, "{n:>5}");
        for t in tables {
            match t.rows.get(r) {
                Some(row) => {
                    let order = row.order.map(|o| format!("{o:.2}")).unwrap_or_else(|| "-".into());
                    let _ = write!(s, "  {:>10} {:>7}", sci(row.l2_error), order);
                }
                None => {
                    let _ = write!(s, "  {:>18}", "");
                }
            }
        }
        s.push('\n');
    }
    s
}

/// Writes `spectrum_<scheme>.csv` with `theta,re_k,im_k` for each scheme.
pub fn spectra(schemes: &[String], samples: usize, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    if samples == 0 {
        return Err(CliError::Config("samples must be positive".into()));
    }
    let parsed = schemes
        .iter()
        .map(|s| SpectralScheme::from_name(s))
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(CliError::Config("no schemes given".into()));
    }
    std::fs::create_dir_all(out).map_err(|e| io(out, e))?;
    let thetas = theta_samples(samples);
    let mut paths = Vec::new();
    for s in parsed {
        let curve = modified_wavenumber(s, &thetas)?;
        let mut text = String::from("theta,re_k,im_k\n");
        for (t, k) in curve.theta.iter().zip(&curve.k) {
            let _ = writeln!(text, "{t:.16e},{:.16e},{:.16e}", k.re, k.im);
        }
        let path = out.join(format!("spectrum_{}.csv", s.name()));
        std::fs::write(&path, text).map_err(|e| io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}

/// One line per case: id and description.
pub fn list_cases() -> String {
    CASE_IDS
        .iter()
        .map(|id| format!("{id:<20} {}\n", cases::describe(id).unwrap_or("")))
        .collect()
}
