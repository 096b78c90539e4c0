//! Grid-convergence study on the smooth advection case.

use serde::Serialize;

use crate::cases::{build, Overrides};
use crate::error::{Error, Result};
use crate::integrator::DtLaw;
use crate::reconstruction::SchemeConfig;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OoaRow {
    pub n: usize,
    pub l2_error: f64,
    /// `log2(e_{N/2} / e_N)` against the previous row.
    pub order: Option<f64>,
    pub steps: usize,
    pub wall_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OoaTable {
    pub scheme: String,
    pub rows: Vec<OoaRow>,
}

/// Observed order between two errors at resolutions differing by `ratio`.
pub fn observed_order(coarse: f64, fine: f64, ratio: f64) -> f64 {
    (coarse / fine).ln() / ratio.ln()
}

/// Runs the advection case at each `N×N` resolution and reports the RMS
/// density error against the translated exact profile. `dt_coef` sets
/// `dt = dt_coef·h²`, capped by the CFL limit `cfl`.
pub fn ooa_harness(scheme: SchemeConfig, ns: &[usize], t_end: Option<f64>, dt_coef: f64, cfl: f64) -> Result<OoaTable> {
    if ns.is_empty() {
        return Err(Error::Config("no resolutions given".into()));
    }
    let mut rows: Vec<OoaRow> = Vec::with_capacity(ns.len());
    for &n in ns {
        let case = build(
            "ooa_advection",
            &Overrides {
                cells: Some(vec![n, n]),
                t_end,
                ..Default::default()
            },
        )?;
        let mut cfg = case.run_config(scheme);
        cfg.cfl = cfl;
        cfg.dt = DtLaw::DiffusiveScaling { coef: dt_coef };
        let mut solver = case.solver(cfg)?;
        let q0 = solver.to_conserved(&case.initial);
        let res = solver.run(q0)?;
        let prim = res.primitive(&solver)?;
        let exact = case.exact_field(res.time).expect("advection case has an exact solution");
        let mut sum = 0.0;
        for ijk in case.grid.interior() {
            let d = prim.state(ijk)[0] - exact.state(ijk)[0];
            sum += d * d;
        }
        let l2 = (sum / case.grid.interior_cells() as f64).sqrt();
        let order = rows
            .last()
            .map(|prev| observed_order(prev.l2_error, l2, n as f64 / prev.n as f64));
        rows.push(OoaRow {
            n,
            l2_error: l2,
            order,
            steps: res.steps,
            wall_seconds: res.wall_seconds,
        });
    }
    Ok(OoaTable {
        scheme: scheme.name().to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formula() {
        assert!((observed_order(1.6e-3, 1e-4, 2.0) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn short_run_converges() {
        let s = SchemeConfig::from_name("mp5", false).unwrap();
        let t = ooa_harness(s, &[8, 16], Some(0.05), 1.0, 0.2).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows[1].l2_error < t.rows[0].l2_error);
        assert!(t.rows[1].order.unwrap() > 2.0);
    }
}
