//! Acceptance checks, one line per criterion.
//!
//! Set `IGFV_SLOW=1` to include the long reproductions and `IGFV_STRICT=1`
//! to turn any failure into a non-zero exit status.

use std::time::Instant;

use igfv::analysis::spectral::modified_wavenumber_at;
use igfv::analysis::{
    density_gradient_indicator, enstrophy_of, kinetic_energy, ooa_harness, centerline_profile, ghia_re400_u,
    max_deviation, wall_profile, SpectralScheme,
};
use igfv::compact::{first_derivative, second_derivative, Closure};
use igfv::gas::is_admissible;
use igfv::reconstruction::build_eigensystem;
use igfv::viscous::{heat_flux, interpolate_flux_to_faces};
use igfv::*;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

type Check = std::result::Result<String, String>;

struct Report {
    failed: usize,
}

impl Report {
    fn run(&mut self, id: &str, name: &str, budget: Option<f64>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        let timing = match budget {
            Some(b) => format!("{secs:.1}s (budget {b}s)"),
            None => format!("{secs:.1}s"),
        };
        let over = budget.is_some_and(|b| secs > b);
        let (tag, detail) = match out {
            Ok(d) if over => ("FAIL", format!("{d}; runtime over budget")),
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            self.failed += 1;
        }
        println!("[{tag}] {id} {name}: {detail} [{timing}]");
    }

    fn skip(&self, id: &str, name: &str, why: &str) {
        println!("[SKIP] {id} {name}: {why}");
    }
}

fn flag(name: &str) -> bool {
    std::env::var(name).is_ok_and(|v| v == "1")
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

fn scheme(name: &str, case: &Case) -> std::result::Result<SchemeConfig, String> {
    SchemeConfig::from_name(name, case.gas.is_multi()).map_err(err)
}

fn cells(v: &[usize]) -> Overrides {
    Overrides {
        cells: Some(v.to_vec()),
        ..Default::default()
    }
}

/// Runs a built case with one scheme and returns the final primitive field.
fn run_case(case: &Case, name: &str) -> std::result::Result<(Field, RunResult), String> {
    let cfg = case.run_config(scheme(name, case)?);
    let mut solver = case.solver(cfg).map_err(err)?;
    let q0 = solver.to_conserved(&case.initial);
    let res = solver.run(q0).map_err(err)?;
    let prim = res.primitive(&solver).map_err(err)?;
    Ok((prim, res))
}

fn density_line(f: &Field) -> Vec<(f64, f64)> {
    f.grid.interior().map(|ijk| (f.grid.center(ijk)[0], f.state(ijk)[0])).collect()
}

fn c1_ooa() -> Check {
    let reference_errors = [
        ("mp5", [6.79e-3, 2.24e-4, 7.06e-6, 2.21e-7], (4.7, 5.3)),
        ("ig4mp", [4.65e-4, 4.37e-5, 2.30e-6, 1.74e-7], (3.4, 4.5)),
        ("ig6mp", [5.98e-4, 4.59e-5, 2.54e-6, 1.77e-7], (3.5, 4.5)),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, expected, (lo, hi)) in reference_errors {
        let s = SchemeConfig::from_name(name, false).map_err(err)?;
        let t = ooa_harness(s, &[10, 20, 40, 80], None, 1.0, 0.2).map_err(err)?;
        let order = t.rows.last().and_then(|r| r.order).unwrap_or(f64::NAN);
        let worst = t
            .rows
            .iter()
            .zip(expected)
            .map(|(r, p)| (r.l2_error / p).max(p / r.l2_error))
            .fold(0.0, f64::max);
        ok &= (lo..=hi).contains(&order) && worst <= 3.0;
        parts.push(format!("{name} order {order:.2} in [{lo}, {hi}], worst error ratio {worst:.2}"));
    }
    ensure(ok, parts.join("; "))
}

fn c2_spectral() -> Check {
    let mut worst_c5 = f64::NEG_INFINITY;
    let mut worst_muscl = f64::NEG_INFINITY;
    let mut worst_re = 0.0f64;
    for k in 0..=20 {
        let t = 0.5 + 0.1 * k as f64;
        let ig4 = modified_wavenumber_at(SpectralScheme::Ig4, t);
        let c5 = modified_wavenumber_at(SpectralScheme::C5, t);
        let mu = modified_wavenumber_at(SpectralScheme::MusclK3, t);
        worst_c5 = worst_c5.max(ig4.im.abs() - c5.im.abs());
        worst_muscl = worst_muscl.max(ig4.im.abs() - mu.im.abs());
        if t <= 1.5 + 1e-12 {
            worst_re = worst_re.max((ig4.re - c5.re).abs());
        }
    }
    ensure(
        worst_c5 <= 0.0 && worst_muscl <= 0.0 && worst_re <= 0.05,
        format!(
            "max(|Im IG4|-|Im C5|) {worst_c5:.3e}, max(|Im IG4|-|Im MUSCL|) {worst_muscl:.3e}, max|Re IG4-Re C5| {worst_re:.4}"
        ),
    )
}

fn c3_shock_tube(id: &str) -> Check {
    let case = build(id, &cells(&[200])).map_err(err)?;
    let h = case.grid.spacing[0];
    let exact = density_line(&case.exact_field(case.spec.t_end).ok_or("no exact solution")?);
    let (emin, emax) = exact.iter().fold((f64::MAX, f64::MIN), |(a, b), (_, r)| (a.min(*r), b.max(*r)));
    let slack = 0.005 * (emax - emin);
    let mut l1 = Vec::new();
    let mut bounded = true;
    for name in ["mp5", "ig4mp", "ig6mp"] {
        let (prim, _) = run_case(&case, name)?;
        let num = density_line(&prim);
        let e: f64 = num.iter().zip(&exact).map(|(a, b)| (a.1 - b.1).abs() * h).sum();
        if name != "mp5" {
            bounded &= num.iter().all(|(_, r)| *r >= emin - slack && *r <= emax + slack);
        }
        l1.push((name, e));
    }
    let base = l1[0].1;
    let ratios: Vec<f64> = l1[1..].iter().map(|(_, e)| e / base).collect();
    ensure(
        bounded && ratios.iter().all(|r| *r <= 1.5),
        format!(
            "L1 mp5 {:.3e}, ig4mp {:.3e} (x{:.2}), ig6mp {:.3e} (x{:.2}), within oscillation bound: {bounded}",
            base, l1[1].1, ratios[0], l1[2].1, ratios[1]
        ),
    )
}

fn c4_conservation() -> Check {
    let mut case = build("shock_entropy_2d", &cells(&[200, 40])).map_err(err)?;
    case.bcs = BoundarySet::periodic();
    let mut cfg = case.run_config(scheme("ig4mp", &case)?);
    cfg.max_steps = Some(50);
    let mut solver = case.solver(cfg).map_err(err)?;
    let q0 = solver.to_conserved(&case.initial);
    let before = q0.interior_sum();
    let abs: Vec<f64> = (0..5)
        .map(|k| case.grid.interior().map(|ijk| q0.state(ijk)[k].abs()).sum())
        .collect();
    let res = solver.run(q0).map_err(err)?;
    let after = res.conserved.interior_sum();
    // Mass, two momenta and energy, each against the total magnitude of
    // that variable (the y-momentum starts at zero).
    let slots = [(0, "mass"), (1, "x-mom"), (2, "y-mom"), (4, "energy")];
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for (k, label) in slots {
        let scale = if abs[k] > 0.0 { abs[k] } else { abs[0] };
        let d = (after[k] - before[k]).abs() / scale;
        worst = worst.max(d);
        parts.push(format!("{label} {d:.1e}"));
    }
    ensure(
        res.steps == 50 && worst < 1e-11,
        format!("{} steps, relative drift {}", res.steps, parts.join(", ")),
    )
}

fn c5_free_stream() -> Check {
    let gas = GasModel::single(1.4).with_viscosity(1e-2);
    let g = Grid::new(2, [64, 64, 1], [0.0; 3], [1.0, 1.0, 1.0]).map_err(err)?;
    let s = Primitive::single(1.3, 0.7, -0.4, 0.0, 2.1);
    let prim = Field::from_fn(g.clone(), 5, |_| s.0);
    let cfg = RunConfig::new(SchemeConfig::from_name("ig4mp", false).map_err(err)?, 0.2, 1.0);
    let mut solver = Solver::new(g, gas, BoundarySet::periodic(), vec![], cfg).map_err(err)?;
    let q = solver.to_conserved(&prim);
    let r = solver.compute_residual(&q, 0.0).map_err(err)?;
    let m = r.data.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    ensure(m < 1e-12, format!("max |residual| {m:.2e}"))
}

fn c6_interface() -> Check {
    let case = build("isolated_interface", &cells(&[50])).map_err(err)?;
    let (prim, res) = run_case(&case, "ig4mp")?;
    let p0 = 1.0 / 1.4;
    let (mut dp, mut du) = (0.0f64, 0.0f64);
    for ijk in case.grid.interior() {
        let s = prim.state(ijk);
        dp = dp.max((s[4] - p0).abs());
        du = du.max((s[2] - 0.5).abs());
    }
    ensure(
        dp < 1e-8 && du < 1e-8 && (res.time - 2.0).abs() < 1e-12,
        format!("t {:.3}, max |p-p0| {dp:.2e}, max |u-0.5| {du:.2e}", res.time),
    )
}

fn c7_multi(id: &str, n: usize) -> Check {
    let case = build(id, &cells(&[n])).map_err(err)?;
    let cfg = case.run_config(scheme("ig4mp", &case)?);
    let mut solver = case.solver(cfg).map_err(err)?;
    let gas = case.gas;
    let q0 = solver.to_conserved(&case.initial);
    let mut violations = 0usize;
    let mut alpha_range = (f64::MAX, f64::MIN);
    let res = solver
        .run_with(q0, |info| {
            for ijk in info.conserved.grid.interior() {
                let q = info.conserved.state(ijk);
                alpha_range = (alpha_range.0.min(q[5]), alpha_range.1.max(q[5]));
                let ok = cons_to_prim(&Conserved(q), &gas).is_ok_and(|p| is_admissible(&p.0, &gas));
                if !ok || !(0.0..=1.0).contains(&q[5]) {
                    violations += 1;
                }
            }
            Ok(true)
        })
        .map_err(err)?;
    ensure(
        violations == 0 && (res.time - case.spec.t_end).abs() < 1e-12,
        format!(
            "{} steps to t {:.3}, alpha1 in [{:.3e}, {:.6}], {violations} violations, fallbacks {}/{}",
            res.steps, res.time, alpha_range.0, alpha_range.1, res.fallbacks.to_mp5, res.fallbacks.to_first_order
        ),
    )
}

fn c8_blast_titarev() -> Check {
    let blast = build("blast", &Overrides::default()).map_err(err)?;
    let mut parts = Vec::new();
    for name in ["ig4mp", "mp5"] {
        let (prim, res) = run_case(&blast, name)?;
        let finite = prim.data.iter().all(|v| v.is_finite());
        if !finite {
            return Err(format!("blast with {name} produced non-finite values"));
        }
        parts.push(format!("blast {name} {} steps", res.steps));
    }
    let tt = build("titarev_toro", &Overrides::default()).map_err(err)?;
    let mut amp = Vec::new();
    for name in ["ig4mp", "mp5"] {
        let (prim, _) = run_case(&tt, name)?;
        let (lo, hi) = density_line(&prim)
            .into_iter()
            .filter(|(x, _)| (-3.0..=-1.0).contains(x))
            .fold((f64::MAX, f64::MIN), |(a, b), (_, r)| (a.min(r), b.max(r)));
        amp.push(0.5 * (hi - lo));
    }
    parts.push(format!("Titarev-Toro amplitude ig4mp {:.4} vs mp5 {:.4}", amp[0], amp[1]));
    ensure(amp[0] >= amp[1], parts.join("; "))
}

fn c9_tgv(n: usize) -> Check {
    let case = build("tgv3d", &cells(&[n])).map_err(err)?;
    let ke0 = kinetic_energy(&case.initial, &case.gas);
    let mut ke = Vec::new();
    let mut ens = Vec::new();
    for name in ["ig4", "c5", "ig4mp", "mp5"] {
        let (prim, _) = run_case(&case, name)?;
        ke.push(kinetic_energy(&prim, &case.gas) / ke0);
        ens.push(enstrophy_of(&prim, &case.bcs, &case.gas, false).map_err(err)?);
    }
    ensure(
        ke[0] >= ke[1] && ke[2] >= ke[3] && ens[2] >= ens[3],
        format!(
            "{n}^3 KE/KE0 ig4 {:.4} c5 {:.4} ig4mp {:.4} mp5 {:.4}; enstrophy ig4mp {:.4e} mp5 {:.4e}",
            ke[0], ke[1], ke[2], ke[3], ens[2], ens[3]
        ),
    )
}

fn c10_gradients() -> Check {
    let two_pi = 2.0 * std::f64::consts::PI;
    let errors = |n: usize, s: CompactScheme| -> std::result::Result<(f64, f64), String> {
        let h = two_pi / n as f64;
        let x: Vec<f64> = (0..n).map(|j| j as f64 * h).collect();
        let u: Vec<f64> = x.iter().map(|x| x.sin()).collect();
        let d1 = first_derivative(&u, h, s, Closure::Periodic).map_err(err)?;
        let d2 = second_derivative(&d1, h, s, Closure::Periodic).map_err(err)?;
        let e1 = x.iter().zip(&d1).map(|(x, d)| (d - x.cos()).abs()).fold(0.0, f64::max);
        let e2 = x.iter().zip(&d2).map(|(x, d)| (d + x.sin()).abs()).fold(0.0, f64::max);
        Ok((e1, e2))
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for (s, need) in [(CompactScheme::Cd4, 3.9), (CompactScheme::Cd6, 5.9)] {
        let (a1, a2) = errors(32, s)?;
        let (b1, b2) = errors(64, s)?;
        let (o1, o2) = ((a1 / b1).log2(), (a2 / b2).log2());
        ok &= o1 >= need && (o2 - o1).abs() <= 0.3;
        parts.push(format!("{s:?} orders {o1:.2}/{o2:.2}"));
    }

    // Face values from cell averages of polynomials on an open line.
    let n = 12;
    let h = 1.0 / n as f64;
    let mut face_err = [0.0f64; 2];
    for (slot, deg) in [(0, 5), (1, 3)] {
        let coef = [0.3, -1.1, 0.7, 2.0, -0.9, 1.3];
        let prim = |x: f64| (0..=deg).map(|k| coef[k] * x.powi(k as i32 + 1) / (k + 1) as f64).sum::<f64>();
        let val = |x: f64| (0..=deg).map(|k| coef[k] * x.powi(k as i32)).sum::<f64>();
        let line: Vec<f64> = (-1..=n as i32)
            .map(|j| (prim((j + 1) as f64 * h) - prim(j as f64 * h)) / h)
            .collect();
        let mut out = vec![0.0; n + 1];
        interpolate_flux_to_faces(&line, false, &mut out).map_err(err)?;
        let faces = if deg == 5 { 3..=n - 3 } else { 1..=n - 1 };
        face_err[slot] = faces.map(|f| (out[f] - val(f as f64 * h)).abs()).fold(0.0, f64::max);
    }
    ok &= face_err.iter().all(|e| *e < 1e-12);
    parts.push(format!("face interpolation error deg5 {:.1e}, deg3 {:.1e}", face_err[0], face_err[1]));

    let gas = GasModel::single(1.4).with_viscosity(0.01);
    let (rho, t) = (1.7, 2.3);
    let grad_rho = [0.4, -1.2, 0.9];
    let grad_p = grad_rho.map(|g| g * t);
    let q = heat_flux(grad_p, grad_rho, rho, rho * t, &gas).map_err(err)?;
    let qm = q.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    ok &= qm < 1e-14;
    parts.push(format!("heat flux at constant T {qm:.1e}"));
    ensure(ok, parts.join("; "))
}

fn c11_eigen() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    let mut count = 0;
    for multi in [false, true] {
        let gas = if multi { GasModel::multi(1.4, 1.6) } else { GasModel::single(1.4) };
        let nv = gas.nvars();
        for _ in 0..1000 {
            let mut state = || {
                if multi {
                    let a: f64 = rng.random_range(0.0..1.0);
                    Primitive::multi(
                        a * rng.random_range(0.01..5.0),
                        (1.0 - a) * rng.random_range(0.01..5.0),
                        rng.random_range(-2.0..2.0),
                        rng.random_range(-2.0..2.0),
                        rng.random_range(0.05..20.0),
                        a,
                    )
                } else {
                    Primitive::single(
                        rng.random_range(0.05..10.0),
                        rng.random_range(-3.0..3.0),
                        rng.random_range(-3.0..3.0),
                        rng.random_range(-3.0..3.0),
                        rng.random_range(0.05..50.0),
                    )
                }
            };
            let (l, r) = (state(), state());
            for axis in 0..2 {
                let mut n = [0.0; 3];
                n[axis] = 1.0;
                let e = build_eigensystem(&l.0, &r.0, n, &gas).map_err(err)?;
                let (lm, rm) = (e.left_matrix(), e.right_matrix());
                for i in 0..nv {
                    for j in 0..nv {
                        let s: f64 = (0..nv).map(|k| lm[i][k] * rm[k][j]).sum();
                        worst = worst.max((s - if i == j { 1.0 } else { 0.0 }).abs());
                    }
                }
                count += 1;
            }
        }
    }
    ensure(worst <= 1e-12, format!("{count} systems, max |L·R - I| {worst:.2e}"))
}

fn c12_viscous_shock_tube() -> Check {
    let case = build("viscous_shock_tube", &cells(&[375, 188])).map_err(err)?;
    let (prim, res) = run_case(&case, "ig4mp")?;
    let wall = wall_profile(&prim, 0, 0).map_err(err)?;
    let rho = wall.var(0);
    let (mut peak_x, mut peak) = (0.0, f64::MIN);
    for (x, r) in wall.coord.iter().zip(&rho) {
        if *x >= 0.5 && *r > peak {
            peak = *r;
            peak_x = *x;
        }
    }
    ensure(
        (0.55..=0.75).contains(&peak_x),
        format!("{} steps, wall density peak {peak:.2} at x {peak_x:.3}", res.steps),
    )
}

fn c12_cavity() -> Check {
    let case = build("lid_cavity", &cells(&[128, 128])).map_err(err)?;
    let (prim, res) = run_case(&case, "ig4mp")?;
    let prof = centerline_profile(&prim, 1).map_err(err)?;
    let dev = max_deviation(&prof.coord, &prof.var(1), (0.0, 0.0, 1.0, 1.0), &ghia_re400_u());
    ensure(
        dev <= 0.03,
        format!("t {:.1}, steady {}, max centreline deviation {dev:.4}", res.time, res.reached_steady),
    )
}

fn c12_phi(id: &str, n: &[usize], t_end: f64) -> Check {
    let ov = Overrides {
        cells: Some(n.to_vec()),
        t_end: Some(t_end),
        ..Default::default()
    };
    let case = build(id, &ov).map_err(err)?;
    let (prim, _) = run_case(&case, "ig4mp")?;
    let phi = density_gradient_indicator(&prim, &case.bcs, &case.gas).map_err(err)?;
    let (lo, hi) = phi.iter().fold((f64::MAX, f64::MIN), |(a, b), v| (a.min(*v), b.max(*v)));
    let e = std::f64::consts::E;
    ensure(
        lo >= 1.0 - 1e-12 && hi <= e + 1e-12,
        format!("phi in [{lo:.4}, {hi:.4}]"),
    )
}

fn main() {
    let slow = flag("IGFV_SLOW");
    let mut r = Report { failed: 0 };
    r.run("1", "order of accuracy", Some(120.0), c1_ooa);
    r.run("2", "spectral properties", Some(1.0), c2_spectral);
    r.run("3a", "sod", Some(10.0), || c3_shock_tube("sod"));
    r.run("3b", "lax", Some(10.0), || c3_shock_tube("lax"));
    r.run("4", "conservation", Some(30.0), c4_conservation);
    r.run("5", "free-stream preservation", Some(1.0), c5_free_stream);
    r.run("6", "isolated interface", Some(5.0), c6_interface);
    r.run("7a", "two-fluid shock tube", Some(10.0), || c7_multi("ms_shock_tube", 100));
    r.run("7b", "shock/curtain", Some(10.0), || c7_multi("shock_curtain", 200));
    r.run("8", "blast and Titarev-Toro", Some(120.0), c8_blast_titarev);
    r.run("9", "Taylor-Green dissipation ordering", Some(900.0), || c9_tgv(32));
    r.run("10", "gradient oracles", Some(10.0), c10_gradients);
    r.run("11", "eigenvector identity", Some(1.0), c11_eigen);
    if slow {
        r.run("9s", "Taylor-Green at 64^3", None, || c9_tgv(64));
        r.run("12a", "viscous shock tube", None, c12_viscous_shock_tube);
        r.run("12b", "lid-driven cavity", None, c12_cavity);
        r.run("12c", "shock/cylinder phi", None, || c12_phi("shock_cylinder", &[260, 72], 1.0));
        r.run("12d", "Richtmyer-Meshkov phi", None, || c12_phi("rmi_viscous", &[512, 32], 1.0));
    } else {
        for (id, name) in [
            ("9s", "Taylor-Green at 64^3"),
            ("12", "viscous shock tube, cavity, phi fields"),
        ] {
            r.skip(id, name, "slow; set IGFV_SLOW=1");
        }
    }
    println!("{} failed", r.failed);
    if r.failed > 0 && flag("IGFV_STRICT") {
        std::process::exit(1);
    }
}
