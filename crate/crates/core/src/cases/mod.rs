//! Catalog of benchmark problems.
//!
//! Every case is built from its initial condition sampled at cell centres.
//! Cell counts, end time and transport coefficients can be overridden.

pub mod exact;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;
use statrs::function::erf::erf;

use crate::boundary::{Boundary, BoundarySet, ExactFn};
use crate::error::{Error, Result};
use crate::gas::{is_admissible, GasModel, Primitive, StateVec};
use crate::grid::{Field, Grid};
use crate::integrator::{DtLaw, RunConfig, Solver, Source, SteadyCriterion};
use crate::reconstruction::SchemeConfig;

pub use exact::{exact_riemann_reference, ExactRiemann, RiemannState};

/// Case identifiers in catalog order.
pub const CASE_IDS: [&str; 19] = [
    "sod",
    "lax",
    "shu_osher",
    "blast",
    "titarev_toro",
    "shock_entropy_2d",
    "riemann2d_c3",
    "rayleigh_taylor",
    "kelvin_helmholtz",
    "dmr",
    "tgv3d",
    "ooa_advection",
    "lid_cavity",
    "viscous_shock_tube",
    "ms_shock_tube",
    "isolated_interface",
    "shock_curtain",
    "shock_cylinder",
    "rmi_viscous",
];

/// One-line description of a case.
pub fn describe(id: &str) -> Option<&'static str> {
    Some(match id {
        "sod" => "Sod shock tube, 1D",
        "lax" => "Lax shock tube, 1D",
        "shu_osher" => "Shu-Osher shock/density-wave interaction, 1D",
        "blast" => "Woodward-Colella interacting blast waves, 1D",
        "titarev_toro" => "Titarev-Toro high-frequency shock/entropy interaction, 1D",
        "shock_entropy_2d" => "oblique shock/entropy-wave interaction, 2D",
        "riemann2d_c3" => "four-quadrant Riemann problem, configuration 3, 2D",
        "rayleigh_taylor" => "Rayleigh-Taylor instability with gravity, 2D",
        "kelvin_helmholtz" => "periodic Kelvin-Helmholtz shear layers, 2D",
        "dmr" => "double Mach reflection, 2D",
        "tgv3d" => "inviscid Taylor-Green vortex, 3D",
        "ooa_advection" => "smooth density-wave advection for order studies, 2D",
        "lid_cavity" => "lid-driven cavity at low Mach number, 2D",
        "viscous_shock_tube" => "viscous shock tube with wall boundary layer, 2D",
        "ms_shock_tube" => "two-fluid shock tube, 1D",
        "isolated_interface" => "isolated material interface advection, 1D",
        "shock_curtain" => "shock interaction with a helium curtain, 1D",
        "shock_cylinder" => "shock interaction with a helium cylinder, 2D",
        "rmi_viscous" => "viscous Richtmyer-Meshkov instability, 2D",
        _ => return None,
    })
}

/// Static description of a case.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseSpec {
    pub id: &'static str,
    pub ndim: usize,
    pub dims: [usize; 3],
    pub lo: [f64; 3],
    pub hi: [f64; 3],
    pub gas: GasModel,
    pub t_end: f64,
    pub cfl: f64,
    pub sources: Vec<Source>,
    /// Named case parameters, e.g. `sigma` for the shear layers.
    pub params: BTreeMap<&'static str, f64>,
}

/// User overrides applied on top of the catalog defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Overrides {
    /// One count per active axis, or a single count for the first axis with
    /// the others scaled to keep the default aspect ratio.
    pub cells: Option<Vec<usize>>,
    pub t_end: Option<f64>,
    pub mu: Option<f64>,
    pub pr: Option<f64>,
    /// Interface smoothing width for the Richtmyer-Meshkov case.
    pub e_i: Option<f64>,
    /// Reynolds number for the cavity and the viscous shock tube.
    pub re: Option<f64>,
}

/// A fully built case.
#[derive(Clone, Debug)]
pub struct Case {
    pub spec: CaseSpec,
    pub grid: Grid,
    pub gas: GasModel,
    pub bcs: BoundarySet,
    /// Primitive initial field (interior cells).
    pub initial: Field,
    pub dt: DtLaw,
    pub steady: Option<SteadyCriterion>,
    /// Exact primitive solution, where one is known.
    pub exact: Option<ExactSolution>,
}

#[derive(Clone)]
pub struct ExactSolution(pub ExactFn);

impl std::fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExactSolution")
    }
}

impl ExactSolution {
    pub fn eval(&self, x: [f64; 3], t: f64) -> StateVec {
        (self.0)(x, t)
    }
}

impl Case {
    /// Run configuration with the case's end time, CFL and time-step law.
    pub fn run_config(&self, scheme: SchemeConfig) -> RunConfig {
        let mut cfg = RunConfig::new(scheme, self.spec.cfl, self.spec.t_end);
        cfg.dt = self.dt;
        cfg.steady = self.steady;
        cfg
    }

    pub fn solver(&self, cfg: RunConfig) -> Result<Solver> {
        Solver::new(self.grid.clone(), self.gas, self.bcs.clone(), self.spec.sources.clone(), cfg)
    }

    /// Exact primitive field at time `t`, when available.
    pub fn exact_field(&self, t: f64) -> Option<Field> {
        let ex = self.exact.as_ref()?;
        Some(Field::from_fn(self.grid.clone(), self.gas.nvars(), |x| ex.eval(x, t)))
    }
}

fn p1(rho: f64, u: f64, p: f64) -> StateVec {
    Primitive::single(rho, u, 0.0, 0.0, p).0
}

fn p2(rho: f64, u: f64, v: f64, p: f64) -> StateVec {
    Primitive::single(rho, u, v, 0.0, p).0
}

fn pm(a1r1: f64, a2r2: f64, u: f64, v: f64, p: f64, alpha1: f64) -> StateVec {
    Primitive::multi(a1r1, a2r2, u, v, p, alpha1).0
}

/// Blending weight of the right state at signed distance `d` from an
/// interface.
pub fn smoothing_weight(d: f64, e_i: f64, dx: f64, dy: f64) -> f64 {
    0.5 * (1.0 + erf(d / (e_i * (dx * dy).sqrt())))
}

/// Blends `left` and `right` primitive states across an interface. Cells where
/// `distance` returns `None` are left unchanged; elsewhere the signed distance
/// (positive on the right side) sets the weight.
pub fn smooth_interface(
    field: &mut Field,
    distance: impl Fn([f64; 3]) -> Option<f64>,
    e_i: f64,
    left: &StateVec,
    right: &StateVec,
) -> Result<()> {
    if !(e_i > 0.0) {
        return Err(Error::Config(format!("smoothing width must be positive, got {e_i}")));
    }
    let grid = field.grid.clone();
    let dy = if grid.ndim > 1 { grid.spacing[1] } else { grid.spacing[0] };
    let nv = field.nvars;
    for ijk in grid.interior() {
        if let Some(d) = distance(grid.center(ijk)) {
            let f = smoothing_weight(d, e_i, grid.spacing[0], dy);
            let c = field.cell_mut(ijk);
            for k in 0..nv {
                c[k] = left[k] * (1.0 - f) + right[k] * f;
            }
        }
    }
    Ok(())
}

/// Signed distance to the curve `x = xc(y)`, periodic in `y` with unit
/// period, positive where `x > xc(y)`.
fn distance_to_curve(p: [f64; 3], xc: impl Fn(f64) -> f64) -> f64 {
    let d2 = |s: f64| (p[0] - xc(s)).powi(2) + (p[1] - s).powi(2);
    let samples = 400;
    let mut best = p[1];
    let mut best_d = d2(best);
    for k in 0..=samples {
        let s = p[1] - 0.5 + k as f64 / samples as f64;
        let v = d2(s);
        if v < best_d {
            best = s;
            best_d = v;
        }
    }
    // Golden-section refinement around the best sample.
    let (mut a, mut b) = (best - 1.0 / samples as f64, best + 1.0 / samples as f64);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if d2(c) < d2(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let dist = d2(0.5 * (a + b)).min(best_d).sqrt();
    if p[0] >= xc(p[1]) {
        dist
    } else {
        -dist
    }
}

struct Layout {
    ndim: usize,
    dims: [usize; 3],
    lo: [f64; 3],
    hi: [f64; 3],
}

fn layout_1d(n: usize, lo: f64, hi: f64) -> Layout {
    Layout {
        ndim: 1,
        dims: [n, 1, 1],
        lo: [lo, 0.0, 0.0],
        hi: [hi, 1.0, 1.0],
    }
}

fn layout_2d(nx: usize, ny: usize, lo: [f64; 2], hi: [f64; 2]) -> Layout {
    Layout {
        ndim: 2,
        dims: [nx, ny, 1],
        lo: [lo[0], lo[1], 0.0],
        hi: [hi[0], hi[1], 1.0],
    }
}

fn apply_cells(l: &mut Layout, cells: &Option<Vec<usize>>) -> Result<()> {
    let Some(c) = cells else { return Ok(()) };
    if c.iter().any(|&n| n == 0) {
        return Err(Error::Config("cell counts must be positive".into()));
    }
    if c.len() == l.ndim {
        l.dims[..l.ndim].copy_from_slice(c);
    } else if c.len() == 1 {
        let base = l.dims[0] as f64;
        for a in 1..l.ndim {
            l.dims[a] = ((l.dims[a] as f64 * c[0] as f64 / base).round() as usize).max(1);
        }
        l.dims[0] = c[0];
    } else {
        return Err(Error::Config(format!(
            "expected 1 or {} cell counts, got {}",
            l.ndim,
            c.len()
        )));
    }
    Ok(())
}

/// Builds case `id` with `ov` applied.
pub fn build(id: &str, ov: &Overrides) -> Result<Case> {
    let id: &'static str = CASE_IDS
        .iter()
        .copied()
        .find(|c| *c == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))?;
    let mut params = BTreeMap::new();
    let mut sources = Vec::new();
    let mut dt = DtLaw::Cfl;
    let mut steady = None;
    let mut exact: Option<ExactSolution> = None;
    let outflow = || BoundarySet::uniform(Boundary::Outflow);
    let mut cfl = 0.2;

    let single14 = GasModel::single(1.4);
    type Ic = Box<dyn Fn([f64; 3]) -> StateVec>;
    let (mut layout, mut gas, t_end, bcs, ic): (Layout, GasModel, f64, BoundarySet, Ic) = match id {
        "sod" | "lax" => {
            let (l, r, t) = if id == "sod" {
                (RiemannState::new(0.125, 0.0, 0.1), RiemannState::new(1.0, 0.0, 1.0), 0.2)
            } else {
                (RiemannState::new(0.445, 0.698, 3.528), RiemannState::new(0.5, 0.0, 0.571), 0.14)
            };
            let sol = ExactRiemann::solve(l, r, 1.4)?;
            exact = Some(ExactSolution(Arc::new(move |x: [f64; 3], t: f64| {
                let s = if t > 0.0 {
                    sol.sample((x[0] - 0.5) / t)
                } else if x[0] < 0.5 {
                    l
                } else {
                    r
                };
                p1(s.rho, s.u, s.p)
            })));
            let ic: Ic = Box::new(move |x| {
                let s = if x[0] < 0.5 { l } else { r };
                p1(s.rho, s.u, s.p)
            });
            (layout_1d(200, 0.0, 1.0), single14, t, outflow(), ic)
        }
        "shu_osher" => (
            layout_1d(300, -5.0, 5.0),
            single14,
            1.8,
            outflow(),
            Box::new(|x| {
                if x[0] < -4.0 {
                    p1(3.857143, 2.629369, 10.3333)
                } else {
                    p1(1.0 + 0.2 * (5.0 * x[0]).sin(), 0.0, 1.0)
                }
            }),
        ),
        "blast" => (
            layout_1d(800, 0.0, 1.0),
            single14,
            0.038,
            BoundarySet::uniform(Boundary::ReflectiveWall),
            Box::new(|x| {
                let p = if x[0] < 0.1 {
                    1000.0
                } else if x[0] < 0.9 {
                    0.01
                } else {
                    100.0
                };
                p1(1.0, 0.0, p)
            }),
        ),
        "titarev_toro" => (
            layout_1d(1000, -5.0, 5.0),
            single14,
            5.0,
            outflow(),
            Box::new(|x| {
                if x[0] < -4.5 {
                    p1(1.515695, 0.523326, 1.805)
                } else {
                    p1(1.0 + 0.1 * (20.0 * PI * x[0]).sin(), 0.0, 1.0)
                }
            }),
        ),
        "shock_entropy_2d" => {
            let theta = PI / 6.0;
            params.insert("theta", theta);
            (
                layout_2d(400, 80, [-5.0, -1.0], [5.0, 1.0]),
                single14,
                1.8,
                outflow().set_axis(1, Boundary::Periodic),
                Box::new(move |x| {
                    if x[0] <= -4.0 {
                        p2(3.857143, 2.629369, 0.0, 10.3333)
                    } else {
                        p2(1.0 + 0.2 * (10.0 * x[0] * theta.cos() + 10.0 * x[1] * theta.sin()).sin(), 0.0, 0.0, 1.0)
                    }
                }),
            )
        }
        "riemann2d_c3" => {
            let s = 4.0 / 11f64.sqrt();
            (
                layout_2d(400, 400, [0.0, 0.0], [1.0, 1.0]),
                single14,
                0.8,
                outflow(),
                Box::new(move |x| match (x[0] > 0.8, x[1] > 0.8) {
                    (true, true) => p2(1.5, 0.0, 0.0, 1.5),
                    (false, true) => p2(33.0 / 62.0, s, 0.0, 0.3),
                    (false, false) => p2(77.0 / 558.0, s, s, 9.0 / 310.0),
                    (true, false) => p2(33.0 / 62.0, 0.0, s, 0.3),
                }),
            )
        }
        "rayleigh_taylor" => {
            let gamma = 5.0 / 3.0;
            sources.push(Source::Gravity([0.0, 1.0, 0.0]));
            let bcs = BoundarySet::uniform(Boundary::ReflectiveWall)
                .set(1, 0, Boundary::Dirichlet(Primitive::single(2.0, 0.0, 0.0, 0.0, 1.0)))
                .set(1, 1, Boundary::Dirichlet(Primitive::single(1.0, 0.0, 0.0, 0.0, 2.5)));
            (
                layout_2d(120, 480, [0.0, 0.0], [0.25, 1.0]),
                GasModel::single(gamma),
                1.95,
                bcs,
                Box::new(move |x| {
                    let (rho, p) = if x[1] < 0.5 { (2.0, 2.0 * x[1] + 1.0) } else { (1.0, x[1] + 1.5) };
                    let c = (gamma * p / rho).sqrt();
                    p2(rho, 0.0, -0.025 * c * (8.0 * PI * x[0]).cos(), p)
                }),
            )
        }
        "kelvin_helmholtz" => {
            let sigma = 0.05 / 2f64.sqrt();
            params.insert("sigma", sigma);
            (
                layout_2d(512, 512, [0.0, 0.0], [1.0, 1.0]),
                single14,
                0.8,
                BoundarySet::periodic(),
                Box::new(move |x| {
                    let inner = x[1] > 0.25 && x[1] <= 0.75;
                    let bump = |y0: f64| (-(x[1] - y0).powi(2) / (2.0 * sigma * sigma)).exp();
                    let v = 0.1 * (4.0 * PI * x[0]).sin() * (bump(0.75) + bump(0.25));
                    if inner {
                        p2(2.0, 0.5, v, 2.5)
                    } else {
                        p2(1.0, -0.5, v, 2.5)
                    }
                }),
            )
        }
        "dmr" => {
            let a = PI / 6.0;
            let post = Primitive::single(8.0, 8.25 * a.cos(), -8.25 * a.sin(), 0.0, 116.5);
            let pre = Primitive::single(1.4, 0.0, 0.0, 0.0, 1.0);
            let x0 = 1.0 / 6.0;
            params.insert("x_reflect", x0);
            let bcs = outflow()
                .set(0, 0, Boundary::Dirichlet(post))
                .set(1, 0, Boundary::DmrBottom { post, x_reflect: x0 })
                .set(1, 1, Boundary::DmrTop { post, pre });
            (
                layout_2d(768, 256, [0.0, 0.0], [3.0, 1.0]),
                single14,
                0.2,
                bcs,
                Box::new(move |x| {
                    if x[0] < x0 + x[1] / (PI / 3.0).tan() {
                        post.0
                    } else {
                        pre.0
                    }
                }),
            )
        }
        "tgv3d" => (
            Layout {
                ndim: 3,
                dims: [64, 64, 64],
                lo: [0.0; 3],
                hi: [2.0 * PI; 3],
            },
            GasModel::single(5.0 / 3.0),
            10.0,
            BoundarySet::periodic(),
            Box::new(|x| {
                let (sx, cx) = x[0].sin_cos();
                let (sy, cy) = x[1].sin_cos();
                let cz = x[2].cos();
                let p = 100.0 + ((2.0 * x[2]).cos() + 2.0) * ((2.0 * x[0]).cos() + (2.0 * x[1]).cos()) / 16.0 - 2.0 / 16.0;
                Primitive::single(1.0, sx * cy * cz, -cx * sy * cz, 0.0, p).0
            }),
        ),
        "ooa_advection" => {
            let k = PI;
            params.insert("wavenumber", k);
            let f: ExactFn = Arc::new(move |x: [f64; 3], t: f64| {
                p2(1.0 + 0.5 * (k * (x[0] + x[1] - 2.0 * t)).sin(), 1.0, 1.0, 1.0)
            });
            exact = Some(ExactSolution(f.clone()));
            dt = DtLaw::DiffusiveScaling { coef: 1.0 };
            params.insert("dt_coef", 1.0);
            (
                layout_2d(20, 20, [-1.0, -1.0], [1.0, 1.0]),
                single14,
                2.0,
                BoundarySet::periodic(),
                Box::new(move |x| f(x, 0.0)),
            )
        }
        "lid_cavity" => {
            let re = ov.re.unwrap_or(400.0);
            let mach = 0.1;
            params.insert("re", re);
            params.insert("mach", mach);
            steady = Some(SteadyCriterion { tol: 1e-9, window: 400 });
            let gamma = 1.4;
            let p = 1.0 / (gamma * mach * mach);
            let wall = Boundary::NoSlipWall { wall_velocity: [0.0; 3] };
            let bcs = BoundarySet::uniform(wall).set(1, 1, Boundary::NoSlipWall { wall_velocity: [1.0, 0.0, 0.0] });
            (
                layout_2d(128, 128, [0.0, 0.0], [1.0, 1.0]),
                GasModel::single(gamma).with_viscosity(1.0 / re),
                200.0,
                bcs,
                Box::new(move |_| p2(1.0, 0.0, 0.0, p)),
            )
        }
        "viscous_shock_tube" => {
            let re = ov.re.unwrap_or(500.0);
            params.insert("re", re);
            let gamma = 1.4;
            let wall = Boundary::NoSlipWall { wall_velocity: [0.0; 3] };
            let bcs = BoundarySet::uniform(wall.clone())
                .set(0, 0, Boundary::Outflow)
                .set(1, 1, Boundary::ReflectiveWall);
            (
                layout_2d(750, 375, [0.0, 0.0], [1.0, 0.5]),
                GasModel::single(gamma).with_viscosity(1.0 / re),
                1.0,
                bcs,
                Box::new(move |x| {
                    if x[0] < 0.5 {
                        p2(120.0, 0.0, 0.0, 120.0 / gamma)
                    } else {
                        p2(1.2, 0.0, 0.0, 1.2 / gamma)
                    }
                }),
            )
        }
        "ms_shock_tube" => {
            cfl = 0.1;
            (
                layout_1d(100, -0.5, 0.5),
                GasModel::multi(1.4, 1.6),
                0.2,
                outflow(),
                Box::new(|x| {
                    if x[0] < 0.0 {
                        pm(1.0, 0.0, 0.0, 0.0, 1.0, 1.0)
                    } else {
                        pm(0.0, 0.125, 0.0, 0.0, 0.1, 0.0)
                    }
                }),
            )
        }
        "isolated_interface" => {
            cfl = 0.1;
            let ic = |x: f64| {
                let x = x.rem_euclid(1.0);
                if (0.25..0.75).contains(&x) {
                    pm(0.0, 10.0, 0.5, 0.0, 1.0 / 1.4, 0.0)
                } else {
                    pm(1.0, 0.0, 0.5, 0.0, 1.0 / 1.4, 1.0)
                }
            };
            exact = Some(ExactSolution(Arc::new(move |x: [f64; 3], t: f64| ic(x[0] - 0.5 * t))));
            (
                layout_1d(50, 0.0, 1.0),
                GasModel::multi(1.4, 1.6),
                2.0,
                BoundarySet::periodic(),
                Box::new(move |x| ic(x[0])),
            )
        }
        "shock_curtain" => {
            cfl = 0.1;
            (
                layout_1d(200, 0.0, 1.0),
                GasModel::multi(1.4, 1.67),
                0.3,
                outflow(),
                Box::new(|x| {
                    if x[0] < 0.25 {
                        pm(1.3765, 0.0, 0.3948, 0.0, 1.57, 1.0)
                    } else if (0.4..0.6).contains(&x[0]) {
                        pm(0.0, 0.138, 0.0, 0.0, 1.0, 0.0)
                    } else {
                        pm(1.0, 0.0, 0.0, 0.0, 1.0, 1.0)
                    }
                }),
            )
        }
        "shock_cylinder" => {
            cfl = 0.1;
            let (xc, yc, r, xs) = (3.5, 0.89, 0.5, 4.5);
            params.insert("diameter", 2.0 * r);
            let bcs = outflow().set_axis(1, Boundary::ReflectiveWall);
            (
                layout_2d(1300, 356, [0.0, 0.0], [6.5, 1.78]),
                GasModel::multi(1.4, 1.648),
                6.9,
                bcs,
                Box::new(move |x| {
                    if x[0] > xs {
                        pm(1.3764, 0.0, -0.3336, 0.0, 1.5698 / 1.4, 1.0)
                    } else if (x[0] - xc).powi(2) + (x[1] - yc).powi(2) < r * r {
                        pm(0.0, 0.1819, 0.0, 0.0, 1.0 / 1.4, 0.0)
                    } else {
                        pm(1.0, 0.0, 0.0, 0.0, 1.0 / 1.4, 1.0)
                    }
                }),
            )
        }
        "rmi_viscous" => {
            cfl = 0.1;
            let e_i = ov.e_i.unwrap_or(5.0);
            let lambda = 1.0;
            let x_shock = 0.7 * lambda;
            params.insert("lambda", lambda);
            params.insert("e_i", e_i);
            let sf6 = pm(0.0, 5.04, 1.24, 0.0, 1.0 / 1.4, 0.0);
            let pre = pm(1.0, 0.0, 1.24, 0.0, 1.0 / 1.4, 1.0);
            let post = pm(1.4112, 0.0, 0.8787, 0.0, 1.6272 / 1.4, 1.0);
            let bcs = BoundarySet::periodic()
                .set(0, 0, Boundary::Dirichlet(Primitive(sf6)))
                .set(0, 1, Boundary::Dirichlet(Primitive(post)));
            (
                layout_2d(2048, 128, [0.0, 0.0], [16.0 * lambda, lambda]),
                GasModel::multi(1.4, 1.093).with_viscosity(1e-4),
                11.0,
                bcs,
                Box::new(move |x| {
                    if x[0] > x_shock {
                        post
                    } else if x[0] < rmi_interface(x[1]) {
                        sf6
                    } else {
                        pre
                    }
                }),
            )
        }
        _ => unreachable!("id validated above"),
    };

    apply_cells(&mut layout, &ov.cells)?;
    if let Some(mu) = ov.mu {
        if !(mu >= 0.0) {
            return Err(Error::Config(format!("viscosity must be non-negative, got {mu}")));
        }
        gas = gas.with_viscosity(mu);
    }
    if let Some(pr) = ov.pr {
        gas = gas.with_prandtl(pr);
    }
    gas.validate()?;
    let t_end = ov.t_end.unwrap_or(t_end);
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Config(format!("end time must be positive, got {t_end}")));
    }
    let grid = Grid::new(layout.ndim, layout.dims, layout.lo, layout.hi)?;
    let mut initial = Field::from_fn(grid.clone(), gas.nvars(), ic);
    if id == "rmi_viscous" {
        let e_i = params["e_i"];
        let x_shock = 0.7 * params["lambda"];
        let sf6 = pm(0.0, 5.04, 1.24, 0.0, 1.0 / 1.4, 0.0);
        let pre = pm(1.0, 0.0, 1.24, 0.0, 1.0 / 1.4, 1.0);
        smooth_interface(
            &mut initial,
            |x| (x[0] <= x_shock).then(|| distance_to_curve(x, rmi_interface)),
            e_i,
            &sf6,
            &pre,
        )?;
    }
    for ijk in grid.interior() {
        if !is_admissible(&initial.state(ijk), &gas) {
            return Err(Error::InvalidState {
                cell: ijk,
                detail: format!("initial state of {id} is inadmissible"),
            });
        }
    }
    Ok(Case {
        spec: CaseSpec {
            id,
            ndim: layout.ndim,
            dims: layout.dims,
            lo: layout.lo,
            hi: layout.hi,
            gas,
            t_end,
            cfl,
            sources,
            params,
        },
        grid,
        gas,
        bcs,
        initial,
        dt,
        steady,
        exact,
    })
}

/// Initial interface position of the Richtmyer-Meshkov case (unit wavelength).
fn rmi_interface(y: f64) -> f64 {
    0.4 - 0.1 * (2.0 * PI * (y + 0.25)).sin()
}
