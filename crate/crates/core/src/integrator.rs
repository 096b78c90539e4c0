//! Residual assembly, time-step control and the third-order TVD Runge-Kutta
//! run loop.

use std::time::Instant;

use serde::Serialize;

use crate::boundary::{apply_boundary_conditions, BoundarySet};
use crate::compact::{gradients_into, CompactScheme, GradientField, GradientWorkspace};
use crate::error::{Error, Result};
use crate::gas::{cons_to_prim_unchecked, is_admissible, prim_to_cons_raw, sound_speed_unchecked, GasModel, StateVec, MAX_VARS};
use crate::grid::{Field, Grid};
use crate::reconstruction::{FallbackCounts, LineWorkspace, SchemeConfig};
use crate::riemann::hllc_raw;
use crate::viscous::{four_point, six_point, viscous_flux};

/// Body forces added at cell centres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Source {
    /// Uniform gravitational acceleration: adds `ρg` to momentum and `ρu·g`
    /// to energy.
    Gravity([f64; 3]),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum DtLaw {
    /// Convective and viscous CFL limit.
    Cfl,
    Fixed(f64),
    /// `dt = coef·h²`, never above the CFL limit.
    DiffusiveScaling { coef: f64 },
}

/// Source of the velocity and temperature gradients in the viscous terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ViscousGradients {
    /// Compact gradients, shared with the reconstruction when it uses them.
    Implicit,
    /// Explicit fourth-order central differences.
    Explicit4e,
}

/// Stop when the max-norm change of the velocity stays below `tol` for
/// `window` consecutive steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SteadyCriterion {
    pub tol: f64,
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub scheme: SchemeConfig,
    pub cfl: f64,
    pub t_end: f64,
    pub dt: DtLaw,
    /// Record diagnostics every this many steps (0 records only the ends).
    pub diagnostics_every: usize,
    pub viscous_gradients: ViscousGradients,
    pub max_steps: Option<usize>,
    pub steady: Option<SteadyCriterion>,
    /// Also compute the enstrophy with each diagnostics record.
    pub enstrophy: bool,
}

impl RunConfig {
    pub fn new(scheme: SchemeConfig, cfl: f64, t_end: f64) -> Self {
        RunConfig {
            scheme,
            cfl,
            t_end,
            dt: DtLaw::Cfl,
            diagnostics_every: 0,
            viscous_gradients: ViscousGradients::Implicit,
            max_steps: None,
            steady: None,
            enstrophy: false,
        }
    }

    /// Basic sanity checks. The limiter-compatibility bound on the CFL number
    /// is enforced by callers that accept user-supplied values.
    pub fn validate(&self) -> Result<()> {
        self.scheme.validate()?;
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(Error::Config(format!("cfl must be positive, got {}", self.cfl)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!("t_end must be non-negative, got {}", self.t_end)));
        }
        match self.dt {
            DtLaw::Fixed(dt) if !(dt > 0.0) => Err(Error::Config(format!("fixed dt must be positive, got {dt}"))),
            DtLaw::DiffusiveScaling { coef } if !(coef > 0.0) => {
                Err(Error::Config(format!("dt coefficient must be positive, got {coef}")))
            }
            _ => Ok(()),
        }
    }

    /// Rejects CFL numbers above `1/(1 + alpha_mp)`.
    pub fn check_limiter_cfl(&self) -> Result<()> {
        let max = self.scheme.max_cfl();
        if self.cfl > max + 1e-15 {
            return Err(Error::Config(format!(
                "CFL {} exceeds 1/(1+alpha_mp) = {max:.6} for alpha_mp = {}",
                self.cfl, self.scheme.alpha_mp
            )));
        }
        Ok(())
    }
}

/// Snapshot recorded during a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub step: usize,
    pub time: f64,
    /// Volume-weighted sums of the conserved variables.
    pub totals: Vec<f64>,
    pub kinetic_energy: f64,
    pub enstrophy: Option<f64>,
    pub fallbacks: FallbackCounts,
}

/// Progress handed to run observers after each step.
pub struct StepInfo<'a> {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub conserved: &'a Field,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    /// Final conserved field.
    pub conserved: Field,
    pub time: f64,
    pub steps: usize,
    pub history: Vec<Diagnostics>,
    pub fallbacks: FallbackCounts,
    pub wall_seconds: f64,
    pub reached_steady: bool,
}

impl RunResult {
    /// Final primitive field with boundary ghosts filled.
    pub fn primitive(&self, solver: &Solver) -> Result<Field> {
        solver.primitive_with_ghosts(&self.conserved, self.time)
    }
}

/// Everything needed to advance one problem.
pub struct Solver {
    pub grid: Grid,
    pub gas: GasModel,
    pub bcs: BoundarySet,
    pub sources: Vec<Source>,
    pub cfg: RunConfig,
    prim: Field,
    grads: Option<GradientField>,
    visc_grads: Option<Vec<Field>>,
    gws: GradientWorkspace,
    lines: LineWorkspace,
    faces: Vec<StateVec>,
    u_face: Vec<f64>,
    vcells: Vec<StateVec>,
    vfaces: Vec<StateVec>,
    residual: Field,
    stage: Field,
    stage2: Field,
    /// Substitutions made by the positivity check since construction.
    pub fallbacks: FallbackCounts,
}

impl Solver {
    pub fn new(grid: Grid, gas: GasModel, bcs: BoundarySet, sources: Vec<Source>, cfg: RunConfig) -> Result<Self> {
        grid.validate()?;
        gas.validate()?;
        bcs.validate(grid.ndim)?;
        cfg.validate()?;
        let nv = gas.nvars();
        if gas.is_multi() && grid.ndim > 2 {
            return Err(Error::Config("mixture model supports at most two dimensions".into()));
        }
        let needs_compact = cfg.scheme.compact_scheme().is_some()
            || (gas.mu() > 0.0 && cfg.viscous_gradients == ViscousGradients::Implicit);
        let prim = Field::new(grid.clone(), nv);
        let grads = needs_compact.then(|| GradientField::zeros(&prim));
        let visc_grads = (gas.mu() > 0.0 && cfg.viscous_gradients == ViscousGradients::Explicit4e)
            .then(|| (0..grid.ndim).map(|_| Field::new(grid.clone(), nv)).collect());
        let nmax = grid.dims.iter().copied().max().unwrap_or(1);
        Ok(Solver {
            lines: LineWorkspace::new(nmax, grid.ghost),
            residual: Field::new(grid.clone(), nv),
            stage: Field::new(grid.clone(), nv),
            stage2: Field::new(grid.clone(), nv),
            grid,
            gas,
            bcs,
            sources,
            cfg,
            prim,
            grads,
            visc_grads,
            gws: GradientWorkspace::default(),
            faces: Vec::new(),
            u_face: Vec::new(),
            vcells: Vec::new(),
            vfaces: Vec::new(),
            fallbacks: FallbackCounts::default(),
        })
    }

    /// Converts a primitive field to conserved variables (interior cells).
    pub fn to_conserved(&self, prim: &Field) -> Field {
        let mut q = Field::new(self.grid.clone(), self.gas.nvars());
        for ijk in self.grid.interior() {
            let idx = self.grid.index(ijk[0], ijk[1], ijk[2]);
            q.set_at(idx, &prim_to_cons_raw(&prim.state_at(idx), &self.gas));
        }
        q
    }

    /// Primitive field of `q` with ghost cells filled for time `t`.
    pub fn primitive_with_ghosts(&self, q: &Field, t: f64) -> Result<Field> {
        let mut p = Field::new(self.grid.clone(), self.gas.nvars());
        fill_primitive(q, &mut p, &self.gas)?;
        apply_boundary_conditions(&mut p, &self.bcs, &self.gas, t)?;
        Ok(p)
    }

    /// Semi-discrete right-hand side `-(ΔF^c + ΔF^v)/h + S`.
    pub fn compute_residual(&mut self, q: &Field, t: f64) -> Result<&Field> {
        let mut res = std::mem::replace(&mut self.residual, Field::new(Grid::uniform_1d(1, 0.0, 1.0)?, 1));
        let out = self.residual_into(q, t, &mut res);
        self.residual = res;
        out?;
        Ok(&self.residual)
    }

    fn residual_into(&mut self, q: &Field, t: f64, res: &mut Field) -> Result<()> {
        let gas = self.gas;
        fill_primitive(q, &mut self.prim, &gas)?;
        apply_boundary_conditions(&mut self.prim, &self.bcs, &gas, t)?;
        let viscous = gas.mu() > 0.0;
        if let Some(g) = self.grads.as_mut() {
            let scheme = self.cfg.scheme.compact_scheme();
            let with_second = scheme.is_some();
            gradients_into(&self.prim, &self.bcs, scheme.unwrap_or(CompactScheme::Cd6), g, &mut self.gws, with_second)?;
        }
        if let Some(vg) = self.visc_grads.as_mut() {
            for (d, fd) in vg.iter_mut().enumerate() {
                for ijk in self.grid.interior() {
                    let idx = self.grid.index(ijk[0], ijk[1], ijk[2]);
                    fd.set_at(idx, &grad4e_at(&self.prim, idx, d));
                }
            }
        }
        res.data.fill(0.0);
        for axis in 0..self.grid.ndim {
            self.sweep(axis, viscous, res)?;
        }
        for src in &self.sources {
            match *src {
                Source::Gravity(g) => {
                    let vs = gas.velocity_slot();
                    let nc = gas.velocity_components();
                    for ijk in self.grid.interior() {
                        let idx = self.grid.index(ijk[0], ijk[1], ijk[2]);
                        let u = self.prim.state_at(idx);
                        let rho = gas.density(&u);
                        let c = idx * res.nvars;
                        let mut work = 0.0;
                        for d in 0..nc {
                            res.data[c + vs + d] += rho * g[d];
                            work += rho * u[vs + d] * g[d];
                        }
                        res.data[c + 4] += work;
                    }
                }
            }
        }
        Ok(())
    }

    fn sweep(&mut self, axis: usize, viscous: bool, res: &mut Field) -> Result<()> {
        let grid = self.grid.clone();
        let gas = self.gas;
        let nv = gas.nvars();
        let n = grid.dims[axis];
        let g = grid.ghost;
        let h = grid.spacing[axis];
        let inv_h = 1.0 / h;
        let stride = grid.stride(axis) as isize;
        let periodic = self.bcs.is_periodic(axis);
        let mut normal = [0.0; 3];
        normal[axis] = 1.0;
        self.lines.resize(n, g);
        self.faces.resize(n + 1, [0.0; MAX_VARS]);
        self.u_face.resize(n + 1, 0.0);
        let (oa, ob) = match axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        for b in 0..grid.dims[ob] as isize {
            for a in 0..grid.dims[oa] as isize {
                let mut ijk = [0isize; 3];
                ijk[oa] = a;
                ijk[ob] = b;
                let base = grid.index(ijk[0], ijk[1], ijk[2]) as isize;
                let at = |m: isize| (base + m * stride) as usize;
                for m in -(g as isize)..(n + g) as isize {
                    self.lines.states[(m + g as isize) as usize] = self.prim.state_at(at(m));
                }
                if let Some(gr) = self.grads.as_ref() {
                    if self.cfg.scheme.compact_scheme().is_some() {
                        for m in 0..n {
                            let idx = at(m as isize);
                            self.lines.d1[m] = gr.first[axis].state_at(idx);
                            self.lines.d2[m] = gr.second[axis].state_at(idx);
                        }
                    }
                }
                let counts = self
                    .lines
                    .reconstruct(&self.cfg.scheme, &gas, normal, h, periodic)
                    .map_err(|e| locate(e, &grid, ijk, axis))?;
                self.fallbacks += counts;
                for f in 0..=n {
                    let (fl, uf) = hllc_raw(&self.lines.pair.left[f], &self.lines.pair.right[f], normal, &gas);
                    self.faces[f] = fl;
                    self.u_face[f] = uf;
                }
                if viscous {
                    self.viscous_faces(axis, base, stride, n, periodic);
                    for f in 0..=n {
                        for k in 0..nv {
                            self.faces[f][k] += self.vfaces[f][k];
                        }
                    }
                }
                for m in 0..n {
                    let c = at(m as isize) * nv;
                    let (fm, fp) = (&self.faces[m], &self.faces[m + 1]);
                    for k in 0..nv {
                        res.data[c + k] -= (fp[k] - fm[k]) * inv_h;
                    }
                    if gas.is_multi() {
                        let alpha = self.lines.states[m + g][5];
                        res.data[c + 5] += alpha * (self.u_face[m + 1] - self.u_face[m]) * inv_h;
                    }
                }
            }
        }
        Ok(())
    }

    /// Face viscous fluxes of the line starting at flat index `base`.
    fn viscous_faces(&mut self, axis: usize, base: isize, stride: isize, n: usize, periodic: bool) {
        let gas = self.gas;
        let nv = gas.nvars();
        let ndim = self.grid.ndim;
        self.vcells.resize(n + 2, [0.0; MAX_VARS]);
        self.vfaces.resize(n + 1, [0.0; MAX_VARS]);
        let cell_flux = |m: isize, ghost: bool, s: &Self| -> StateVec {
            let idx = (base + m * stride) as usize;
            let u = s.prim.state_at(idx);
            let mut grads = [[0.0; MAX_VARS]; 3];
            for (d, gd) in grads.iter_mut().enumerate().take(ndim) {
                *gd = if ghost {
                    grad4e_at(&s.prim, idx, d)
                } else if let Some(vg) = s.visc_grads.as_ref() {
                    vg[d].state_at(idx)
                } else {
                    s.grads.as_ref().expect("compact gradients").first[d].state_at(idx)
                };
            }
            viscous_flux(&u, &grads, axis, &gas)
        };
        for m in 0..n as isize {
            self.vcells[(m + 1) as usize] = cell_flux(m, false, self);
        }
        if !periodic {
            self.vcells[0] = cell_flux(-1, true, self);
            self.vcells[n + 1] = cell_flux(n as isize, true, self);
        }
        let v = &self.vcells;
        for f in 0..=n {
            let j = f as isize;
            let mut out = [0.0; MAX_VARS];
            if periodic {
                let w = |m: isize| &v[(m.rem_euclid(n as isize) + 1) as usize];
                let (a, b, c, d, e, g) = (w(j - 3), w(j - 2), w(j - 1), w(j), w(j + 1), w(j + 2));
                for k in 0..nv {
                    out[k] = six_point(a[k], b[k], c[k], d[k], e[k], g[k]);
                }
            } else {
                let w = |m: isize| &v[(m + 1) as usize];
                if f == 0 || f == n {
                    let (a, b) = (w(j - 1), w(j));
                    for k in 0..nv {
                        out[k] = 0.5 * (a[k] + b[k]);
                    }
                } else if f < 3 || f + 3 > n {
                    let (a, b, c, d) = (w(j - 2), w(j - 1), w(j), w(j + 1));
                    for k in 0..nv {
                        out[k] = four_point(a[k], b[k], c[k], d[k]);
                    }
                } else {
                    let (a, b, c, d, e, g) = (w(j - 3), w(j - 2), w(j - 1), w(j), w(j + 1), w(j + 2));
                    for k in 0..nv {
                        out[k] = six_point(a[k], b[k], c[k], d[k], e[k], g[k]);
                    }
                }
            }
            self.vfaces[f] = out;
        }
    }

    /// Stable step from the convective and viscous limits.
    pub fn compute_dt(&self, q: &Field) -> Result<f64> {
        let cfl_dt = compute_dt(q, &self.gas, self.cfg.cfl)?;
        Ok(match self.cfg.dt {
            DtLaw::Cfl => cfl_dt,
            DtLaw::Fixed(dt) => dt,
            DtLaw::DiffusiveScaling { coef } => {
                let h = (0..self.grid.ndim).map(|a| self.grid.spacing[a]).fold(f64::INFINITY, f64::min);
                (coef * h * h).min(cfl_dt)
            }
        })
    }

    /// One TVD-RK3 step of size `dt` from time `t`, in place.
    pub fn step(&mut self, q: &mut Field, t: f64, dt: f64) -> Result<()> {
        let mut res = std::mem::replace(&mut self.residual, Field::new(Grid::uniform_1d(1, 0.0, 1.0)?, 1));
        let mut s1 = std::mem::replace(&mut self.stage, Field::new(Grid::uniform_1d(1, 0.0, 1.0)?, 1));
        let mut s2 = std::mem::replace(&mut self.stage2, Field::new(Grid::uniform_1d(1, 0.0, 1.0)?, 1));
        let out = (|| {
            let multi = self.gas.is_multi();
            self.residual_into(q, t, &mut res)?;
            for ((a, b), r) in s1.data.iter_mut().zip(&q.data).zip(&res.data) {
                *a = b + dt * r;
            }
            if multi {
                clean_roundoff(&mut s1);
            }
            self.residual_into(&s1, t + dt, &mut res)?;
            for (((a, b), c), r) in s2.data.iter_mut().zip(&q.data).zip(&s1.data).zip(&res.data) {
                *a = 0.75 * b + 0.25 * (c + dt * r);
            }
            if multi {
                clean_roundoff(&mut s2);
            }
            self.residual_into(&s2, t + 0.5 * dt, &mut res)?;
            for ((a, c), r) in q.data.iter_mut().zip(&s2.data).zip(&res.data) {
                *a = (*a + 2.0 * (c + dt * r)) / 3.0;
            }
            if multi {
                clean_roundoff(q);
            }
            Ok(())
        })();
        self.residual = res;
        self.stage = s1;
        self.stage2 = s2;
        out
    }

    /// Diagnostics of a conserved field.
    pub fn diagnostics(&mut self, q: &Field, step: usize, time: f64) -> Result<Diagnostics> {
        let vol = self.grid.cell_volume();
        let sums = q.interior_sum();
        let totals = sums[..q.nvars].iter().map(|s| s * vol).collect();
        let prim = self.primitive_with_ghosts(q, time)?;
        let kinetic_energy = crate::analysis::kinetic_energy(&prim, &self.gas);
        let enstrophy = if self.cfg.enstrophy && self.grid.ndim >= 2 {
            Some(crate::analysis::enstrophy_of(&prim, &self.bcs, &self.gas, false)?)
        } else {
            None
        };
        Ok(Diagnostics {
            step,
            time,
            totals,
            kinetic_energy,
            enstrophy,
            fallbacks: self.fallbacks,
        })
    }

    /// Advances `q` to `cfg.t_end`, calling `observer` after each step; the
    /// observer may stop the run early by returning `false`.
    pub fn run_with(&mut self, mut q: Field, mut observer: impl FnMut(&StepInfo) -> Result<bool>) -> Result<RunResult> {
        let start = Instant::now();
        let mut t = 0.0;
        let mut step = 0usize;
        let mut history = vec![self.diagnostics(&q, 0, 0.0)?];
        let t_end = self.cfg.t_end;
        let mut steady_count = 0usize;
        let mut reached_steady = false;
        let mut prev_vel: Vec<f64> = Vec::new();
        let cadence = self.cfg.diagnostics_every;
        while t < t_end * (1.0 - 1e-14) {
            if let Some(max) = self.cfg.max_steps {
                if step >= max {
                    break;
                }
            }
            let mut dt = self.compute_dt(&q)?;
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(Error::NonFinite { step, cell: [0, 0, 0] });
            }
            if t + dt > t_end {
                dt = t_end - t;
            }
            if self.cfg.steady.is_some() {
                prev_vel = velocity_snapshot(&q, &self.gas);
            }
            self.step(&mut q, t, dt)?;
            step += 1;
            t += dt;
            check_finite(&q, step)?;
            if cadence > 0 && step % cadence == 0 {
                history.push(self.diagnostics(&q, step, t)?);
            }
            if let Some(sc) = self.cfg.steady {
                let now = velocity_snapshot(&q, &self.gas);
                let change = now.iter().zip(&prev_vel).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                if change < sc.tol {
                    steady_count += 1;
                } else {
                    steady_count = 0;
                }
                if steady_count >= sc.window {
                    reached_steady = true;
                }
            }
            let keep_going = observer(&StepInfo {
                step,
                time: t,
                dt,
                conserved: &q,
            })?;
            if !keep_going || reached_steady {
                break;
            }
        }
        if history.last().map(|d| d.step) != Some(step) {
            history.push(self.diagnostics(&q, step, t)?);
        }
        Ok(RunResult {
            conserved: q,
            time: t,
            steps: step,
            history,
            fallbacks: self.fallbacks,
            wall_seconds: start.elapsed().as_secs_f64(),
            reached_steady,
        })
    }

    pub fn run(&mut self, q: Field) -> Result<RunResult> {
        self.run_with(q, |_| Ok(true))
    }
}

fn locate(e: Error, grid: &Grid, line: [isize; 3], axis: usize) -> Error {
    match e {
        Error::InvalidState { detail, .. } => {
            let mut cell = line;
            cell[axis] = -1;
            Error::InvalidState {
                cell,
                detail: format!("{detail} (on the line along axis {axis}; grid {:?})", grid.dims),
            }
        }
        other => other,
    }
}

fn velocity_snapshot(q: &Field, gas: &GasModel) -> Vec<f64> {
    let vs = gas.velocity_slot();
    let nc = gas.velocity_components();
    let mut out = Vec::with_capacity(q.grid.interior_cells() * nc);
    for ijk in q.grid.interior() {
        let c = q.cell(ijk);
        let rho = gas.density(&{
            let mut s = [0.0; MAX_VARS];
            s[..q.nvars].copy_from_slice(c);
            s
        });
        for d in 0..nc {
            out.push(c[vs + d] / rho);
        }
    }
    out
}

fn check_finite(q: &Field, step: usize) -> Result<()> {
    for ijk in q.grid.interior() {
        if q.cell(ijk).iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { step, cell: ijk });
        }
    }
    Ok(())
}

/// Relative size below which negative partial densities and volume-fraction
/// excursions outside `[0, 1]` count as rounding error.
pub const ROUNDOFF_TOL: f64 = 1e-12;

/// Clamps rounding-level excursions of a conserved two-fluid field back into
/// the admissible set. Larger violations are left for the admissibility
/// checks to report.
pub fn clean_roundoff(q: &mut Field) {
    let nv = q.nvars;
    for c in q.data.chunks_exact_mut(nv) {
        let rho = (c[0] + c[1]).abs();
        for k in 0..2 {
            if c[k] < 0.0 && c[k] >= -ROUNDOFF_TOL * rho {
                c[k] = 0.0;
            }
        }
        if c[5] < 0.0 && c[5] >= -ROUNDOFF_TOL {
            c[5] = 0.0;
        } else if c[5] > 1.0 && c[5] <= 1.0 + ROUNDOFF_TOL {
            c[5] = 1.0;
        }
    }
}

/// Converts the interior of a conserved field into `prim`, rejecting
/// inadmissible states.
pub(crate) fn fill_primitive(q: &Field, prim: &mut Field, gas: &GasModel) -> Result<()> {
    for ijk in q.grid.interior() {
        let idx = q.grid.index(ijk[0], ijk[1], ijk[2]);
        let s = q.state_at(idx);
        let u = cons_to_prim_unchecked(&s, gas);
        if !is_admissible(&u, gas) {
            return Err(Error::InvalidState {
                cell: ijk,
                detail: format!("inadmissible primitive state {:?}", &u[..gas.nvars()]),
            });
        }
        prim.set_at(idx, &u);
    }
    Ok(())
}

/// Explicit fourth-order gradient of every variable at a flat index.
fn grad4e_at(f: &Field, idx: usize, d: usize) -> StateVec {
    let s = f.grid.stride(d);
    let h = f.grid.spacing[d];
    let nv = f.nvars;
    let mut out = [0.0; MAX_VARS];
    let at = |i: usize, k: usize| f.data[i * nv + k];
    for (k, o) in out.iter_mut().enumerate().take(nv) {
        *o = (8.0 * (at(idx + s, k) - at(idx - s, k)) - (at(idx + 2 * s, k) - at(idx - 2 * s, k))) / (12.0 * h);
    }
    out
}

/// `cfl · min(h/(|u|+c), h²/μ)` over interior cells and active axes.
pub fn compute_dt(q: &Field, gas: &GasModel, cfl: f64) -> Result<f64> {
    let grid = &q.grid;
    let mu = gas.mu();
    let vs = gas.velocity_slot();
    let mut dt = f64::INFINITY;
    for ijk in grid.interior() {
        let idx = grid.index(ijk[0], ijk[1], ijk[2]);
        let u = cons_to_prim_unchecked(&q.state_at(idx), gas);
        if !is_admissible(&u, gas) {
            return Err(Error::InvalidState {
                cell: ijk,
                detail: format!("inadmissible state {:?} in time-step estimate", &u[..gas.nvars()]),
            });
        }
        let c = sound_speed_unchecked(&u, gas);
        for a in 0..grid.ndim {
            let h = grid.spacing[a];
            let vel = if a < gas.velocity_components() { u[vs + a].abs() } else { 0.0 };
            dt = dt.min(h / (vel + c));
            if mu > 0.0 {
                dt = dt.min(h * h / mu);
            }
        }
    }
    Ok(cfl * dt)
}

/// Generic TVD-RK3 step for any residual evaluator.
pub fn rk3_step<F>(q: &[f64], dt: f64, t: f64, mut res: F) -> Result<Vec<f64>>
where
    F: FnMut(&[f64], f64) -> Result<Vec<f64>>,
{
    let r0 = res(q, t)?;
    let q1: Vec<f64> = q.iter().zip(&r0).map(|(a, r)| a + dt * r).collect();
    let r1 = res(&q1, t + dt)?;
    let q2: Vec<f64> = q.iter().zip(&q1).zip(&r1).map(|((a, b), r)| 0.75 * a + 0.25 * (b + dt * r)).collect();
    let r2 = res(&q2, t + 0.5 * dt)?;
    Ok(q.iter().zip(&q2).zip(&r2).map(|((a, b), r)| (a + 2.0 * (b + dt * r)) / 3.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::Primitive;

    #[test]
    fn rk3_scalar_growth_factor() {
        let (lam, dt) = (-0.7, 0.3);
        let q = rk3_step(&[1.0], dt, 0.0, |q, _| Ok(vec![lam * q[0]])).unwrap();
        let z: f64 = lam * dt;
        assert!((q[0] - (1.0 + z + z * z / 2.0 + z * z * z / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn rk3_constant_rate() {
        let q = rk3_step(&[2.0], 0.25, 0.0, |_, _| Ok(vec![1.0])).unwrap();
        assert!((q[0] - 2.25).abs() < 1e-15);
        let q = rk3_step(&[2.0], 0.25, 0.0, |_, _| Ok(vec![0.0])).unwrap();
        assert_eq!(q[0], 2.0);
    }

    #[test]
    fn dt_hand_value() {
        let gas = GasModel::single(1.4);
        let grid = Grid::uniform_1d(10, 0.0, 1.0).unwrap();
        let u = Primitive::single(1.4, 0.0, 0.0, 0.0, 1.0);
        let q = Field::from_fn(grid, 5, |_| crate::gas::prim_to_cons(&u, &gas).0);
        assert!((compute_dt(&q, &gas, 0.2).unwrap() - 0.02).abs() < 1e-15);
        assert!((compute_dt(&q, &gas, 0.1).unwrap() - 0.01).abs() < 1e-15);
        let visc = gas.with_viscosity(1.0);
        assert!((compute_dt(&q, &visc, 0.2).unwrap() - 0.2 * 0.01).abs() < 1e-15);
    }

    #[test]
    fn limiter_cfl_check() {
        let s = SchemeConfig::from_name("ig4mp", false).unwrap();
        assert!(RunConfig::new(s, 0.2, 1.0).check_limiter_cfl().is_err());
        assert!(RunConfig::new(s, 0.12, 1.0).check_limiter_cfl().is_ok());
    }
}
