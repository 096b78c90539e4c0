//! Left/right face states along one grid line: linear candidates, MP5 in
//! characteristic variables, BVD selection and positivity-preserving order
//! reduction.

mod linear;
mod mp5;

pub use linear::{c5_faces, ig_faces, muscl_faces, muscl_left, C5Operator};
pub use mp5::{
    build_eigensystem, minmod2, minmod4, mp5_bounds, mp5_face, mp5_face_eps, mp5_linear, tangents, EigenSystem,
    MP5_EPS,
};
pub(crate) use mp5::averaged_speed;

use std::ops::AddAssign;

use serde::Serialize;

use crate::compact::CompactScheme;
use crate::error::{Error, Result};
use crate::gas::{is_admissible, GasModel, StateVec, MAX_VARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseScheme {
    Ig4,
    Ig6,
    Mp5,
    MusclK3,
    C5,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchemeConfig {
    pub base: BaseScheme,
    /// Blend with MP5 through the boundary-variation selection.
    pub bvd: bool,
    pub kappa: f64,
    pub alpha_mp: f64,
    pub eps_mp: f64,
}

impl SchemeConfig {
    pub fn new(base: BaseScheme, bvd: bool, alpha_mp: f64) -> Self {
        SchemeConfig {
            base,
            bvd,
            kappa: 1.0 / 3.0,
            alpha_mp,
            eps_mp: MP5_EPS,
        }
    }

    /// Default limiter parameter: 7 for single-gas IGMP schemes, 4 otherwise.
    pub fn default_alpha(base: BaseScheme, bvd: bool, multi: bool) -> f64 {
        if bvd && !multi && matches!(base, BaseScheme::Ig4 | BaseScheme::Ig6) {
            7.0
        } else {
            4.0
        }
    }

    /// Parses a command-line scheme name.
    pub fn from_name(name: &str, multi: bool) -> Result<Self> {
        let (base, bvd) = match name {
            "mp5" => (BaseScheme::Mp5, false),
            "ig4mp" => (BaseScheme::Ig4, true),
            "ig6mp" => (BaseScheme::Ig6, true),
            "ig4" => (BaseScheme::Ig4, false),
            "ig6" => (BaseScheme::Ig6, false),
            "c5" => (BaseScheme::C5, false),
            "muscl" => (BaseScheme::MusclK3, false),
            other => return Err(Error::Config(format!("unknown scheme `{other}`"))),
        };
        Ok(SchemeConfig::new(base, bvd, Self::default_alpha(base, bvd, multi)))
    }

    pub fn name(&self) -> &'static str {
        match (self.base, self.bvd) {
            (BaseScheme::Mp5, _) => "mp5",
            (BaseScheme::Ig4, true) => "ig4mp",
            (BaseScheme::Ig6, true) => "ig6mp",
            (BaseScheme::Ig4, false) => "ig4",
            (BaseScheme::Ig6, false) => "ig6",
            (BaseScheme::C5, true) => "c5mp",
            (BaseScheme::C5, false) => "c5",
            (BaseScheme::MusclK3, true) => "musclmp",
            (BaseScheme::MusclK3, false) => "muscl",
        }
    }

    /// Compact derivative feeding the implicit-gradient candidate.
    pub fn compact_scheme(&self) -> Option<CompactScheme> {
        match self.base {
            BaseScheme::Ig4 => Some(CompactScheme::Cd4),
            BaseScheme::Ig6 => Some(CompactScheme::Cd6),
            _ => None,
        }
    }

    /// Largest CFL number compatible with the MP5 limiter.
    pub fn max_cfl(&self) -> f64 {
        1.0 / (1.0 + self.alpha_mp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_mp >= 0.0) {
            return Err(Error::Config(format!("alpha_mp must be non-negative, got {}", self.alpha_mp)));
        }
        Ok(())
    }

    fn uses_mp5_everywhere(&self) -> bool {
        self.bvd || self.base == BaseScheme::Mp5
    }
}

/// Which candidate produced a face value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum Provenance {
    /// The linear base scheme (implicit gradient, MUSCL or C5).
    #[default]
    Linear,
    Mp5,
    FirstOrder,
}

/// Face states along a line; index `f` is the face between cells `f - 1`
/// and `f`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InterfacePair {
    pub left: Vec<StateVec>,
    pub right: Vec<StateVec>,
    pub left_tag: Vec<[Provenance; MAX_VARS]>,
    pub right_tag: Vec<[Provenance; MAX_VARS]>,
}

impl InterfacePair {
    pub fn with_faces(nfaces: usize) -> Self {
        let mut p = InterfacePair::default();
        p.resize(nfaces);
        p
    }

    pub fn resize(&mut self, nfaces: usize) {
        self.left.resize(nfaces, [0.0; MAX_VARS]);
        self.right.resize(nfaces, [0.0; MAX_VARS]);
        self.left_tag.resize(nfaces, [Provenance::Linear; MAX_VARS]);
        self.right_tag.resize(nfaces, [Provenance::Linear; MAX_VARS]);
    }

    pub fn faces(&self) -> usize {
        self.left.len()
    }

    pub fn cells(&self) -> usize {
        self.left.len().saturating_sub(1)
    }

    fn tag_all(&mut self, t: Provenance) {
        for tags in self.left_tag.iter_mut().chain(self.right_tag.iter_mut()) {
            *tags = [t; MAX_VARS];
        }
    }
}

/// Total boundary variation of cell `j` for variable `k`.
#[inline]
pub fn tbv(pair: &InterfacePair, j: usize, k: usize) -> f64 {
    (pair.left[j][k] - pair.right[j][k]).abs() + (pair.left[j + 1][k] - pair.right[j + 1][k]).abs()
}

/// Boundary-variation selection. For each cell and variable where MP5 has
/// the smaller TBV, both sides of the four faces `j-1..=j+2` take the MP5
/// value; TBVs are evaluated on the unmodified candidates.
pub fn bvd_select(lin: &InterfacePair, mp5: &InterfacePair, nvars: usize, periodic: bool) -> InterfacePair {
    let mut out = lin.clone();
    let mut mask = Vec::new();
    bvd_select_in_place(&mut out, mp5, nvars, periodic, &mut mask);
    out
}

fn bvd_select_in_place(pair: &mut InterfacePair, mp5: &InterfacePair, nvars: usize, periodic: bool, mask: &mut Vec<bool>) {
    let n = pair.cells();
    let nf = n + 1;
    // mask[f * nvars + k]: face f takes the MP5 value of variable k.
    mask.clear();
    mask.resize(nf * nvars, false);
    for j in 0..n {
        let (l0, r0, l1, r1) = (&pair.left[j], &pair.right[j], &pair.left[j + 1], &pair.right[j + 1]);
        let (m0, s0, m1, s1) = (&mp5.left[j], &mp5.right[j], &mp5.left[j + 1], &mp5.right[j + 1]);
        for k in 0..nvars {
            let lin = (l0[k] - r0[k]).abs() + (l1[k] - r1[k]).abs();
            let mp = (m0[k] - s0[k]).abs() + (m1[k] - s1[k]).abs();
            if mp < lin {
                for off in -1isize..=2 {
                    let f = j as isize + off;
                    let f = if periodic {
                        f.rem_euclid(n as isize) as usize
                    } else if f < 0 || f > n as isize {
                        continue;
                    } else {
                        f as usize
                    };
                    mask[f * nvars + k] = true;
                }
            }
        }
    }
    for f in 0..nf {
        let sel = &mask[f * nvars..(f + 1) * nvars];
        if !sel.iter().any(|s| *s) {
            continue;
        }
        for k in 0..nvars {
            if sel[k] {
                pair.left[f][k] = mp5.left[f][k];
                pair.right[f][k] = mp5.right[f][k];
                pair.left_tag[f][k] = Provenance::Mp5;
                pair.right_tag[f][k] = Provenance::Mp5;
            }
        }
    }
    if periodic {
        pair.left[n] = pair.left[0];
        pair.right[n] = pair.right[0];
        pair.left_tag[n] = pair.left_tag[0];
        pair.right_tag[n] = pair.right_tag[0];
    }
}

/// Substitution counts from the positivity check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FallbackCounts {
    pub to_mp5: usize,
    pub to_first_order: usize,
}

impl AddAssign for FallbackCounts {
    fn add_assign(&mut self, o: Self) {
        self.to_mp5 += o.to_mp5;
        self.to_first_order += o.to_first_order;
    }
}

/// Replaces inadmissible face states by the MP5 state and, failing that, by
/// the adjacent cell value. `fo_left[f]`/`fo_right[f]` are the cell values on
/// either side of face `f`.
pub fn positivity_fallback(
    pair: &mut InterfacePair,
    mp5: &InterfacePair,
    fo_left: &[StateVec],
    fo_right: &[StateVec],
    gas: &GasModel,
) -> Result<FallbackCounts> {
    positivity_with(pair, gas, |f, side| {
        Ok((if side == 0 { mp5.left[f] } else { mp5.right[f] }, if side == 0 { fo_left[f] } else { fo_right[f] }))
    })
}

fn positivity_with(
    pair: &mut InterfacePair,
    gas: &GasModel,
    mut alt: impl FnMut(usize, usize) -> Result<(StateVec, StateVec)>,
) -> Result<FallbackCounts> {
    let mut counts = FallbackCounts::default();
    for f in 0..pair.faces() {
        for side in 0..2 {
            let s = if side == 0 { &pair.left[f] } else { &pair.right[f] };
            if is_admissible(s, gas) {
                continue;
            }
            let (m, fo) = alt(f, side)?;
            let (state, tag) = if is_admissible(&m, gas) {
                counts.to_mp5 += 1;
                (m, Provenance::Mp5)
            } else if is_admissible(&fo, gas) {
                counts.to_first_order += 1;
                (fo, Provenance::FirstOrder)
            } else {
                return Err(Error::invalid(format!(
                    "first-order state {:?} at face {f} is inadmissible",
                    &fo[..gas.nvars()]
                )));
            };
            if side == 0 {
                pair.left[f] = state;
                pair.left_tag[f] = [tag; MAX_VARS];
            } else {
                pair.right[f] = state;
                pair.right_tag[f] = [tag; MAX_VARS];
            }
        }
    }
    Ok(counts)
}

/// Bound-preserving scaling of the two-fluid face states. On every interior
/// cell the face partial densities are pulled towards the cell value until
/// both faces and the midpoint value implied by Simpson's rule,
/// `(6ū - a - b)/4`, are non-negative; the volume fraction is treated the
/// same way with bounds `[0, 1]`.
///
/// Characteristic reconstruction mixes pressure into the partial densities,
/// and compact gradients are non-local, so a cell without one of the fluids
/// can otherwise export it. `states` holds the primitive line with `g`
/// ghosts per side.
pub fn limit_partial_densities(pair: &mut InterfacePair, states: &[StateVec], g: usize, periodic: bool) {
    let n = pair.cells();
    for j in 0..n {
        let u = &states[g + j];
        for (k, hi) in [(0, f64::INFINITY), (1, f64::INFINITY), (5, 1.0)] {
            let (a, b, c) = (pair.right[j][k], pair.left[j + 1][k], u[k].clamp(0.0, hi));
            let mid = 0.25 * (6.0 * c - a - b);
            let lo_m = a.min(b).min(mid);
            let hi_m = a.max(b).max(mid);
            let mut theta: f64 = 1.0;
            if lo_m < 0.0 {
                theta = theta.min(c / (c - lo_m));
            }
            if hi_m > hi {
                theta = theta.min((hi - c) / (hi_m - c));
            }
            if lo_m < 0.0 || hi_m > hi {
                // The clamp only absorbs rounding in the scaled values.
                pair.right[j][k] = (c + theta * (a - c)).clamp(0.0, hi);
                pair.left[j + 1][k] = (c + theta * (b - c)).clamp(0.0, hi);
            }
        }
    }
    if periodic {
        pair.left[0] = pair.left[n];
        pair.right[n] = pair.right[0];
    } else {
        // Sides owned by ghost cells are only clamped.
        for (k, hi) in [(0, f64::INFINITY), (1, f64::INFINITY), (5, 1.0)] {
            pair.left[0][k] = pair.left[0][k].clamp(0.0, hi);
            pair.right[n][k] = pair.right[n][k].clamp(0.0, hi);
        }
    }
}

/// MP5 states on both sides of face `f`, reconstructed in characteristic
/// variables. `states` holds the line with `g` ghosts per side.
pub fn mp5_face_states(
    states: &[StateVec],
    g: usize,
    f: usize,
    normal: [f64; 3],
    gas: &GasModel,
    alpha: f64,
    eps: f64,
) -> Result<(StateVec, StateVec)> {
    let c = g + f;
    let e = build_eigensystem(&states[c - 1], &states[c], normal, gas)?;
    let nv = gas.nvars();
    let mut w = [[0.0; MAX_VARS]; 6];
    for (m, wm) in w.iter_mut().enumerate() {
        *wm = e.to_characteristic(&states[c - 3 + m]);
    }
    let mut wl = [0.0; MAX_VARS];
    let mut wr = [0.0; MAX_VARS];
    for k in 0..nv {
        wl[k] = mp5_face_eps(&[w[0][k], w[1][k], w[2][k], w[3][k], w[4][k]], alpha, eps);
        wr[k] = mp5_face_eps(&[w[5][k], w[4][k], w[3][k], w[2][k], w[1][k]], alpha, eps);
    }
    Ok((e.to_primitive(&wl), e.to_primitive(&wr)))
}

/// MP5 pair for a whole line.
pub fn mp5_reconstruct_characteristic(
    states: &[StateVec],
    g: usize,
    normal: [f64; 3],
    gas: &GasModel,
    alpha: f64,
) -> Result<InterfacePair> {
    let n = states.len() - 2 * g;
    let mut p = InterfacePair::with_faces(n + 1);
    for f in 0..=n {
        let (l, r) = mp5_face_states(states, g, f, normal, gas, alpha, MP5_EPS)?;
        p.left[f] = l;
        p.right[f] = r;
    }
    p.tag_all(Provenance::Mp5);
    Ok(p)
}

/// Reusable buffers for reconstructing lines of one length.
#[derive(Debug, Default)]
pub struct LineWorkspace {
    /// Primitive states with `ghost` cells per side.
    pub states: Vec<StateVec>,
    /// Physical first and second derivatives at interior cells.
    pub d1: Vec<StateVec>,
    pub d2: Vec<StateVec>,
    pub ghost: usize,
    /// Reconstructed faces.
    pub pair: InterfacePair,
    mp5: InterfacePair,
    c5: Option<C5Operator>,
    buf: Vec<f64>,
    mask: Vec<bool>,
}

impl LineWorkspace {
    pub fn new(n: usize, ghost: usize) -> Self {
        let mut ws = LineWorkspace::default();
        ws.resize(n, ghost);
        ws
    }

    pub fn resize(&mut self, n: usize, ghost: usize) {
        self.ghost = ghost;
        self.states.resize(n + 2 * ghost, [0.0; MAX_VARS]);
        self.d1.resize(n, [0.0; MAX_VARS]);
        self.d2.resize(n, [0.0; MAX_VARS]);
        self.pair.resize(n + 1);
        self.mp5.resize(n + 1);
    }

    pub fn cells(&self) -> usize {
        self.states.len() - 2 * self.ghost
    }

    /// Reconstructs every face of the line held in `states` into `pair`.
    pub fn reconstruct(
        &mut self,
        cfg: &SchemeConfig,
        gas: &GasModel,
        normal: [f64; 3],
        h: f64,
        periodic: bool,
    ) -> Result<FallbackCounts> {
        let n = self.cells();
        let g = self.ghost;
        let nv = gas.nvars();
        self.pair.resize(n + 1);
        self.mp5.resize(n + 1);

        if cfg.uses_mp5_everywhere() {
            for f in 0..=n {
                let (l, r) = mp5_face_states(&self.states, g, f, normal, gas, cfg.alpha_mp, cfg.eps_mp)?;
                self.mp5.left[f] = l;
                self.mp5.right[f] = r;
            }
            self.mp5.tag_all(Provenance::Mp5);
        }

        if cfg.base == BaseScheme::Mp5 {
            self.pair.left.copy_from_slice(&self.mp5.left);
            self.pair.right.copy_from_slice(&self.mp5.right);
            self.pair.tag_all(Provenance::Mp5);
        } else {
            self.linear_candidate(cfg, nv, h, periodic)?;
            if cfg.base == BaseScheme::Ig4 || cfg.base == BaseScheme::Ig6 {
                if !periodic {
                    // The outermost face sides have no interior source cell.
                    let (l0, rn) = if cfg.uses_mp5_everywhere() {
                        (self.mp5.left[0], self.mp5.right[n])
                    } else {
                        let a = mp5_face_states(&self.states, g, 0, normal, gas, cfg.alpha_mp, cfg.eps_mp)?.0;
                        let b = mp5_face_states(&self.states, g, n, normal, gas, cfg.alpha_mp, cfg.eps_mp)?.1;
                        (a, b)
                    };
                    self.pair.left[0] = l0;
                    self.pair.right[n] = rn;
                    self.pair.left_tag[0] = [Provenance::Mp5; MAX_VARS];
                    self.pair.right_tag[n] = [Provenance::Mp5; MAX_VARS];
                }
            }
            if cfg.bvd {
                bvd_select_in_place(&mut self.pair, &self.mp5, nv, periodic, &mut self.mask);
            }
        }

        // Bounding first keeps rounding-level excursions from triggering
        // the order reduction; the second pass covers replaced states.
        if gas.is_multi() {
            limit_partial_densities(&mut self.pair, &self.states, g, periodic);
        }
        let states = &self.states;
        let mp5 = &self.mp5;
        let have_mp5 = cfg.uses_mp5_everywhere();
        let (alpha, eps) = (cfg.alpha_mp, cfg.eps_mp);
        let counts = positivity_with(&mut self.pair, gas, |f, side| {
            let m = if have_mp5 {
                if side == 0 {
                    mp5.left[f]
                } else {
                    mp5.right[f]
                }
            } else {
                let (l, r) = mp5_face_states(states, g, f, normal, gas, alpha, eps)?;
                if side == 0 {
                    l
                } else {
                    r
                }
            };
            let fo = if side == 0 { states[g + f - 1] } else { states[g + f] };
            Ok((m, fo))
        })?;
        if gas.is_multi() {
            limit_partial_densities(&mut self.pair, &self.states, g, periodic);
        }
        Ok(counts)
    }

    fn linear_candidate(&mut self, cfg: &SchemeConfig, nv: usize, h: f64, periodic: bool) -> Result<()> {
        let n = self.cells();
        let g = self.ghost;
        let (st, left, right) = (&self.states, &mut self.pair.left, &mut self.pair.right);
        match cfg.base {
            BaseScheme::Ig4 | BaseScheme::Ig6 => {
                let h2 = h * h / 12.0;
                let hh = 0.5 * h;
                for j in 0..n {
                    let (u, d1, d2) = (&st[g + j], &self.d1[j], &self.d2[j]);
                    for k in 0..nv {
                        let base = u[k] + h2 * d2[k];
                        left[j + 1][k] = base + hh * d1[k];
                        right[j][k] = base - hh * d1[k];
                    }
                }
                if periodic {
                    left[0] = left[n];
                    right[n] = right[0];
                } else {
                    left[0] = [f64::NAN; MAX_VARS];
                    right[n] = [f64::NAN; MAX_VARS];
                }
            }
            BaseScheme::MusclK3 => {
                for f in 0..=n {
                    let c = g + f;
                    for k in 0..nv {
                        left[f][k] = muscl_left(st[c - 2][k], st[c - 1][k], st[c][k]);
                        right[f][k] = muscl_left(st[c + 1][k], st[c][k], st[c - 1][k]);
                    }
                }
            }
            BaseScheme::C5 => {
                if !self.c5.as_ref().is_some_and(|op| op.n == n && op.periodic == periodic) {
                    self.c5 = Some(C5Operator::new(n, periodic)?);
                }
                let op = self.c5.as_ref().expect("operator just built");
                op.apply(st, g, nv, left, right, &mut self.buf);
            }
            BaseScheme::Mp5 => unreachable!("MP5 has no linear candidate"),
        }
        self.pair.tag_all(Provenance::Linear);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair_from(l: &[f64], r: &[f64]) -> InterfacePair {
        let mut p = InterfacePair::with_faces(l.len());
        for f in 0..l.len() {
            p.left[f][0] = l[f];
            p.right[f][0] = r[f];
        }
        p
    }

    #[test]
    fn limiter_keeps_empty_cells_empty() {
        let g = 3;
        let mut states = vec![[0.0; MAX_VARS]; 4 + 2 * g];
        for (j, s) in states.iter_mut().enumerate() {
            *s = [1.0, if j < g + 2 { 0.0 } else { 0.5 }, 0.0, 0.0, 1.0, 1.0];
        }
        let mut p = InterfacePair::with_faces(5);
        for f in 0..5 {
            p.left[f] = [1.0, 1e-3, 0.0, 0.0, 1.0, 1.0 + 1e-9];
            p.right[f] = [1.0, -1e-17, 0.0, 0.0, 1.0, 0.999];
        }
        limit_partial_densities(&mut p, &states, g, false);
        // Cells 0 and 1 hold no second fluid, so their faces carry none.
        assert_eq!(p.right[0][1], 0.0);
        assert_eq!(p.left[1][1], 0.0);
        assert_eq!(p.left[2][1], 0.0);
        for f in 0..5 {
            assert!(p.left[f][1] >= 0.0 && p.right[f][1] >= 0.0);
            assert!(p.left[f][5] <= 1.0 && p.right[f][5] <= 1.0);
        }
        // Untouched variables keep their values; scaled ones move towards
        // the cell value.
        assert_eq!(p.left[0][0], 1.0);
        assert!(p.right[3][5] >= 0.999 && p.right[3][5] <= 1.0);
    }

    #[test]
    fn tbv_definition() {
        let p = pair_from(&[1.0, 1.0], &[1.0, 1.0]);
        assert_eq!(tbv(&p, 0, 0), 0.0);
        let p = pair_from(&[1.0, 1.0], &[0.0, 2.0]);
        assert_eq!(tbv(&p, 0, 0), 2.0);
    }

    #[test]
    fn bvd_single_trigger_is_local() {
        let n = 10;
        let lin = pair_from(&vec![0.0; n + 1], &vec![0.0; n + 1]);
        let mut lin = lin;
        // Cell 5 has a large linear jump at its right face.
        lin.left[6][0] = 1.0;
        let mut mp5 = pair_from(&vec![0.5; n + 1], &vec![0.5; n + 1]);
        mp5.tag_all(Provenance::Mp5);
        let out = bvd_select(&lin, &mp5, 1, false);
        let changed: Vec<usize> = (0..=n).filter(|&f| out.left_tag[f][0] == Provenance::Mp5).collect();
        // Cells 5 and 6 both see the jump at face 6.
        assert_eq!(changed, vec![4, 5, 6, 7, 8]);
        for f in 0..=n {
            let v = out.left[f][0];
            assert!(v == lin.left[f][0] || v == mp5.left[f][0]);
        }
    }

    #[test]
    fn scheme_names_round_trip() {
        for name in ["mp5", "ig4mp", "ig6mp", "ig4", "ig6", "c5", "muscl"] {
            assert_eq!(SchemeConfig::from_name(name, false).unwrap().name(), name);
        }
        assert_eq!(SchemeConfig::from_name("ig4mp", false).unwrap().alpha_mp, 7.0);
        assert_eq!(SchemeConfig::from_name("ig4mp", true).unwrap().alpha_mp, 4.0);
        assert_eq!(SchemeConfig::from_name("mp5", false).unwrap().alpha_mp, 4.0);
        assert!(SchemeConfig::from_name("weno", false).is_err());
    }

    #[test]
    fn fallback_prefers_mp5() {
        let gas = GasModel::single(1.4);
        let good = [1.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        let bad = [1.0, 0.0, 0.0, 0.0, -0.1, 0.0];
        let mut p = InterfacePair::with_faces(2);
        p.left = vec![bad, good];
        p.right = vec![good, good];
        let mut m = InterfacePair::with_faces(2);
        m.left = vec![good, good];
        m.right = vec![good, good];
        let fo = vec![good; 2];
        let c = positivity_fallback(&mut p, &m, &fo, &fo, &gas).unwrap();
        assert_eq!(c, FallbackCounts { to_mp5: 1, to_first_order: 0 });
        assert_eq!(p.left_tag[0][0], Provenance::Mp5);

        m.left[1] = bad;
        p.left[1] = bad;
        let c = positivity_fallback(&mut p, &m, &fo, &fo, &gas).unwrap();
        assert_eq!(c.to_first_order, 1);

        let mut p2 = p.clone();
        p2.left[0] = bad;
        m.left[0] = bad;
        let fo_bad = vec![bad; 2];
        assert!(positivity_fallback(&mut p2, &m, &fo_bad, &fo, &gas).is_err());
    }
}
