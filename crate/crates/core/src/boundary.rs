//! Ghost-cell boundary conditions for primitive fields.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gas::{GasModel, Primitive, StateVec};
use crate::grid::Field;

/// Time-dependent exact state used for manufactured boundaries.
pub type ExactFn = Arc<dyn Fn([f64; 3], f64) -> StateVec + Send + Sync>;

#[derive(Clone)]
pub enum Boundary {
    Periodic,
    /// Slip wall: mirror with the wall-normal velocity negated.
    ReflectiveWall,
    /// Mirror with every velocity component reflected about the wall velocity.
    NoSlipWall { wall_velocity: [f64; 3] },
    /// Zero-gradient extrapolation.
    Outflow,
    Dirichlet(Primitive),
    /// Upper boundary of the double Mach reflection: post-shock state left of
    /// the moving shock trace, pre-shock state right of it.
    DmrTop { post: Primitive, pre: Primitive },
    /// Lower boundary of the double Mach reflection: post-shock inflow for
    /// `x < x_reflect`, slip wall beyond.
    DmrBottom { post: Primitive, x_reflect: f64 },
    /// Ghost values sampled from an exact solution.
    Exact(ExactFn),
}

impl fmt::Debug for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Periodic => write!(f, "Periodic"),
            Boundary::ReflectiveWall => write!(f, "ReflectiveWall"),
            Boundary::NoSlipWall { wall_velocity } => {
                write!(f, "NoSlipWall {{ wall_velocity: {wall_velocity:?} }}")
            }
            Boundary::Outflow => write!(f, "Outflow"),
            Boundary::Dirichlet(p) => write!(f, "Dirichlet({:?})", p.0),
            Boundary::DmrTop { .. } => write!(f, "DmrTop"),
            Boundary::DmrBottom { x_reflect, .. } => write!(f, "DmrBottom(x>{x_reflect})"),
            Boundary::Exact(_) => write!(f, "Exact"),
        }
    }
}

impl Boundary {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Boundary::Periodic)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Boundary::Periodic => "periodic",
            Boundary::ReflectiveWall => "reflective_wall",
            Boundary::NoSlipWall { .. } => "noslip_wall",
            Boundary::Outflow => "outflow",
            Boundary::Dirichlet(_) => "dirichlet",
            Boundary::DmrTop { .. } => "dmr_top",
            Boundary::DmrBottom { .. } => "dmr_bottom",
            Boundary::Exact(_) => "exact",
        }
    }
}

/// Shock position along `y = 1` at time `t` for the Mach 10 double Mach
/// reflection (shock inclined at 60 degrees, foot at `x = 1/6`).
pub fn dmr_shock_position(t: f64) -> f64 {
    1.0 / 6.0 + (1.0 + 20.0 * t) / 3f64.sqrt()
}

/// Boundary conditions indexed by `[axis][side]`, side 0 being the low end.
#[derive(Clone, Debug)]
pub struct BoundarySet {
    pub sides: [[Boundary; 2]; 3],
}

impl BoundarySet {
    pub fn uniform(b: Boundary) -> Self {
        BoundarySet {
            sides: [
                [b.clone(), b.clone()],
                [b.clone(), b.clone()],
                [b.clone(), b],
            ],
        }
    }

    pub fn periodic() -> Self {
        Self::uniform(Boundary::Periodic)
    }

    pub fn set(mut self, axis: usize, side: usize, b: Boundary) -> Self {
        self.sides[axis][side] = b;
        self
    }

    pub fn set_axis(mut self, axis: usize, b: Boundary) -> Self {
        self.sides[axis] = [b.clone(), b];
        self
    }

    pub fn is_periodic(&self, axis: usize) -> bool {
        self.sides[axis][0].is_periodic()
    }

    pub fn validate(&self, ndim: usize) -> Result<()> {
        for a in 0..ndim {
            if self.sides[a][0].is_periodic() != self.sides[a][1].is_periodic() {
                return Err(Error::Config(format!(
                    "periodic boundary on axis {a} must be paired with a periodic opposite side"
                )));
            }
        }
        Ok(())
    }
}

/// Fills every ghost cell of a primitive field. Axes are processed in order
/// over full extents so that edge and corner ghosts are consistent.
pub fn apply_boundary_conditions(
    f: &mut Field,
    bcs: &BoundarySet,
    gas: &GasModel,
    t: f64,
) -> Result<()> {
    let grid = f.grid.clone();
    bcs.validate(grid.ndim)?;
    let vslot = gas.velocity_slot();
    let nvel = gas.velocity_components();
    for axis in 0..grid.ndim {
        let n = grid.dims[axis] as isize;
        let g = grid.ghost as isize;
        let (oa, ob) = other_axes(axis);
        for b in grid.full_range(ob) {
            for a in grid.full_range(oa) {
                for side in 0..2 {
                    let bc = &bcs.sides[axis][side];
                    for m in 1..=g {
                        let (ghost, mirror, wrap, nearest) = if side == 0 {
                            (-m, m - 1, n - m, 0)
                        } else {
                            (n - 1 + m, n - m, m - 1, n - 1)
                        };
                        let at = |c: isize| {
                            let mut ijk = [0isize; 3];
                            ijk[axis] = c;
                            ijk[oa] = a;
                            ijk[ob] = b;
                            ijk
                        };
                        let gijk = at(ghost);
                        let reflect = |f: &Field| {
                            let mut s = f.state(at(mirror.clamp(0, n - 1)));
                            if axis < nvel {
                                s[vslot + axis] = -s[vslot + axis];
                            }
                            s
                        };
                        let state = match bc {
                            Boundary::Periodic => f.state(at(wrap.rem_euclid(n))),
                            Boundary::Outflow => f.state(at(nearest)),
                            Boundary::ReflectiveWall => reflect(f),
                            Boundary::NoSlipWall { wall_velocity } => {
                                let mut s = f.state(at(mirror.clamp(0, n - 1)));
                                for c in 0..nvel {
                                    s[vslot + c] = 2.0 * wall_velocity[c] - s[vslot + c];
                                }
                                s
                            }
                            Boundary::Dirichlet(p) => p.0,
                            Boundary::DmrTop { post, pre } => {
                                let x = grid.center(gijk)[0];
                                if x < dmr_shock_position(t) {
                                    post.0
                                } else {
                                    pre.0
                                }
                            }
                            Boundary::DmrBottom { post, x_reflect } => {
                                if grid.center(gijk)[0] < *x_reflect {
                                    post.0
                                } else {
                                    reflect(f)
                                }
                            }
                            Boundary::Exact(e) => e(grid.center(gijk), t),
                        };
                        f.set(gijk, &state);
                    }
                }
            }
        }
    }
    Ok(())
}

fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}
