//! High-order finite-volume solver for the compressible Euler and
//! Navier-Stokes equations with implicit-gradient reconstruction, boundary
//! variation diminishing selection and HLLC fluxes, for single gases and
//! two-fluid mixtures.

pub mod analysis;
pub mod boundary;
pub mod cases;
pub mod compact;
pub mod error;
pub mod gas;
pub mod grid;
pub mod integrator;
pub mod reconstruction;
pub mod riemann;
pub mod viscous;

pub use boundary::{apply_boundary_conditions, Boundary, BoundarySet};
pub use cases::{build, Case, CaseSpec, Overrides, CASE_IDS};
pub use compact::{CompactScheme, Closure, GradientField};
pub use error::{Error, Result};
pub use gas::{cons_to_prim, mixture_gamma, prim_to_cons, sound_speed, Conserved, GasModel, Primitive, MAX_VARS};
pub use grid::{Field, Grid};
pub use integrator::{RunConfig, RunResult, Solver};
pub use reconstruction::{BaseScheme, SchemeConfig};
