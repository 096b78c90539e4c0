//! Viscous stresses and heat flux at cell centres and their interpolation to
//! faces.
//!
//! The viscous flux along axis `d` is laid out like the conserved vector:
//! zero mass rows, `-τ_d·` in the momentum rows and `-τ_d·u + q_d` in the
//! energy row. Mixtures carry no heat flux.

use crate::error::{Error, Result};
use crate::gas::{GasModel, StateVec, MAX_VARS};
use crate::grid::Field;

/// Velocity gradient tensor: `g[i][j] = ∂u_j / ∂x_i`.
pub type VelocityGradient = [[f64; 3]; 3];

/// Newtonian stress with Stokes' hypothesis.
pub fn stress_tensor(g: &VelocityGradient, mu: f64) -> [[f64; 3]; 3] {
    let div = g[0][0] + g[1][1] + g[2][2];
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = mu * (g[i][j] + g[j][i]);
        }
        t[i][i] -= 2.0 / 3.0 * mu * div;
    }
    t
}

/// Fourier heat flux with the temperature gradient taken from the pressure
/// and density gradients, `∂(p/ρ) = ∂p/ρ - p ∂ρ/ρ²`.
pub fn heat_flux(grad_p: [f64; 3], grad_rho: [f64; 3], rho: f64, p: f64, gas: &GasModel) -> Result<[f64; 3]> {
    if !(rho > 0.0) {
        return Err(Error::invalid(format!("heat flux needs positive density, got {rho}")));
    }
    Ok(heat_flux_unchecked(grad_p, grad_rho, rho, p, gas))
}

#[inline]
fn heat_flux_unchecked(grad_p: [f64; 3], grad_rho: [f64; 3], rho: f64, p: f64, gas: &GasModel) -> [f64; 3] {
    match *gas {
        GasModel::Single { gamma, mu, pr } => {
            let k = -gamma * mu / (pr * (gamma - 1.0));
            let mut q = [0.0; 3];
            for d in 0..3 {
                q[d] = k * (grad_p[d] / rho - p * grad_rho[d] / (rho * rho));
            }
            q
        }
        GasModel::Multi { .. } => [0.0; 3],
    }
}

/// Viscous flux along `axis` from a primitive state and its gradients
/// (`grads[d][k] = ∂U_k/∂x_d`).
#[inline]
pub fn viscous_flux(u: &StateVec, grads: &[StateVec; 3], axis: usize, gas: &GasModel) -> StateVec {
    let vs = gas.velocity_slot();
    let nc = gas.velocity_components();
    let mut g: VelocityGradient = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..nc {
            g[i][j] = grads[i][vs + j];
        }
    }
    let tau = stress_tensor(&g, gas.mu());
    let mut f = [0.0; MAX_VARS];
    let mut work = 0.0;
    for j in 0..nc {
        f[vs + j] = -tau[axis][j];
        work += tau[axis][j] * u[vs + j];
    }
    f[4] = -work;
    if let GasModel::Single { .. } = gas {
        let rho = u[0];
        let gp = [grads[0][4], grads[1][4], grads[2][4]];
        let gr = [grads[0][0], grads[1][0], grads[2][0]];
        f[4] += heat_flux_unchecked(gp, gr, rho, u[4], gas)[axis];
    }
    f
}

/// Viscous fluxes along every active axis at interior cells, from
/// per-axis first-derivative fields.
pub fn cell_viscous_fluxes(f: &Field, first: &[Field], gas: &GasModel) -> Vec<Field> {
    let grid = &f.grid;
    let mut out: Vec<Field> = (0..grid.ndim).map(|_| Field::new(grid.clone(), f.nvars)).collect();
    for ijk in grid.interior() {
        let idx = grid.index(ijk[0], ijk[1], ijk[2]);
        let u = f.state_at(idx);
        let mut grads = [[0.0; MAX_VARS]; 3];
        for (d, fd) in first.iter().enumerate() {
            grads[d] = fd.state_at(idx);
        }
        for (axis, o) in out.iter_mut().enumerate() {
            o.set_at(idx, &viscous_flux(&u, &grads, axis, gas));
        }
    }
    out
}

/// Interpolates cell-centre values to faces.
///
/// `line` holds cells `-1..=n` (one ghost value per side); face `f` lies
/// between cells `f-1` and `f`. Open lines use the six-point rule where it
/// fits, the four-point rule one and two faces in, and the two-point average
/// on the boundary faces. Periodic lines use the six-point rule throughout
/// and ignore the ghost values.
pub fn interpolate_flux_to_faces(line: &[f64], periodic: bool, out: &mut [f64]) -> Result<()> {
    if line.len() < 6 {
        return Err(Error::LineTooShort { len: line.len().saturating_sub(2), min: 4 });
    }
    let n = line.len() - 2;
    debug_assert_eq!(out.len(), n + 1);
    let v = |j: isize| line[(j + 1) as usize];
    if periodic {
        let w = |j: isize| line[(j.rem_euclid(n as isize) + 1) as usize];
        for f in 0..=n {
            let j = f as isize;
            out[f] = six_point(w(j - 3), w(j - 2), w(j - 1), w(j), w(j + 1), w(j + 2));
        }
        return Ok(());
    }
    for f in 0..=n {
        let j = f as isize;
        out[f] = if f == 0 || f == n {
            0.5 * (v(j - 1) + v(j))
        } else if f < 3 || f + 3 > n {
            (-v(j - 2) + 7.0 * v(j - 1) + 7.0 * v(j) - v(j + 1)) / 12.0
        } else {
            six_point(v(j - 3), v(j - 2), v(j - 1), v(j), v(j + 1), v(j + 2))
        };
    }
    Ok(())
}

#[inline]
pub(crate) fn six_point(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> f64 {
    (a - 8.0 * b + 37.0 * c + 37.0 * d - 8.0 * e + f) / 60.0
}

#[inline]
pub(crate) fn four_point(a: f64, b: f64, c: f64, d: f64) -> f64 {
    (-a + 7.0 * b + 7.0 * c - d) / 12.0
}

/// Explicit fourth-order central derivative of the interior cells of a line
/// with `g >= 2` ghosts per side.
pub fn explicit_gradient_4e(ext: &[f64], g: usize, h: f64) -> Vec<f64> {
    assert!(g >= 2);
    let n = ext.len() - 2 * g;
    (0..n).map(|j| d4e(&ext[g + j - 2..g + j + 3], h)).collect()
}

/// Derivative at the middle of a five-point window.
#[inline]
pub fn d4e(w: &[f64], h: f64) -> f64 {
    (8.0 * (w[3] - w[1]) - (w[4] - w[0])) / (12.0 * h)
}
