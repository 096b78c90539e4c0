//! Spectral analysis, convergence studies and flow diagnostics.

pub mod ooa;
pub mod spectral;

use serde::Serialize;

use crate::boundary::BoundarySet;
use crate::compact::{gradients_all, CompactScheme};
use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::grid::Field;

pub use ooa::{observed_order, ooa_harness, OoaRow, OoaTable};
pub use spectral::{modified_wavenumber, theta_samples, SpectralCurve, SpectralScheme};

/// `Σ ρ|u|²/2 · V` over interior cells of a primitive field.
pub fn kinetic_energy(prim: &Field, gas: &GasModel) -> f64 {
    let vol = prim.grid.cell_volume();
    let mut sum = 0.0;
    for ijk in prim.grid.interior() {
        let u = prim.state(ijk);
        let v = gas.velocity(&u);
        sum += 0.5 * gas.density(&u) * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
    sum * vol
}

/// Vorticity at one interior cell from per-axis first-derivative fields.
fn vorticity(first: &[Field], ijk: [isize; 3], gas: &GasModel) -> [f64; 3] {
    let vs = gas.velocity_slot();
    let nc = gas.velocity_components();
    // g[i][j] = ∂u_j/∂x_i
    let mut g = [[0.0; 3]; 3];
    for (i, fi) in first.iter().enumerate() {
        let s = fi.cell(ijk);
        for j in 0..nc {
            g[i][j] = s[vs + j];
        }
    }
    [g[1][2] - g[2][1], g[2][0] - g[0][2], g[0][1] - g[1][0]]
}

/// `Σ ‖ω‖` over interior cells, or `Σ ‖ω‖²` when `squared`, with the
/// vorticity taken from precomputed first derivatives.
pub fn enstrophy(prim: &Field, first: &[Field], gas: &GasModel, squared: bool) -> f64 {
    let mut sum = 0.0;
    for ijk in prim.grid.interior() {
        let w = vorticity(first, ijk, gas);
        let m2 = w[0] * w[0] + w[1] * w[1] + w[2] * w[2];
        sum += if squared { m2 } else { m2.sqrt() };
    }
    sum
}

/// [`enstrophy`] with sixth-order compact gradients of `prim`.
pub fn enstrophy_of(prim: &Field, bcs: &BoundarySet, gas: &GasModel, squared: bool) -> Result<f64> {
    let g = gradients_all(prim, bcs, CompactScheme::Cd6)?;
    Ok(enstrophy(prim, &g.first, gas, squared))
}

/// `φ = exp(|∇ρ| / max|∇ρ|)` at every interior cell, in interior order.
/// A field with no density gradient maps to `φ = 1`.
pub fn density_gradient_indicator(prim: &Field, bcs: &BoundarySet, gas: &GasModel) -> Result<Vec<f64>> {
    let g = gradients_all(prim, bcs, CompactScheme::Cd6)?;
    let mag: Vec<f64> = prim
        .grid
        .interior()
        .map(|ijk| {
            let mut s = 0.0;
            for fd in &g.first {
                let d = gas.density(&fd.state(ijk));
                s += d * d;
            }
            s.sqrt()
        })
        .collect();
    let max = mag.iter().copied().fold(0.0, f64::max);
    Ok(mag
        .iter()
        .map(|m| if max > 0.0 { (m / max).exp() } else { 1.0 })
        .collect())
}

/// Cell-centre values along one grid line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub axis: usize,
    /// Coordinate along `axis`.
    pub coord: Vec<f64>,
    /// One state per point, `nvars` entries each.
    pub values: Vec<Vec<f64>>,
}

impl Profile {
    pub fn var(&self, k: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[k]).collect()
    }
}

/// Values along `axis` at transverse cell index `index` (2D fields), e.g. the
/// first cell row above a wall.
pub fn wall_profile(field: &Field, axis: usize, index: usize) -> Result<Profile> {
    let grid = &field.grid;
    if grid.ndim != 2 || axis > 1 {
        return Err(Error::Config("profiles need a 2D field and axis 0 or 1".into()));
    }
    let other = 1 - axis;
    if index >= grid.dims[other] {
        return Err(Error::OutOfRange {
            index,
            extent: grid.dims[other],
        });
    }
    let mut coord = Vec::with_capacity(grid.dims[axis]);
    let mut values = Vec::with_capacity(grid.dims[axis]);
    for m in 0..grid.dims[axis] {
        let mut ijk = [0isize; 3];
        ijk[axis] = m as isize;
        ijk[other] = index as isize;
        coord.push(grid.center(ijk)[axis]);
        values.push(field.cell(ijk).to_vec());
    }
    Ok(Profile { axis, coord, values })
}

/// Values along `axis` through the middle of the domain. With an even cell
/// count across, the two central lines are averaged.
pub fn centerline_profile(field: &Field, axis: usize) -> Result<Profile> {
    let grid = &field.grid;
    if grid.ndim != 2 || axis > 1 {
        return Err(Error::Config("profiles need a 2D field and axis 0 or 1".into()));
    }
    let m = grid.dims[1 - axis];
    if m % 2 == 1 {
        return wall_profile(field, axis, m / 2);
    }
    let a = wall_profile(field, axis, m / 2 - 1)?;
    let b = wall_profile(field, axis, m / 2)?;
    let values = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| 0.5 * (p + q)).collect())
        .collect();
    Ok(Profile {
        axis,
        coord: a.coord,
        values,
    })
}

/// Reference `(y, u)` pairs for the cavity centreline at Re = 400.
pub fn ghia_re400_u() -> Vec<(f64, f64)> {
    include_str!("../../data/ghia_re400_u.csv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('y'))
        .filter_map(|l| {
            let mut it = l.split(',');
            let y = it.next()?.trim().parse().ok()?;
            let u = it.next()?.trim().parse().ok()?;
            Some((y, u))
        })
        .collect()
}

/// Linear interpolation of `(x, y)` samples (ascending `x`) at `at`,
/// clamped to the end values.
pub fn interpolate(x: &[f64], y: &[f64], at: f64) -> f64 {
    if at <= x[0] {
        return y[0];
    }
    let n = x.len();
    if at >= x[n - 1] {
        return y[n - 1];
    }
    let k = x.partition_point(|v| *v <= at).max(1);
    let t = (at - x[k - 1]) / (x[k] - x[k - 1]);
    y[k - 1] + t * (y[k] - y[k - 1])
}

/// Largest deviation between a profile and reference points, interpolating
/// the profile linearly and taking the given end values at the domain
/// boundaries.
pub fn max_deviation(coord: &[f64], values: &[f64], ends: (f64, f64, f64, f64), reference: &[(f64, f64)]) -> f64 {
    let mut x = vec![ends.0];
    let mut y = vec![ends.1];
    x.extend_from_slice(coord);
    y.extend_from_slice(values);
    x.push(ends.2);
    y.push(ends.3);
    reference
        .iter()
        .map(|&(r, v)| (interpolate(&x, &y, r) - v).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gas::Primitive;
    use crate::grid::Grid;

    fn periodic_box(n: usize, f: impl FnMut([f64; 3]) -> [f64; 6]) -> Field {
        let g = Grid::new(2, [n, n, 1], [0.0; 3], [1.0, 1.0, 1.0]).unwrap();
        Field::from_fn(g, 5, f)
    }

    #[test]
    fn quiescent_field() {
        let gas = GasModel::single(1.4);
        let f = periodic_box(8, |_| Primitive::single(1.0, 0.0, 0.0, 0.0, 1.0).0);
        assert_eq!(kinetic_energy(&f, &gas), 0.0);
        assert_eq!(enstrophy_of(&f, &BoundarySet::periodic(), &gas, false).unwrap(), 0.0);
        let phi = density_gradient_indicator(&f, &BoundarySet::periodic(), &gas).unwrap();
        assert!(phi.iter().all(|p| *p == 1.0));
    }

    #[test]
    fn linear_shear_vorticity() {
        let gas = GasModel::single(1.4);
        let f = periodic_box(10, |x| Primitive::single(1.0, x[1], 0.0, 0.0, 1.0).0);
        let bcs = BoundarySet::uniform(crate::boundary::Boundary::Outflow);
        let e = enstrophy_of(&f, &bcs, &gas, false).unwrap();
        assert!((e - 100.0).abs() < 1e-9, "{e}");
        let e2 = enstrophy_of(&f, &bcs, &gas, true).unwrap();
        assert!((e2 - 100.0).abs() < 1e-9);
    }

    #[test]
    fn kinetic_energy_hand_value() {
        let gas = GasModel::single(1.4);
        let f = periodic_box(4, |_| Primitive::single(2.0, 1.0, 2.0, 0.0, 1.0).0);
        assert!((kinetic_energy(&f, &gas) - 5.0).abs() < 1e-14);
    }

    #[test]
    fn profiles() {
        let f = periodic_box(6, |x| [x[0], x[1], 0.0, 0.0, 1.0, 0.0]);
        let p = wall_profile(&f, 0, 0).unwrap();
        assert_eq!(p.coord.len(), 6);
        assert!(p.var(1).iter().all(|v| (v - 1.0 / 12.0).abs() < 1e-15));
        let c = centerline_profile(&f, 1).unwrap();
        assert!(c.var(0).iter().all(|v| (v - 0.5).abs() < 1e-15));
        assert!(wall_profile(&f, 0, 6).is_err());
    }

    #[test]
    fn ghia_fixture() {
        let g = ghia_re400_u();
        assert_eq!(g.len(), 17);
        assert_eq!(g[0], (1.0, 1.0));
        assert_eq!(g[16], (0.0, 0.0));
    }

    #[test]
    fn interpolation() {
        let x = [0.0, 1.0, 2.0];
        let y = [0.0, 10.0, 0.0];
        assert_eq!(interpolate(&x, &y, 0.5), 5.0);
        assert_eq!(interpolate(&x, &y, 1.5), 5.0);
        assert_eq!(interpolate(&x, &y, -1.0), 0.0);
    }
}
