//! Monotonicity-preserving fifth-order faces and the characteristic
//! projection used with them.

use crate::error::{Error, Result};
use crate::gas::{inv_gamma_minus_one, sound_speed_unchecked, GasModel, StateVec, MAX_VARS};

/// Limiter switch threshold.
pub const MP5_EPS: f64 = 1e-20;

// Plain compare-and-select; NaN propagation is not needed here.
#[inline(always)]
fn min(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

#[inline(always)]
fn max(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

#[inline]
pub fn minmod2(a: f64, b: f64) -> f64 {
    if a > 0.0 && b > 0.0 {
        min(a, b)
    } else if a < 0.0 && b < 0.0 {
        max(a, b)
    } else {
        0.0
    }
}

#[inline]
pub fn minmod4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0 {
        min(min(a, b), min(c, d))
    } else if a < 0.0 && b < 0.0 && c < 0.0 && d < 0.0 {
        max(max(a, b), max(c, d))
    } else {
        0.0
    }
}

/// Unlimited fifth-order upwind value at `j + 1/2`.
#[inline]
pub fn mp5_linear(s: &[f64; 5]) -> f64 {
    (2.0 * s[0] - 13.0 * s[1] + 47.0 * s[2] + 27.0 * s[3] - 3.0 * s[4]) * (1.0 / 60.0)
}

/// Left value at `j + 1/2` from `s = [u_{j-2}, .., u_{j+2}]`.
#[inline]
pub fn mp5_face(s: &[f64; 5], alpha: f64) -> f64 {
    mp5_face_eps(s, alpha, MP5_EPS)
}

/// Limiter bounds `(u_min, u_max)` for the stencil.
#[inline(always)]
pub fn mp5_bounds(s: &[f64; 5], alpha: f64) -> (f64, f64) {
    let djm = s[0] - 2.0 * s[1] + s[2];
    let dj = s[1] - 2.0 * s[2] + s[3];
    let djp = s[2] - 2.0 * s[3] + s[4];
    let dm_p = minmod4(4.0 * dj - djp, 4.0 * djp - dj, dj, djp);
    let dm_m = minmod4(4.0 * djm - dj, 4.0 * dj - djm, djm, dj);
    let ul = s[2] + alpha * (s[2] - s[1]);
    let umd = 0.5 * (s[2] + s[3]) - 0.5 * dm_p;
    let ulc = s[2] + 0.5 * (s[2] - s[1]) + 4.0 / 3.0 * dm_m;
    let umin = max(min(min(s[2], s[3]), umd), min(min(s[2], ul), ulc));
    let umax = min(max(max(s[2], s[3]), umd), max(max(s[2], ul), ulc));
    (umin, umax)
}

#[inline(always)]
pub fn mp5_face_eps(s: &[f64; 5], alpha: f64, eps: f64) -> f64 {
    let ulin = mp5_linear(s);
    let ump = s[2] + minmod2(s[3] - s[2], alpha * (s[2] - s[1]));
    if (ulin - s[2]) * (ulin - ump) <= eps {
        return ulin;
    }
    let (umin, umax) = mp5_bounds(s, alpha);
    ulin + minmod2(umin - ulin, umax - ulin)
}

/// Left/right eigenvectors of the primitive-variable Jacobian at a face.
/// Projections use closed forms; [`EigenSystem::left_matrix`] and
/// [`EigenSystem::right_matrix`] give the explicit matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    pub nvars: usize,
    pub normal: [f64; 3],
    pub rho: f64,
    pub c: f64,
    /// Averaged partial densities (mixtures only).
    pub partial: [f64; 2],
    pub tangent: [[f64; 3]; 2],
    pub mixture: bool,
    // Cached products of the averages.
    half_rho_over_c: f64,
    inv_c2: f64,
    c_over_rho: f64,
    inv_rho: f64,
}

impl EigenSystem {
    fn new(nvars: usize, normal: [f64; 3], rho: f64, c: f64, partial: [f64; 2], mixture: bool) -> Self {
        let (t1, t2) = tangents(normal);
        EigenSystem {
            nvars,
            normal,
            rho,
            c,
            partial,
            tangent: [t1, t2],
            mixture,
            half_rho_over_c: 0.5 * rho / c,
            inv_c2: 1.0 / (c * c),
            c_over_rho: c / rho,
            inv_rho: 1.0 / rho,
        }
    }

    /// Characteristic variables `L u`. Unused entries are zero.
    #[inline]
    pub fn to_characteristic(&self, u: &StateVec) -> StateVec {
        let n = self.normal;
        let mut w = [0.0; MAX_VARS];
        if self.mixture {
            let un = n[0] * u[2] + n[1] * u[3];
            let cr = 0.5 * self.c * self.rho;
            let yp = self.inv_c2 * self.inv_rho * u[4];
            w[0] = 0.5 * u[4] - cr * un;
            w[1] = u[0] - self.partial[0] * yp;
            w[2] = u[1] - self.partial[1] * yp;
            w[3] = -n[1] * u[2] + n[0] * u[3];
            w[4] = u[5];
            w[5] = 0.5 * u[4] + cr * un;
        } else {
            let [t1, t2] = self.tangent;
            let dot = |a: [f64; 3]| a[0] * u[1] + a[1] * u[2] + a[2] * u[3];
            let an = self.half_rho_over_c * dot(n);
            let pc = u[4] * self.inv_c2;
            w[0] = 0.5 * pc - an;
            w[1] = u[0] - pc;
            w[2] = 0.5 * pc + an;
            w[3] = self.rho * dot(t1);
            w[4] = self.rho * dot(t2);
        }
        w
    }

    /// Primitive variables `R w`.
    #[inline]
    pub fn to_primitive(&self, w: &StateVec) -> StateVec {
        let n = self.normal;
        let mut u = [0.0; MAX_VARS];
        if self.mixture {
            let y = self.inv_c2 * self.inv_rho;
            let s = w[0] + w[5];
            let dn = (w[5] - w[0]) * self.inv_rho / self.c;
            u[0] = self.partial[0] * y * s + w[1];
            u[1] = self.partial[1] * y * s + w[2];
            u[2] = n[0] * dn - n[1] * w[3];
            u[3] = n[1] * dn + n[0] * w[3];
            u[4] = s;
            u[5] = w[4];
        } else {
            let [t1, t2] = self.tangent;
            let dn = self.c_over_rho * (w[2] - w[0]);
            let (a, b) = (w[3] * self.inv_rho, w[4] * self.inv_rho);
            u[0] = w[0] + w[1] + w[2];
            for d in 0..3 {
                u[1 + d] = n[d] * dn + t1[d] * a + t2[d] * b;
            }
            u[4] = self.c * self.c * (w[0] + w[2]);
        }
        u
    }

    /// Rows are left eigenvectors.
    pub fn left_matrix(&self) -> [[f64; MAX_VARS]; MAX_VARS] {
        let mut l = [[0.0; MAX_VARS]; MAX_VARS];
        let (n, rho, c) = (self.normal, self.rho, self.c);
        if self.mixture {
            let (nx, ny) = (n[0], n[1]);
            let cr = c * rho;
            let y1 = self.partial[0] / (c * c * rho);
            let y2 = self.partial[1] / (c * c * rho);
            l[0] = [0.0, 0.0, -nx * cr / 2.0, -ny * cr / 2.0, 0.5, 0.0];
            l[1] = [1.0, 0.0, 0.0, 0.0, -y1, 0.0];
            l[2] = [0.0, 1.0, 0.0, 0.0, -y2, 0.0];
            l[3] = [0.0, 0.0, -ny, nx, 0.0, 0.0];
            l[4] = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
            l[5] = [0.0, 0.0, nx * cr / 2.0, ny * cr / 2.0, 0.5, 0.0];
        } else {
            let c2 = c * c;
            let [t1, t2] = self.tangent;
            l[0][4] = 0.5 / c2;
            l[1][0] = 1.0;
            l[1][4] = -1.0 / c2;
            l[2][4] = 0.5 / c2;
            for d in 0..3 {
                l[0][1 + d] = -n[d] * rho / (2.0 * c);
                l[2][1 + d] = n[d] * rho / (2.0 * c);
                l[3][1 + d] = rho * t1[d];
                l[4][1 + d] = rho * t2[d];
            }
        }
        l
    }

    /// Columns are right eigenvectors.
    pub fn right_matrix(&self) -> [[f64; MAX_VARS]; MAX_VARS] {
        let mut r = [[0.0; MAX_VARS]; MAX_VARS];
        let (n, rho, c) = (self.normal, self.rho, self.c);
        if self.mixture {
            let (nx, ny) = (n[0], n[1]);
            let cr = c * rho;
            let y1 = self.partial[0] / (c * c * rho);
            let y2 = self.partial[1] / (c * c * rho);
            // Columns: acoustic-, partial densities, shear, volume fraction, acoustic+.
            r[0] = [y1, 1.0, 0.0, 0.0, 0.0, y1];
            r[1] = [y2, 0.0, 1.0, 0.0, 0.0, y2];
            r[2] = [-nx / cr, 0.0, 0.0, -ny, 0.0, nx / cr];
            r[3] = [-ny / cr, 0.0, 0.0, nx, 0.0, ny / cr];
            r[4] = [1.0, 0.0, 0.0, 0.0, 0.0, 1.0];
            r[5] = [0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
        } else {
            let c2 = c * c;
            let [t1, t2] = self.tangent;
            r[0][0] = 1.0;
            r[0][1] = 1.0;
            r[0][2] = 1.0;
            r[4][0] = c2;
            r[4][2] = c2;
            for d in 0..3 {
                r[1 + d][0] = -n[d] * c / rho;
                r[1 + d][2] = n[d] * c / rho;
                r[1 + d][3] = t1[d] / rho;
                r[1 + d][4] = t2[d] / rho;
            }
        }
        r
    }

    /// `L u` by the full matrix product.
    pub fn to_characteristic_dense(&self, u: &StateVec) -> StateVec {
        mat_vec(&self.left_matrix(), u)
    }

    /// `R w` by the full matrix product.
    pub fn to_primitive_dense(&self, w: &StateVec) -> StateVec {
        mat_vec(&self.right_matrix(), w)
    }
}

fn mat_vec(m: &[[f64; MAX_VARS]; MAX_VARS], u: &StateVec) -> StateVec {
    let mut w = [0.0; MAX_VARS];
    for i in 0..MAX_VARS {
        w[i] = (0..MAX_VARS).map(|j| m[i][j] * u[j]).sum();
    }
    w
}

/// Two unit tangents completing `n` to an orthonormal frame.
pub fn tangents(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let t1 = if n[2].abs() < 0.9 {
        let m = (n[0] * n[0] + n[1] * n[1]).sqrt();
        [-n[1] / m, n[0] / m, 0.0]
    } else {
        let m = (n[1] * n[1] + n[2] * n[2]).sqrt();
        [0.0, -n[2] / m, n[1] / m]
    };
    let t2 = [
        n[1] * t1[2] - n[2] * t1[1],
        n[2] * t1[0] - n[0] * t1[2],
        n[0] * t1[1] - n[1] * t1[0],
    ];
    (t1, t2)
}

/// Eigensystem at the face between two cells: Roe averages for a single gas,
/// arithmetic averages for a mixture.
pub fn build_eigensystem(ul: &StateVec, ur: &StateVec, n: [f64; 3], gas: &GasModel) -> Result<EigenSystem> {
    match *gas {
        GasModel::Single { gamma, .. } => {
            let (rl, rr) = (ul[0], ur[0]);
            if !(rl > 0.0 && rr > 0.0) {
                return Err(Error::invalid("non-positive density in Roe average"));
            }
            let (sl, sr) = (rl.sqrt(), rr.sqrt());
            let w = 1.0 / (sl + sr);
            let g1 = 1.0 / (gamma - 1.0);
            let ke = |u: &StateVec| 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
            let hl = u_h(ul, g1, ke(ul));
            let hr = u_h(ur, g1, ke(ur));
            let mut ke = 0.0;
            for k in 1..4 {
                let v = (sl * ul[k] + sr * ur[k]) * w;
                ke += v * v;
            }
            let h = (sl * hl + sr * hr) * w;
            let c2 = (gamma - 1.0) * (h - 0.5 * ke);
            if !(c2 > 0.0) {
                return Err(Error::invalid(format!("non-positive Roe sound speed squared {c2}")));
            }
            Ok(EigenSystem::new(gas.nvars(), n, sl * sr, c2.sqrt(), [0.0; 2], false))
        }
        GasModel::Multi { .. } => {
            let rho = 0.5 * (ul[0] + ul[1] + ur[0] + ur[1]);
            let c = 0.5 * (sound_speed_unchecked(ul, gas) + sound_speed_unchecked(ur, gas));
            if !(rho > 0.0 && c > 0.0) {
                return Err(Error::invalid(format!("degenerate mixture average rho={rho}, c={c}")));
            }
            let partial = [0.5 * (ul[0] + ur[0]), 0.5 * (ul[1] + ur[1])];
            Ok(EigenSystem::new(gas.nvars(), n, rho, c, partial, true))
        }
    }
}

/// Roe-averaged normal velocity and sound speed for a single gas, or the
/// arithmetic averages for a mixture.
pub(crate) fn averaged_speed(ul: &StateVec, ur: &StateVec, n: [f64; 3], gas: &GasModel) -> (f64, f64) {
    let vs = gas.velocity_slot();
    let nc = gas.velocity_components();
    let un = |u: &StateVec| (0..nc).map(|d| u[vs + d] * n[d]).sum::<f64>();
    match gas {
        GasModel::Single { gamma, .. } => {
            let (sl, sr) = (ul[0].sqrt(), ur[0].sqrt());
            let w = 1.0 / (sl + sr);
            let g1 = inv_gamma_minus_one(ul, gas);
            let ke = |u: &StateVec| 0.5 * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
            let hl = u_h(ul, g1, ke(ul));
            let hr = u_h(ur, g1, ke(ur));
            let mut q2 = 0.0;
            for k in 1..4 {
                let v = (sl * ul[k] + sr * ur[k]) * w;
                q2 += v * v;
            }
            let h = (sl * hl + sr * hr) * w;
            let c2 = (gamma - 1.0) * (h - 0.5 * q2);
            ((sl * un(ul) + sr * un(ur)) * w, c2.max(0.0).sqrt())
        }
        GasModel::Multi { .. } => (
            0.5 * (un(ul) + un(ur)),
            0.5 * (sound_speed_unchecked(ul, gas) + sound_speed_unchecked(ur, gas)),
        ),
    }
}

#[inline]
fn u_h(u: &StateVec, inv_gm1: f64, ke: f64) -> f64 {
    // Specific total enthalpy: (E + p)/ρ = γ/(γ-1) p/ρ + |u|²/2.
    (inv_gm1 + 1.0) * u[4] / u[0] + ke
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minmod_cases() {
        assert_eq!(minmod2(1.0, 2.0), 1.0);
        assert_eq!(minmod2(-1.0, 2.0), 0.0);
        assert_eq!(minmod4(-3.0, -2.0, -5.0, -1.0), -1.0);
        assert_eq!(minmod4(3.0, 2.0, -5.0, 1.0), 0.0);
    }

    #[test]
    fn mp5_hand_values() {
        assert_eq!(mp5_face(&[2.0; 5], 4.0), 2.0);
        assert!((mp5_face(&[1.0, 2.0, 3.0, 4.0, 5.0], 4.0) - 3.5).abs() < 1e-14);
        let v = mp5_face(&[0.0, 0.0, 0.0, 1.0, 1.0], 4.0);
        assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn roe_density_is_geometric() {
        let gas = GasModel::single(1.4);
        let e = build_eigensystem(&[1.0, 0.0, 0.0, 0.0, 1.0, 0.0], &[4.0, 0.0, 0.0, 0.0, 1.0, 0.0], [1.0, 0.0, 0.0], &gas)
            .unwrap();
        assert!((e.rho - 2.0).abs() < 1e-14);
    }

    #[test]
    fn tangents_are_orthonormal() {
        for n in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.6, 0.0, 0.8]] {
            let (a, b) = tangents(n);
            let dot = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
            assert!(dot(a, n).abs() < 1e-15 && dot(b, n).abs() < 1e-15 && dot(a, b).abs() < 1e-15);
            assert!((dot(a, a) - 1.0).abs() < 1e-15 && (dot(b, b) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_projections_match_matrices() {
        let single = GasModel::single(1.4);
        let ul = [1.0, 0.3, -0.2, 0.1, 1.0, 0.0];
        let ur = [0.5, 0.1, 0.4, -0.3, 0.7, 0.0];
        let multi = GasModel::multi(1.4, 1.6);
        let ml = [0.3, 0.5, 0.2, -0.1, 1.0, 0.4];
        let mr = [0.1, 0.9, -0.3, 0.2, 0.8, 0.2];
        for (gas, a, b) in [(&single, ul, ur), (&multi, ml, mr)] {
            for n in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.6, 0.8, 0.0]] {
                let e = build_eigensystem(&a, &b, n, gas).unwrap();
                let x = [0.7, -1.1, 0.4, 2.0, 0.3, -0.6];
                let mut xv = x;
                for v in xv.iter_mut().skip(gas.nvars()) {
                    *v = 0.0;
                }
                let (p, q) = (e.to_characteristic(&xv), e.to_characteristic_dense(&xv));
                let (r, s) = (e.to_primitive(&xv), e.to_primitive_dense(&xv));
                for k in 0..MAX_VARS {
                    assert!((p[k] - q[k]).abs() < 1e-13, "{k}: {p:?} {q:?}");
                    assert!((r[k] - s[k]).abs() < 1e-13, "{k}: {r:?} {s:?}");
                }
            }
        }
    }
}
