//! Linear face reconstructions of a single variable along a line.
//!
//! Lines carry `g` ghost cells on each side: `ext[g + j]` is cell `j`.
//! Face `f` (for `f` in `0..=n`) separates cells `f - 1` and `f`; its left
//! value comes from cell `f - 1` and its right value from cell `f`.

use crate::compact::Factors;
use crate::error::{Error, Result};
use crate::gas::{StateVec, MAX_VARS};

/// Implicit-gradient faces from physical derivatives `d1`, `d2` of the
/// interior cells. On open lines the left value of face 0 and the right value
/// of face `n` have no source cell and are written as NaN for the caller to
/// fill.
pub fn ig_faces(
    u: &[f64],
    d1: &[f64],
    d2: &[f64],
    h: f64,
    periodic: bool,
    left: &mut [f64],
    right: &mut [f64],
) {
    let n = u.len();
    debug_assert!(d1.len() == n && d2.len() == n && left.len() == n + 1 && right.len() == n + 1);
    let h2 = h * h / 12.0;
    let hh = 0.5 * h;
    for j in 0..n {
        let base = u[j] + h2 * d2[j];
        left[j + 1] = base + hh * d1[j];
        right[j] = base - hh * d1[j];
    }
    if periodic {
        left[0] = left[n];
        right[n] = right[0];
    } else {
        left[0] = f64::NAN;
        right[n] = f64::NAN;
    }
}

/// Three-point MUSCL faces with κ = 1/3 (third order).
pub fn muscl_faces(ext: &[f64], g: usize, left: &mut [f64], right: &mut [f64]) {
    let n = left.len() - 1;
    debug_assert!(g >= 2 && ext.len() == n + 2 * g);
    for f in 0..=n {
        let c = g + f;
        left[f] = muscl_left(ext[c - 2], ext[c - 1], ext[c]);
        right[f] = muscl_left(ext[c + 1], ext[c], ext[c - 1]);
    }
}

/// Left face value of the middle cell from `(u_{j-1}, u_j, u_{j+1})`.
#[inline]
pub fn muscl_left(um: f64, u0: f64, up: f64) -> f64 {
    (-um + 5.0 * u0 + 2.0 * up) / 6.0
}

/// Fifth-order compact upwind faces. Open lines pin faces 0 and `n` to
/// MUSCL values; periodic lines solve the cyclic system.
pub fn c5_faces(ext: &[f64], g: usize, periodic: bool, left: &mut [f64], right: &mut [f64]) -> Result<()> {
    let n = left.len() - 1;
    let op = C5Operator::new(n, periodic)?;
    let states: Vec<StateVec> = ext
        .iter()
        .map(|v| {
            let mut s = [0.0; MAX_VARS];
            s[0] = *v;
            s
        })
        .collect();
    let mut l = vec![[0.0; MAX_VARS]; n + 1];
    let mut r = vec![[0.0; MAX_VARS]; n + 1];
    op.apply(&states, g, 1, &mut l, &mut r, &mut Vec::new());
    for f in 0..=n {
        left[f] = l[f][0];
        right[f] = r[f][0];
    }
    Ok(())
}

/// The two C5 systems of a line, factorized once.
#[derive(Clone, Debug)]
pub struct C5Operator {
    pub n: usize,
    pub periodic: bool,
    left: Factors,
    right: Factors,
}

impl C5Operator {
    pub fn new(n: usize, periodic: bool) -> Result<Self> {
        if n < 3 {
            return Err(Error::LineTooShort { len: n, min: 3 });
        }
        // Periodic lines solve for faces 0..n-1; open lines for 0..=n with
        // the end rows pinned.
        let m = if periodic { n } else { n + 1 };
        let diag = vec![1.0; m];
        let (mut a, mut b) = (vec![0.5; m], vec![1.0 / 6.0; m]);
        if !periodic {
            for v in [&mut a, &mut b] {
                v[0] = 0.0;
                v[n] = 0.0;
            }
        }
        Ok(C5Operator {
            n,
            periodic,
            left: Factors::new(&a, &diag, &b, periodic)?,
            right: Factors::new(&b, &diag, &a, periodic)?,
        })
    }

    /// Faces of the first `nv` variables of `ext` (with `g` ghosts per side).
    pub fn apply(
        &self,
        ext: &[StateVec],
        g: usize,
        nv: usize,
        left: &mut [StateVec],
        right: &mut [StateVec],
        buf: &mut Vec<f64>,
    ) {
        let n = self.n;
        debug_assert!(ext.len() == n + 2 * g && left.len() == n + 1 && g >= 2);
        let m = if self.periodic { n } else { n + 1 };
        let u = |j: isize, k: usize| ext[(g as isize + j) as usize][k];
        let cell = |j: isize| -> isize {
            if self.periodic {
                j.rem_euclid(n as isize)
            } else {
                j
            }
        };
        buf.resize(2 * m * nv, 0.0);
        let (rl, rr) = buf.split_at_mut(m * nv);
        for f in 0..m {
            let fi = f as isize;
            let pinned = !self.periodic && (f == 0 || f == n);
            let (a, b, c, d) = (cell(fi - 2), cell(fi - 1), cell(fi), cell(fi + 1));
            for k in 0..nv {
                if pinned {
                    rl[f * nv + k] = muscl_left(u(fi - 2, k), u(fi - 1, k), u(fi, k));
                    rr[f * nv + k] = muscl_left(u(fi + 1, k), u(fi, k), u(fi - 1, k));
                } else {
                    rl[f * nv + k] = u(a, k) / 18.0 + 19.0 / 18.0 * u(b, k) + 5.0 / 9.0 * u(c, k);
                    rr[f * nv + k] = 5.0 / 9.0 * u(b, k) + 19.0 / 18.0 * u(c, k) + u(d, k) / 18.0;
                }
            }
        }
        self.left.solve_interleaved(rl, nv);
        self.right.solve_interleaved(rr, nv);
        for f in 0..m {
            left[f][..nv].copy_from_slice(&rl[f * nv..(f + 1) * nv]);
            right[f][..nv].copy_from_slice(&rr[f * nv..(f + 1) * nv]);
        }
        if self.periodic {
            left[n] = left[0];
            right[n] = right[0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn muscl_hand_values() {
        assert_eq!(muscl_left(1.0, 1.0, 1.0), 1.0);
        assert_eq!(muscl_left(0.0, 1.0, 2.0), 1.5);
        assert!((muscl_left(1.0, 2.0, 4.0) - 17.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn ig_linear_exact() {
        let n = 8;
        let u: Vec<f64> = (0..n).map(|j| j as f64).collect();
        let mut l = vec![0.0; n + 1];
        let mut r = vec![0.0; n + 1];
        ig_faces(&u, &vec![1.0; n], &vec![0.0; n], 1.0, false, &mut l, &mut r);
        for f in 1..n {
            assert_eq!(l[f], f as f64 - 0.5);
            assert_eq!(r[f], f as f64 - 0.5);
        }
        assert!(l[0].is_nan() && r[n].is_nan());
    }

    #[test]
    fn c5_linear_exact() {
        let (n, g) = (10, 3);
        let ext: Vec<f64> = (0..n + 2 * g).map(|k| k as f64 - g as f64).collect();
        for periodic in [false] {
            let mut l = vec![0.0; n + 1];
            let mut r = vec![0.0; n + 1];
            c5_faces(&ext, g, periodic, &mut l, &mut r).unwrap();
            for f in 0..=n {
                assert!((l[f] - (f as f64 - 0.5)).abs() < 1e-12);
                assert!((r[f] - (f as f64 - 0.5)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn c5_periodic_constant() {
        let (n, g) = (10, 3);
        let ext = vec![2.5; n + 2 * g];
        let mut l = vec![0.0; n + 1];
        let mut r = vec![0.0; n + 1];
        c5_faces(&ext, g, true, &mut l, &mut r).unwrap();
        assert!(l.iter().chain(&r).all(|v| (v - 2.5).abs() < 1e-13));
    }

    #[test]
    fn c5_periodic_sine_averages() {
        use std::f64::consts::PI;
        let (n, g) = (32, 3);
        let h = 2.0 * PI / n as f64;
        let avg = |j: isize| ((j as f64 * h).cos() - ((j + 1) as f64 * h).cos()) / h;
        let ext: Vec<f64> = (0..n + 2 * g).map(|k| avg(k as isize - g as isize)).collect();
        let mut l = vec![0.0; n + 1];
        let mut r = vec![0.0; n + 1];
        c5_faces(&ext, g, true, &mut l, &mut r).unwrap();
        for f in 0..=n {
            let want = (f as f64 * h).sin();
            assert!((l[f] - want).abs() < 2e-5, "{f}: {} {want}", l[f]);
            assert!((r[f] - want).abs() < 2e-5, "{f}: {} {want}", r[f]);
        }
    }
}
