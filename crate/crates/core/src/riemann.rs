//! HLLC fluxes with Einfeldt wave-speed estimates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gas::{is_admissible, physical_flux_raw, prim_to_cons_raw, sound_speed_unchecked, GasModel, Primitive, StateVec, MAX_VARS};
use crate::reconstruction::averaged_speed;

/// Floor on `|S_K - S*|`.
const DENOM_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WaveSpeeds {
    pub s_l: f64,
    pub s_r: f64,
    pub s_star: f64,
}

#[inline]
fn normal_velocity(u: &StateVec, n: [f64; 3], gas: &GasModel) -> f64 {
    let vs = gas.velocity_slot();
    (0..gas.velocity_components()).map(|d| u[vs + d] * n[d]).sum()
}

#[inline]
fn wave_speeds_raw(ul: &StateVec, ur: &StateVec, n: [f64; 3], gas: &GasModel) -> WaveSpeeds {
    let (unl, unr) = (normal_velocity(ul, n, gas), normal_velocity(ur, n, gas));
    let (cl, cr) = (sound_speed_unchecked(ul, gas), sound_speed_unchecked(ur, gas));
    let (ut, ct) = averaged_speed(ul, ur, n, gas);
    let s_l = (unl - cl).min(ut - ct);
    let s_r = (unr + cr).max(ut + ct);
    let (rl, rr) = (gas.density(ul), gas.density(ur));
    let (pl, pr) = (ul[4], ur[4]);
    let ml = rl * (s_l - unl);
    let mr = rr * (s_r - unr);
    let s_star = (pr - pl + ml * unl - mr * unr) / (ml - mr);
    WaveSpeeds { s_l, s_r, s_star }
}

fn check(u: &StateVec, gas: &GasModel) -> Result<()> {
    if is_admissible(u, gas) {
        Ok(())
    } else {
        Err(Error::invalid(format!("inadmissible Riemann state {:?}", &u[..gas.nvars()])))
    }
}

pub fn wave_speeds(ul: &Primitive, ur: &Primitive, n: [f64; 3], gas: &GasModel) -> Result<WaveSpeeds> {
    check(&ul.0, gas)?;
    check(&ur.0, gas)?;
    Ok(wave_speeds_raw(&ul.0, &ur.0, n, gas))
}

#[inline]
fn guard(d: f64) -> f64 {
    if d.abs() < DENOM_FLOOR {
        if d < 0.0 {
            -DENOM_FLOOR
        } else {
            DENOM_FLOOR
        }
    } else {
        d
    }
}

#[inline]
fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// HLLC flux through a face with unit normal `n`, together with the
/// HLLC-consistent normal interface velocity.
#[inline]
pub(crate) fn hllc_raw(ul: &StateVec, ur: &StateVec, n: [f64; 3], gas: &GasModel) -> (StateVec, f64) {
    let ws = wave_speeds_raw(ul, ur, n, gas);
    let WaveSpeeds { s_l, s_r, s_star } = ws;
    let ql = prim_to_cons_raw(ul, gas);
    let qr = prim_to_cons_raw(ur, gas);
    let (unl, unr) = (normal_velocity(ul, n, gas), normal_velocity(ur, n, gas));

    let u_face = {
        let a = unl + s_l.min(0.0) * ((s_l - unl) / guard(s_l - s_star) - 1.0);
        let b = unr + s_r.max(0.0) * ((s_r - unr) / guard(s_r - s_star) - 1.0);
        let s = sgn(s_star);
        0.5 * (1.0 + s) * a + 0.5 * (1.0 - s) * b
    };

    if s_l >= 0.0 {
        return (physical_flux_raw(ul, &ql, n, gas), u_face);
    }
    if s_r <= 0.0 {
        return (physical_flux_raw(ur, &qr, n, gas), u_face);
    }
    let (u, q, un, s) = if s_star >= 0.0 {
        (ul, &ql, unl, s_l)
    } else {
        (ur, &qr, unr, s_r)
    };
    let f = physical_flux_raw(u, q, n, gas);
    let rho = gas.density(u);
    let chi = (s - un) / guard(s - s_star);
    let mut qs = [0.0; MAX_VARS];
    let vs = gas.velocity_slot();
    let nc = gas.velocity_components();
    match gas {
        GasModel::Single { .. } => qs[0] = chi * rho,
        GasModel::Multi { .. } => {
            qs[0] = chi * u[0];
            qs[1] = chi * u[1];
            qs[5] = chi * u[5];
        }
    }
    for d in 0..nc {
        qs[vs + d] = chi * rho * (u[vs + d] + (s_star - un) * n[d]);
    }
    qs[4] = chi * (q[4] + (s_star - un) * (rho * s_star + u[4] / (s - un)));
    let mut out = [0.0; MAX_VARS];
    for k in 0..gas.nvars() {
        out[k] = f[k] + s * (qs[k] - q[k]);
    }
    (out, u_face)
}

pub fn hllc_flux_single(ul: &Primitive, ur: &Primitive, n: [f64; 3], gas: &GasModel) -> Result<StateVec> {
    if gas.is_multi() {
        return Err(Error::Config("single-gas HLLC called with a mixture model".into()));
    }
    check(&ul.0, gas)?;
    check(&ur.0, gas)?;
    Ok(hllc_raw(&ul.0, &ur.0, n, gas).0)
}

/// Six-component mixture flux. The volume-fraction row is the HLLC flux of
/// `α₁`, equal to `α₁` times [`interface_velocity`] on the upwind side.
pub fn hllc_flux_multi(ul: &Primitive, ur: &Primitive, n: [f64; 3], gas: &GasModel) -> Result<StateVec> {
    if !gas.is_multi() {
        return Err(Error::Config("mixture HLLC called with a single-gas model".into()));
    }
    check(&ul.0, gas)?;
    check(&ur.0, gas)?;
    Ok(hllc_raw(&ul.0, &ur.0, n, gas).0)
}

/// HLLC-consistent normal velocity at the face, switched on the sign of the
/// contact speed.
pub fn interface_velocity(ul: &Primitive, ur: &Primitive, n: [f64; 3], gas: &GasModel) -> Result<f64> {
    check(&ul.0, gas)?;
    check(&ur.0, gas)?;
    Ok(hllc_raw(&ul.0, &ur.0, n, gas).1)
}
