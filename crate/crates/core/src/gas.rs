//! Equation of state, mixture rules and conversions between primitive and
//! conserved variables.
//!
//! States are stored in fixed six-slot vectors. The slot layout depends on the
//! gas model:
//!
//! | model  | primitive                           | conserved                  |
//! |--------|-------------------------------------|----------------------------|
//! | single | `ρ, u, v, w, p, -`                  | `ρ, ρu, ρv, ρw, E, -`      |
//! | multi  | `α₁ρ₁, α₂ρ₂, u, v, p, α₁`           | `α₁ρ₁, α₂ρ₂, ρu, ρv, E, α₁` |
//!
//! Pressure and total energy both sit in slot 4 for either model.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest number of variables carried per cell.
pub const MAX_VARS: usize = 6;

/// Slot of the pressure (primitive) or total energy (conserved).
pub const PRESSURE: usize = 4;
/// Slot of the total energy in a conserved vector.
pub const ENERGY: usize = 4;

pub type StateVec = [f64; MAX_VARS];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum GasModel {
    /// Calorically perfect single-species gas.
    Single { gamma: f64, mu: f64, pr: f64 },
    /// Two-fluid mixture closed by the isobaric harmonic rule for γ.
    Multi { gamma1: f64, gamma2: f64, mu: f64 },
}

impl GasModel {
    /// Inviscid single-species gas with the default Prandtl number.
    pub fn single(gamma: f64) -> Self {
        GasModel::Single {
            gamma,
            mu: 0.0,
            pr: 0.73,
        }
    }

    pub fn multi(gamma1: f64, gamma2: f64) -> Self {
        GasModel::Multi {
            gamma1,
            gamma2,
            mu: 0.0,
        }
    }

    pub fn with_viscosity(self, mu_new: f64) -> Self {
        match self {
            GasModel::Single { gamma, pr, .. } => GasModel::Single { gamma, mu: mu_new, pr },
            GasModel::Multi { gamma1, gamma2, .. } => GasModel::Multi {
                gamma1,
                gamma2,
                mu: mu_new,
            },
        }
    }

    pub fn with_prandtl(self, pr_new: f64) -> Self {
        match self {
            GasModel::Single { gamma, mu, .. } => GasModel::Single { gamma, mu, pr: pr_new },
            multi => multi,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            GasModel::Single { gamma, mu, pr } => gamma > 1.0 && mu >= 0.0 && pr > 0.0,
            GasModel::Multi { gamma1, gamma2, mu } => gamma1 > 1.0 && gamma2 > 1.0 && mu >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid gas model {self:?}")))
        }
    }

    pub fn is_multi(&self) -> bool {
        matches!(self, GasModel::Multi { .. })
    }

    /// Number of variables per cell.
    pub fn nvars(&self) -> usize {
        match self {
            GasModel::Single { .. } => 5,
            GasModel::Multi { .. } => 6,
        }
    }

    /// Slot of the first velocity component (primitive) / momentum (conserved).
    pub fn velocity_slot(&self) -> usize {
        match self {
            GasModel::Single { .. } => 1,
            GasModel::Multi { .. } => 2,
        }
    }

    /// Number of velocity components carried by the state.
    pub fn velocity_components(&self) -> usize {
        match self {
            GasModel::Single { .. } => 3,
            GasModel::Multi { .. } => 2,
        }
    }

    pub fn mu(&self) -> f64 {
        match *self {
            GasModel::Single { mu, .. } | GasModel::Multi { mu, .. } => mu,
        }
    }

    /// Mixture density of a primitive vector.
    #[inline]
    pub fn density(&self, u: &StateVec) -> f64 {
        match self {
            GasModel::Single { .. } => u[0],
            GasModel::Multi { .. } => u[0] + u[1],
        }
    }

    /// Velocity of a primitive vector, zero-padded to three components.
    #[inline]
    pub fn velocity(&self, u: &StateVec) -> [f64; 3] {
        match self {
            GasModel::Single { .. } => [u[1], u[2], u[3]],
            GasModel::Multi { .. } => [u[2], u[3], 0.0],
        }
    }

    /// Effective ratio of specific heats of a primitive vector.
    #[inline]
    pub fn gamma_of(&self, u: &StateVec) -> f64 {
        match *self {
            GasModel::Single { gamma, .. } => gamma,
            GasModel::Multi { .. } => mixture_gamma(u[5], self),
        }
    }
}

/// Primitive state vector; see the module docs for the slot layout.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Primitive(pub StateVec);

/// Conserved state vector; see the module docs for the slot layout.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize)]
pub struct Conserved(pub StateVec);

impl Primitive {
    pub fn single(rho: f64, u: f64, v: f64, w: f64, p: f64) -> Self {
        Primitive([rho, u, v, w, p, 0.0])
    }

    pub fn multi(a1r1: f64, a2r2: f64, u: f64, v: f64, p: f64, alpha1: f64) -> Self {
        Primitive([a1r1, a2r2, u, v, p, alpha1])
    }

    pub fn pressure(&self) -> f64 {
        self.0[PRESSURE]
    }
}

/// Mixture ratio of specific heats from
/// `1/(γ-1) = α₁/(γ₁-1) + (1-α₁)/(γ₂-1)`. Single-species models return γ.
#[inline]
pub fn mixture_gamma(alpha1: f64, gas: &GasModel) -> f64 {
    match *gas {
        GasModel::Single { gamma, .. } => gamma,
        GasModel::Multi { gamma1, gamma2, .. } => {
            let inv = alpha1 / (gamma1 - 1.0) + (1.0 - alpha1) / (gamma2 - 1.0);
            1.0 + 1.0 / inv
        }
    }
}

/// `1/(γ-1)` of a primitive state; linear in α₁ for mixtures.
#[inline]
pub(crate) fn inv_gamma_minus_one(u: &StateVec, gas: &GasModel) -> f64 {
    match *gas {
        GasModel::Single { gamma, .. } => 1.0 / (gamma - 1.0),
        GasModel::Multi { gamma1, gamma2, .. } => {
            u[5] / (gamma1 - 1.0) + (1.0 - u[5]) / (gamma2 - 1.0)
        }
    }
}

/// Admissibility of a primitive state: positive density and pressure for a
/// single gas; non-negative partial densities, positive mixture density,
/// bounded volume fraction and positive pressure for a mixture.
#[inline]
pub fn is_admissible(u: &StateVec, gas: &GasModel) -> bool {
    let p = u[PRESSURE];
    match gas {
        GasModel::Single { .. } => u[0] > 0.0 && p > 0.0 && u[..5].iter().all(|x| x.is_finite()),
        GasModel::Multi { .. } => {
            u[0] >= 0.0
                && u[1] >= 0.0
                && u[0] + u[1] > 0.0
                && (0.0..=1.0).contains(&u[5])
                && p > 0.0
                && u.iter().all(|x| x.is_finite())
        }
    }
}

pub fn cons_to_prim(q: &Conserved, gas: &GasModel) -> Result<Primitive> {
    let q = &q.0;
    let rho = match gas {
        GasModel::Single { .. } => q[0],
        GasModel::Multi { .. } => q[0] + q[1],
    };
    if !(rho > 0.0) {
        return Err(Error::invalid(format!("non-positive density {rho}")));
    }
    let u = cons_to_prim_unchecked(q, gas);
    if !(u[PRESSURE] > 0.0) {
        return Err(Error::invalid(format!("non-positive pressure {}", u[PRESSURE])));
    }
    Ok(Primitive(u))
}

#[inline]
pub(crate) fn cons_to_prim_unchecked(q: &StateVec, gas: &GasModel) -> StateVec {
    match *gas {
        GasModel::Single { gamma, .. } => {
            let rho = q[0];
            let inv = 1.0 / rho;
            let (u, v, w) = (q[1] * inv, q[2] * inv, q[3] * inv);
            let ke = 0.5 * (q[1] * u + q[2] * v + q[3] * w);
            [rho, u, v, w, (gamma - 1.0) * (q[4] - ke), 0.0]
        }
        GasModel::Multi { .. } => {
            let rho = q[0] + q[1];
            let inv = 1.0 / rho;
            let (u, v) = (q[2] * inv, q[3] * inv);
            let ke = 0.5 * (q[2] * u + q[3] * v);
            let g = inv_gamma_minus_one(q, gas);
            [q[0], q[1], u, v, (q[4] - ke) / g, q[5]]
        }
    }
}

pub fn prim_to_cons(u: &Primitive, gas: &GasModel) -> Conserved {
    Conserved(prim_to_cons_raw(&u.0, gas))
}

#[inline]
pub(crate) fn prim_to_cons_raw(u: &StateVec, gas: &GasModel) -> StateVec {
    match *gas {
        GasModel::Single { gamma, .. } => {
            let rho = u[0];
            let ke = 0.5 * rho * (u[1] * u[1] + u[2] * u[2] + u[3] * u[3]);
            [
                rho,
                rho * u[1],
                rho * u[2],
                rho * u[3],
                u[4] / (gamma - 1.0) + ke,
                0.0,
            ]
        }
        GasModel::Multi { .. } => {
            let rho = u[0] + u[1];
            let ke = 0.5 * rho * (u[2] * u[2] + u[3] * u[3]);
            [
                u[0],
                u[1],
                rho * u[2],
                rho * u[3],
                u[4] * inv_gamma_minus_one(u, gas) + ke,
                u[5],
            ]
        }
    }
}

pub fn sound_speed(u: &Primitive, gas: &GasModel) -> Result<f64> {
    let rho = gas.density(&u.0);
    let p = u.0[PRESSURE];
    if !(rho > 0.0 && p > 0.0) {
        return Err(Error::invalid(format!(
            "sound speed undefined for rho={rho}, p={p}"
        )));
    }
    Ok(sound_speed_unchecked(&u.0, gas))
}

#[inline]
pub(crate) fn sound_speed_unchecked(u: &StateVec, gas: &GasModel) -> f64 {
    (gas.gamma_of(u) * u[PRESSURE] / gas.density(u)).sqrt()
}

/// Physical convective flux through a face with unit normal `n`.
pub fn physical_flux(u: &Primitive, n: [f64; 3], gas: &GasModel) -> StateVec {
    let q = prim_to_cons_raw(&u.0, gas);
    physical_flux_raw(&u.0, &q, n, gas)
}

#[inline]
pub(crate) fn physical_flux_raw(u: &StateVec, q: &StateVec, n: [f64; 3], gas: &GasModel) -> StateVec {
    let p = u[PRESSURE];
    match gas {
        GasModel::Single { .. } => {
            let un = u[1] * n[0] + u[2] * n[1] + u[3] * n[2];
            [
                q[0] * un,
                q[1] * un + p * n[0],
                q[2] * un + p * n[1],
                q[3] * un + p * n[2],
                (q[4] + p) * un,
                0.0,
            ]
        }
        GasModel::Multi { .. } => {
            let un = u[2] * n[0] + u[3] * n[1];
            [
                q[0] * un,
                q[1] * un,
                q[2] * un + p * n[0],
                q[3] * un + p * n[1],
                (q[4] + p) * un,
                q[5] * un,
            ]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const G: f64 = 1.4;

    #[test]
    fn pressure_from_resting_gas() {
        let gas = GasModel::single(G);
        let p = cons_to_prim(&Conserved([1.0, 0.0, 0.0, 0.0, 2.5, 0.0]), &gas).unwrap();
        assert!((p.pressure() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pressure_with_kinetic_energy() {
        let gas = GasModel::single(G);
        let p = cons_to_prim(&Conserved([1.0, 1.0, 0.0, 0.0, 3.0, 0.0]), &gas).unwrap();
        assert!((p.pressure() - 0.4 * 2.5).abs() < 1e-14);
    }

    #[test]
    fn mixture_pressure() {
        let gas = GasModel::multi(1.4, 1.6);
        // E = p / (γ-1) with 1/(γ-1) = 0.5/0.4 + 0.5/0.6
        let e = 0.5 / 0.4 + 0.5 / 0.6;
        let p = cons_to_prim(&Conserved([0.5, 0.5, 0.0, 0.0, e, 0.5]), &gas).unwrap();
        assert!((p.pressure() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nonpositive_density_is_rejected() {
        let gas = GasModel::single(G);
        let err = cons_to_prim(&Conserved([0.0, 0.0, 0.0, 0.0, 1.0, 0.0]), &gas).unwrap_err();
        assert!(matches!(err, Error::InvalidState { .. }));
    }

    #[test]
    fn energy_of_resting_gas() {
        let gas = GasModel::single(G);
        let q = prim_to_cons(&Primitive::single(1.0, 0.0, 0.0, 0.0, 1.0), &gas);
        assert!((q.0[ENERGY] - 2.5).abs() < 1e-14);
        let gas = GasModel::multi(1.4, 1.6);
        let q = prim_to_cons(&Primitive::multi(1.0, 0.0, 0.0, 0.0, 1.0, 1.0), &gas);
        assert!((q.0[ENERGY] - 2.5).abs() < 1e-14);
    }

    #[test]
    fn mixture_gamma_limits() {
        let gas = GasModel::multi(1.4, 1.6);
        assert_eq!(mixture_gamma(1.0, &gas), 1.4);
        assert_eq!(mixture_gamma(0.0, &gas), 1.6);
        let g = mixture_gamma(0.5, &gas);
        assert!((g - (1.0 + 1.0 / (1.25 + 0.5 / 0.6))).abs() < 1e-14);
        assert!((g - 1.48).abs() < 1e-12);
    }

    #[test]
    fn sound_speeds() {
        let gas = GasModel::single(G);
        let c = sound_speed(&Primitive::single(1.0, 0.0, 0.0, 0.0, 1.0), &gas).unwrap();
        assert!((c - 1.4f64.sqrt()).abs() < 1e-14);
        let c = sound_speed(&Primitive::single(G, 0.0, 0.0, 0.0, 1.0), &gas).unwrap();
        assert!((c - 1.0).abs() < 1e-14);
        assert!(sound_speed(&Primitive::single(1.0, 0.0, 0.0, 0.0, -1.0), &gas).is_err());
    }

    #[test]
    fn admissibility_allows_pure_fluids() {
        let gas = GasModel::multi(1.4, 1.6);
        assert!(is_admissible(&[1.0, 0.0, 0.0, 0.0, 1.0, 1.0], &gas));
        assert!(!is_admissible(&[1.0, -1e-3, 0.0, 0.0, 1.0, 1.0], &gas));
        assert!(!is_admissible(&[1.0, 0.0, 0.0, 0.0, 1.0, 1.05], &gas));
        assert!(!is_admissible(&[0.0, 0.0, 0.0, 0.0, 1.0, 0.5], &gas));
    }
}
