//! Exact solution of the one-dimensional Riemann problem for a perfect gas.

use serde::Serialize;

use crate::error::{Error, Result};

const TOL: f64 = 1e-12;
const MAX_ITER: usize = 100;

/// `(ρ, u, p)` on one side of the initial discontinuity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RiemannState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl RiemannState {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        RiemannState { rho, u, p }
    }

    fn sound_speed(&self, gamma: f64) -> f64 {
        (gamma * self.p / self.rho).sqrt()
    }
}

/// Star-region solution with enough data to sample the wave fan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExactRiemann {
    pub left: RiemannState,
    pub right: RiemannState,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
    pub iterations: usize,
}

/// Pressure function of one side and its derivative.
fn pressure_fn(p: f64, s: &RiemannState, gamma: f64) -> (f64, f64) {
    let c = s.sound_speed(gamma);
    if p > s.p {
        let a = 2.0 / ((gamma + 1.0) * s.rho);
        let b = (gamma - 1.0) / (gamma + 1.0) * s.p;
        let q = (a / (p + b)).sqrt();
        ((p - s.p) * q, q * (1.0 - 0.5 * (p - s.p) / (p + b)))
    } else {
        let e = (gamma - 1.0) / (2.0 * gamma);
        let r = p / s.p;
        (2.0 * c / (gamma - 1.0) * (r.powf(e) - 1.0), r.powf(-(gamma + 1.0) / (2.0 * gamma)) / (s.rho * c))
    }
}

impl ExactRiemann {
    /// Solves for the star pressure by Newton iteration from the
    /// primitive-variable guess.
    pub fn solve(left: RiemannState, right: RiemannState, gamma: f64) -> Result<Self> {
        for s in [&left, &right] {
            if !(s.rho > 0.0 && s.p > 0.0 && s.u.is_finite()) {
                return Err(Error::invalid(format!("Riemann data must have positive density and pressure: {s:?}")));
            }
        }
        if !(gamma > 1.0) {
            return Err(Error::Config(format!("gamma must exceed 1, got {gamma}")));
        }
        let (cl, cr) = (left.sound_speed(gamma), right.sound_speed(gamma));
        let du = right.u - left.u;
        if 2.0 / (gamma - 1.0) * (cl + cr) <= du {
            return Err(Error::invalid("Riemann data generate vacuum".to_string()));
        }
        let guess = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (cl + cr);
        let mut p = guess.max(TOL);
        let mut iterations = 0;
        loop {
            iterations += 1;
            let (fl, dl) = pressure_fn(p, &left, gamma);
            let (fr, dr) = pressure_fn(p, &right, gamma);
            let mut next = p - (fl + fr + du) / (dl + dr);
            if next <= 0.0 {
                next = 0.5 * p;
            }
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < TOL {
                break;
            }
            if iterations >= MAX_ITER {
                return Err(Error::invalid(format!("star pressure did not converge (last change {change:e})")));
            }
        }
        let (fl, _) = pressure_fn(p, &left, gamma);
        let (fr, _) = pressure_fn(p, &right, gamma);
        let u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
        Ok(ExactRiemann {
            left,
            right,
            gamma,
            p_star: p,
            u_star,
            iterations,
        })
    }

    /// State on the ray `x/t = xi`.
    pub fn sample(&self, xi: f64) -> RiemannState {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        let gm = (g - 1.0) / (g + 1.0);
        // Mirror right-side waves onto the left-side formulas.
        let (s, sign, x) = if xi <= us {
            (self.left, 1.0, xi)
        } else {
            (self.right, -1.0, -xi)
        };
        let u = sign * s.u;
        let ust = sign * us;
        let c = s.sound_speed(g);
        let state = |rho: f64, vel: f64, p: f64| RiemannState::new(rho, sign * vel, p);
        if ps > s.p {
            let r = ps / s.p;
            let speed = u - c * ((g + 1.0) / (2.0 * g) * r + (g - 1.0) / (2.0 * g)).sqrt();
            if x <= speed {
                state(s.rho, u, s.p)
            } else {
                state(s.rho * (r + gm) / (gm * r + 1.0), ust, ps)
            }
        } else {
            let head = u - c;
            let cs = c * (ps / s.p).powf((g - 1.0) / (2.0 * g));
            let tail = ust - cs;
            if x <= head {
                state(s.rho, u, s.p)
            } else if x >= tail {
                state(s.rho * (ps / s.p).powf(1.0 / g), ust, ps)
            } else {
                let k = 2.0 / (g + 1.0) + gm / c * (u - x);
                state(
                    s.rho * k.powf(2.0 / (g - 1.0)),
                    2.0 / (g + 1.0) * (c + (g - 1.0) / 2.0 * u + x),
                    s.p * k.powf(2.0 * g / (g - 1.0)),
                )
            }
        }
    }
}

/// Exact solution at time `t` sampled at `xs`, with the initial jump at `x0`.
pub fn exact_riemann_reference(
    left: RiemannState,
    right: RiemannState,
    gamma: f64,
    x0: f64,
    t: f64,
    xs: &[f64],
) -> Result<Vec<RiemannState>> {
    let sol = ExactRiemann::solve(left, right, gamma)?;
    Ok(xs
        .iter()
        .map(|&x| {
            if t > 0.0 {
                sol.sample((x - x0) / t)
            } else if x < x0 {
                left
            } else {
                right
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sod_star_state() {
        let s = ExactRiemann::solve(RiemannState::new(1.0, 0.0, 1.0), RiemannState::new(0.125, 0.0, 0.1), 1.4).unwrap();
        assert!((s.p_star - 0.30313).abs() < 1e-5);
        assert!((s.u_star - 0.92745).abs() < 1e-5);
    }

    #[test]
    fn uniform_data_is_preserved() {
        let u = RiemannState::new(0.7, 0.3, 2.0);
        let out = exact_riemann_reference(u, u, 1.4, 0.0, 1.0, &[-2.0, -0.1, 0.0, 0.5, 3.0]).unwrap();
        for s in out {
            assert!((s.rho - 0.7).abs() < 1e-12 && (s.u - 0.3).abs() < 1e-12 && (s.p - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_expansion() {
        let s = ExactRiemann::solve(RiemannState::new(1.0, -1.0, 1.0), RiemannState::new(1.0, 1.0, 1.0), 1.4).unwrap();
        assert!(s.p_star < 1.0);
        assert!(s.u_star.abs() < 1e-12);
    }

    #[test]
    fn mirrored_sod_is_mirrored() {
        let a = ExactRiemann::solve(RiemannState::new(1.0, 0.0, 1.0), RiemannState::new(0.125, 0.0, 0.1), 1.4).unwrap();
        let b = ExactRiemann::solve(RiemannState::new(0.125, 0.0, 0.1), RiemannState::new(1.0, 0.0, 1.0), 1.4).unwrap();
        assert!((a.p_star - b.p_star).abs() < 1e-12 && (a.u_star + b.u_star).abs() < 1e-12);
        for xi in [-1.5, -0.9, -0.3, 0.2, 0.95, 1.6] {
            let (sa, sb) = (a.sample(xi), b.sample(-xi));
            assert!((sa.rho - sb.rho).abs() < 1e-12 && (sa.u + sb.u).abs() < 1e-12 && (sa.p - sb.p).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_rejected() {
        let r = ExactRiemann::solve(RiemannState::new(1.0, -20.0, 1.0), RiemannState::new(1.0, 20.0, 1.0), 1.4);
        assert!(r.is_err());
    }
}
