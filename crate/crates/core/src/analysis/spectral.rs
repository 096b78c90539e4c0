//! Fourier symbols of the linear reconstructions.
//!
//! For `u_t + u_x = 0` with upwind fluxes `f_{j+1/2} = u^L_{j+1/2}` and
//! `u_j = e^{ijθ}`, the left face value is `σ(θ) e^{ijθ}` and the
//! semi-discrete operator becomes `-(z/h) u_j` with `z = σ(1 - e^{-iθ})`.
//! Writing `z = -i K` (up to the sign of the dissipative part) gives the
//! modified wavenumber `K = Im z + i Re z`: the real part is the resolved
//! wavenumber and the positive imaginary part the dissipation. The exact
//! operator has `K = θ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::compact::CompactScheme;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpectralScheme {
    Ig4,
    Ig6,
    MusclK3,
    C5,
    Mp5Linear,
    FirstOrderUpwind,
}

impl SpectralScheme {
    pub const ALL: [SpectralScheme; 6] = [
        SpectralScheme::Ig4,
        SpectralScheme::Ig6,
        SpectralScheme::MusclK3,
        SpectralScheme::C5,
        SpectralScheme::Mp5Linear,
        SpectralScheme::FirstOrderUpwind,
    ];

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "ig4" => SpectralScheme::Ig4,
            "ig6" => SpectralScheme::Ig6,
            "muscl" | "muscl_k3" => SpectralScheme::MusclK3,
            "c5" => SpectralScheme::C5,
            "mp5" | "mp5_linear" => SpectralScheme::Mp5Linear,
            "upwind" | "first_order" => SpectralScheme::FirstOrderUpwind,
            other => return Err(Error::Config(format!("unknown spectral scheme '{other}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            SpectralScheme::Ig4 => "ig4",
            SpectralScheme::Ig6 => "ig6",
            SpectralScheme::MusclK3 => "muscl",
            SpectralScheme::C5 => "c5",
            SpectralScheme::Mp5Linear => "mp5",
            SpectralScheme::FirstOrderUpwind => "upwind",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCurve {
    pub scheme: SpectralScheme,
    pub theta: Vec<f64>,
    #[serde(skip)]
    pub k: Vec<Complex64>,
}

impl SpectralCurve {
    pub fn dispersion(&self) -> Vec<f64> {
        self.k.iter().map(|k| k.re).collect()
    }

    pub fn dissipation(&self) -> Vec<f64> {
        self.k.iter().map(|k| k.im).collect()
    }
}

/// Symbol `ψ(θ)` of a compact first derivative, `h Q' = i ψ Q`.
pub fn compact_symbol(scheme: CompactScheme, theta: f64) -> f64 {
    let (alpha, a, b) = scheme.coefficients();
    (a * theta.sin() + 0.5 * b * (2.0 * theta).sin()) / (1.0 + 2.0 * alpha * theta.cos())
}

/// Left face amplification `σ(θ)` at `j+1/2`.
pub fn face_symbol(scheme: SpectralScheme, theta: f64) -> Complex64 {
    let e = |m: f64| Complex64::from_polar(1.0, m * theta);
    match scheme {
        SpectralScheme::Ig4 | SpectralScheme::Ig6 => {
            let cs = if scheme == SpectralScheme::Ig4 {
                CompactScheme::Cd4
            } else {
                CompactScheme::Cd6
            };
            let psi = compact_symbol(cs, theta);
            Complex64::new(1.0 - psi * psi / 12.0, 0.5 * psi)
        }
        SpectralScheme::MusclK3 => (-e(-1.0) + 5.0 + 2.0 * e(1.0)) / 6.0,
        SpectralScheme::C5 => {
            (e(-1.0) / 18.0 + 19.0 / 18.0 + e(1.0) * (5.0 / 9.0)) / (1.0 + 0.5 * e(-1.0) + e(1.0) / 6.0)
        }
        SpectralScheme::Mp5Linear => {
            (2.0 * e(-2.0) - 13.0 * e(-1.0) + 47.0 + 27.0 * e(1.0) - 3.0 * e(2.0)) / 60.0
        }
        SpectralScheme::FirstOrderUpwind => Complex64::new(1.0, 0.0),
    }
}

/// Modified wavenumber at one `θ`.
pub fn modified_wavenumber_at(scheme: SpectralScheme, theta: f64) -> Complex64 {
    let z = face_symbol(scheme, theta) * (1.0 - Complex64::from_polar(1.0, -theta));
    Complex64::new(z.im, z.re)
}

/// Modified wavenumber over `thetas`, each in `(0, π]`.
pub fn modified_wavenumber(scheme: SpectralScheme, thetas: &[f64]) -> Result<SpectralCurve> {
    if let Some(t) = thetas
        .iter()
        .find(|t| !(**t > 0.0 && **t <= std::f64::consts::PI + 1e-15))
    {
        return Err(Error::Config(format!("wavenumber {t} outside (0, π]")));
    }
    Ok(SpectralCurve {
        scheme,
        theta: thetas.to_vec(),
        k: thetas.iter().map(|&t| modified_wavenumber_at(scheme, t)).collect(),
    })
}

/// `n` equally spaced samples of `(0, π]`.
pub fn theta_samples(n: usize) -> Vec<f64> {
    (1..=n).map(|k| std::f64::consts::PI * k as f64 / n as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upwind_closed_form() {
        for t in theta_samples(50) {
            let k = modified_wavenumber_at(SpectralScheme::FirstOrderUpwind, t);
            assert!((k.re - t.sin()).abs() < 1e-14);
            assert!((k.im - (1.0 - t.cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn consistency_limit() {
        for s in &SpectralScheme::ALL[..5] {
            let k = modified_wavenumber_at(*s, 1e-3);
            assert!((k / 1e-3 - 1.0).norm() < 1e-6, "{s:?}: {k}");
        }
        // The first-order baseline converges only linearly.
        let k = modified_wavenumber_at(SpectralScheme::FirstOrderUpwind, 1e-3) / 1e-3;
        assert!((k - 1.0).norm() < 1e-3);
    }

    #[test]
    fn dissipation_non_negative() {
        for s in SpectralScheme::ALL {
            for t in theta_samples(64) {
                assert!(modified_wavenumber_at(s, t).im >= -1e-14, "{s:?} at {t}");
            }
        }
    }

    #[test]
    fn ig4_order_of_symbol() {
        // Linear IG faces are fourth-order accurate: |K - θ| = O(θ⁵).
        let e = |t: f64| (modified_wavenumber_at(SpectralScheme::Ig4, t) - t).norm();
        let ratio = e(0.02) / e(0.01);
        assert!(ratio > 28.0 && ratio < 36.0, "{ratio}");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(modified_wavenumber(SpectralScheme::C5, &[0.0]).is_err());
        assert!(modified_wavenumber(SpectralScheme::C5, &[4.0]).is_err());
        assert_eq!(modified_wavenumber(SpectralScheme::C5, &[1.0]).unwrap().k.len(), 1);
    }
}
