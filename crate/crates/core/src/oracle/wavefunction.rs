//! Plane-wave matching across the two coupling sites.
//!
//! Eliminating the resonator amplitudes leaves the waveguide equation
//! `(omega_c - omega - V(j)) u_j = xi0 (u_{j+1} + u_{j-1})` with a real
//! potential on sites 0 and `L`. The scattering ansatz
//!
//! ```text
//! u_j = e^{ikj} + r e^{-ikj}      j <= 0
//! u_j = A e^{ikj} + B e^{-ikj}    0 <= j <= L
//! u_j = t e^{ikj}                 j >= L
//! ```
//!
//! turns continuity at both sites and the two site equations into a 4x4
//! linear system in `(r, A, B, t)`.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{wavevector, SystemParams};

/// Distance from a resonator frequency inside which the potential is treated as divergent.
pub const POLE_TOLERANCE: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Amplitudes of a scattering state with unit incident wave from the left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterSolution {
    pub t: Complex64,
    pub r: Complex64,
    /// Coefficient of `e^{ikj}` between the couplings (zero when `L = 0`).
    pub forward: Complex64,
    /// Coefficient of `e^{-ikj}` between the couplings (zero when `L = 0`).
    pub backward: Complex64,
}

impl ScatterSolution {
    /// `|t|^2 + |r|^2`, equal to one for a flux-conserving solution.
    pub fn flux(&self) -> f64 {
        self.t.norm_sqr() + self.r.norm_sqr()
    }
}

fn resonator_potential(params: &SystemParams, omega: f64, modes: [f64; 2]) -> Result<f64> {
    let mut v = 0.0;
    for mode in modes {
        let gap = mode - omega;
        if gap.abs() < POLE_TOLERANCE {
            return Err(Error::Pole { omega, mode });
        }
        v += 1.0 / gap;
    }
    Ok(params.xi1 * params.xi1 * v)
}

/// Effective potential left on waveguide site `site` once the resonators are eliminated.
///
/// Nonzero only on the coupling sites. When `L = 0` both resonators act on site 0.
pub fn effective_potential(params: &SystemParams, omega: f64, site: i64) -> Result<f64> {
    let [a1, b1, a2, b2] = params.mode_frequencies();
    let l = params.separation as i64;
    let mut v = 0.0;
    if site == 0 {
        v += resonator_potential(params, omega, [a1, b1])?;
    }
    if site == l {
        v += resonator_potential(params, omega, [a2, b2])?;
    }
    Ok(v)
}

fn potentials(params: &SystemParams, omega: f64) -> Result<(f64, f64)> {
    let [a1, b1, a2, b2] = params.mode_frequencies();
    Ok((
        resonator_potential(params, omega, [a1, b1])?,
        resonator_potential(params, omega, [a2, b2])?,
    ))
}

/// Solves the matching conditions for `(r, A, B, t)`.
pub fn transfer_transmission(params: &SystemParams, omega: f64) -> Result<ScatterSolution> {
    params.validate()?;
    let k = wavevector(omega, params)?;
    let (v0, vl) = potentials(params, omega)?;
    let xi0 = params.xi0;
    let diag = 2.0 * xi0 * k.cos();
    let e = |n: f64| Complex64::from_polar(1.0, n * k);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let l = params.separation;

    if l == 0 {
        // Single site carrying both potentials: u_0 = 1 + r = t.
        let c = Complex64::from(diag - v0 - vl);
        let m = Matrix2::new(one, -one, c - xi0 * e(1.0), -xi0 * e(1.0));
        let rhs = Vector2::new(-one, xi0 * e(-1.0) - c);
        let x = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::Singular(format!("matching system at omega = {omega}")))?;
        return Ok(ScatterSolution {
            r: x[0],
            t: x[1],
            forward: zero,
            backward: zero,
        });
    }

    let lf = l as f64;
    let c0 = Complex64::from(diag - v0);
    let cl = Complex64::from(diag - vl);
    // Rows: continuity at 0 and L, then the site equations at 0 and L.
    // Site 0: c0 (1 + r) = xi0 (A e^{ik} + B e^{-ik} + e^{-ik} + r e^{ik}).
    #[rustfmt::skip]
    let m = Matrix4::new(
        one,               -one,                -one,                  zero,
        zero,              e(lf),               e(-lf),                -e(lf),
        c0 - xi0 * e(1.0), -xi0 * e(1.0),       -xi0 * e(-1.0),        zero,
        zero,              -xi0 * e(lf - 1.0),  -xi0 * e(-(lf - 1.0)), cl * e(lf) - xi0 * e(lf + 1.0),
    );
    let rhs = Vector4::new(-one, zero, xi0 * e(-1.0) - c0, zero);
    let x = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular(format!("matching system at omega = {omega}")))?;
    Ok(ScatterSolution {
        r: x[0],
        forward: x[1],
        backward: x[2],
        t: x[3],
    })
}

/// Closed-form transmission amplitude built from the two coupling-site potentials.
pub fn closed_form_amplitude(params: &SystemParams, omega: f64) -> Result<Complex64> {
    params.validate()?;
    let k = wavevector(omega, params)?;
    let (v0, vl) = potentials(params, omega)?;
    let d = 2.0 * I * params.xi0 * k.sin();
    let phase = Complex64::from_polar(1.0, 2.0 * k * params.separation as f64);
    Ok(d * d / ((d + v0) * (d + vl) - phase * v0 * vl))
}

/// Closed-form transmission probability written with real trigonometric terms only.
pub fn closed_form_probability(params: &SystemParams, omega: f64) -> Result<f64> {
    params.validate()?;
    let k = wavevector(omega, params)?;
    let (v0, vl) = potentials(params, omega)?;
    let xi0 = params.xi0;
    let (s, kl) = (k.sin(), k * params.separation as f64);
    let t1 = v0 * vl * kl.sin().powi(2) - 2.0 * xi0 * xi0 * s * s;
    let t2 = xi0 * (v0 + vl) * s - v0 * vl * kl.sin() * kl.cos();
    Ok(4.0 * xi0.powi(4) * s.powi(4) / (t1 * t1 + t2 * t2))
}
