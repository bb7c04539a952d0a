//! Closed-form retarded Green's functions of the two-resonator waveguide.
//!
//! Integrating out the waveguide leaves each resonator with the self-energy
//! `sigma0 = xi1^2 g0`, where `g0 = 1 / (2 i xi0 sin k)` is the on-site
//! propagator of the infinite chain. With `a = gw1 sigma0`, `b = gw2 sigma0`
//! and `p = exp(2 i k L)`, every quantity shares the denominator
//!
//! ```text
//! D = 1 - a - b + a b (1 - p)
//! ```
//!
//! which gives `t = 1 / D`. The diagonal elements on modes and segment sites
//! used for the local densities of states are derived from the same Dyson
//! resummation. Each one keeps the companion mode of the same resonator, so
//! the results match a direct inversion of the lattice Hamiltonian.

mod grid;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::model::{wavevector, ResonatorMode, SystemParams};

pub use grid::{
    adaptive_grid, heatmap, linspace, spectrum, Heatmap, Refinement, SpectrumGrid, SpectrumRow,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Every per-frequency quantity shared by the closed-form expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterEval {
    pub omega: f64,
    pub k: f64,
    /// Retarded on-site propagator of the bare chain.
    pub g0: Complex64,
    /// Self-energy `xi1^2 g0` picked up by each resonator mode.
    pub sigma0: Complex64,
    /// Summed propagator of the two modes of resonator 1.
    pub gw1: Complex64,
    /// Summed propagator of the two modes of resonator 2.
    pub gw2: Complex64,
    /// `exp(2 i k L)`.
    pub phase_l: Complex64,
    /// Individual mode propagators `1 / (omega - omega_m + i eta)` in slot order.
    pub modes: [Complex64; 4],
    /// Separation `L`, kept to evaluate site-resolved quantities.
    pub separation: usize,
}

/// Evaluates the cached quantities at `omega`.
pub fn eval_point(params: &SystemParams, omega: f64) -> Result<ScatterEval> {
    params.validate()?;
    let k = wavevector(omega, params)?;
    let g0 = 1.0 / (2.0 * I * params.xi0 * k.sin());
    let sigma0 = params.xi1 * params.xi1 * g0;
    let freqs = params.mode_frequencies();
    let modes = freqs.map(|w| 1.0 / Complex64::new(omega - w, params.eta));
    let phase_l = Complex64::from_polar(1.0, 2.0 * k * params.separation as f64);
    Ok(ScatterEval {
        omega,
        k,
        g0,
        sigma0,
        gw1: modes[0] + modes[1],
        gw2: modes[2] + modes[3],
        phase_l,
        modes,
        separation: params.separation,
    })
}

impl ScatterEval {
    fn ab(&self) -> (Complex64, Complex64) {
        (self.gw1 * self.sigma0, self.gw2 * self.sigma0)
    }

    /// Shared denominator `1 - a - b + a b (1 - exp(2ikL))`.
    pub fn denominator(&self) -> Complex64 {
        let (a, b) = self.ab();
        1.0 - a - b + a * b * (1.0 - self.phase_l)
    }

    pub fn transmission_amplitude(&self) -> Complex64 {
        1.0 / self.denominator()
    }

    /// Diagonal Green's function element on one resonator mode.
    pub fn mode_green(&self, mode: ResonatorMode) -> Complex64 {
        let (a, b) = self.ab();
        let g = self.modes[mode.slot()];
        let other = if mode.resonator() == 1 { b } else { a };
        g + g * g * self.sigma0 * (1.0 - other * (1.0 - self.phase_l)) / self.denominator()
    }

    /// Diagonal Green's function element on segment site `j` (`0 <= j <= L`).
    pub fn site_green(&self, j: usize) -> Complex64 {
        assert!(
            j <= self.separation,
            "site {j} outside segment 0..={}",
            self.separation
        );
        let (a, b) = self.ab();
        let left = 1.0 - Complex64::from_polar(1.0, 2.0 * self.k * j as f64);
        let right = 1.0 - Complex64::from_polar(1.0, 2.0 * self.k * (self.separation - j) as f64);
        let f = a * left + b * right - a * b * left * right;
        self.g0 * (1.0 - f) / self.denominator()
    }

    /// Resonator density of states summed over the four modes.
    pub fn resonator_ldos(&self) -> f64 {
        let s: f64 = ResonatorMode::ALL
            .iter()
            .map(|&m| self.mode_green(m).im)
            .sum();
        -s / PI
    }

    /// Waveguide density of states summed over segment sites `0..=L`.
    pub fn between_ldos(&self) -> f64 {
        let s: f64 = (0..=self.separation).map(|j| self.site_green(j).im).sum();
        -s / PI
    }
}

/// Transmission amplitude for a photon incident from the left.
pub fn transmission_amplitude(params: &SystemParams, omega: f64) -> Result<Complex64> {
    Ok(eval_point(params, omega)?.transmission_amplitude())
}

/// Transmission probability `|t|^2`.
pub fn transmission_probability(params: &SystemParams, omega: f64) -> Result<f64> {
    Ok(transmission_amplitude(params, omega)?.norm_sqr())
}

/// Local density of states summed over the four resonator modes.
pub fn resonator_ldos(params: &SystemParams, omega: f64) -> Result<f64> {
    Ok(eval_point(params, omega)?.resonator_ldos())
}

/// Local density of states summed over the waveguide segment between the couplings.
pub fn between_ldos(params: &SystemParams, omega: f64) -> Result<f64> {
    Ok(eval_point(params, omega)?.between_ldos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn eval_examples() {
        let p = SystemParams::degenerate(0.01, 0.1, 2).with_eta(1e-12);
        let e = eval_point(&p, 0.0).unwrap();
        assert!(close(e.gw1, Complex64::new(-200.0, 0.0), 1e-9));
        assert!(close(e.sigma0, Complex64::new(0.0, -0.005), 1e-14));
        assert!(e.g0.im < 0.0);
        assert!((e.phase_l.norm() - 1.0).abs() < 1e-14);
        assert_eq!(e.sigma0, p.xi1 * p.xi1 * e.g0);

        let p = SystemParams::degenerate(0.01, 0.1, 2).with_eta(1e-6);
        let e = eval_point(&p, 0.01).unwrap();
        assert!(close(e.gw1, Complex64::new(0.0, -2e6), 1e-12));
    }

    #[test]
    fn decoupled_limits() {
        let p = SystemParams::antisymmetric(0.3, 0.0, 5).with_eta(1e-3);
        for &w in &[-1.7, -0.2, 0.0, 0.3, 1.2] {
            let e = eval_point(&p, w).unwrap();
            assert_eq!(e.transmission_amplitude(), Complex64::new(1.0, 0.0));
            let bare = 1.0 / (2.0 * PI * e.k.sin());
            assert!((e.between_ldos() - 6.0 * bare).abs() < 1e-12 * bare);
            let lorentz: f64 = p
                .mode_frequencies()
                .iter()
                .map(|m| p.eta / PI / ((w - m).powi(2) + p.eta * p.eta))
                .sum();
            assert!((e.resonator_ldos() - lorentz).abs() < 1e-12 * lorentz.max(1.0));
        }
    }

    #[test]
    fn odd_separation_antiresonance() {
        for l in [1, 3, 5] {
            let p = SystemParams::degenerate(0.01, 0.1, l);
            for w in [0.01 - 1e-9, 0.01 + 1e-9] {
                assert!(transmission_amplitude(&p, w).unwrap().norm() < 1e-6);
            }
        }
    }

    #[test]
    fn band_edge_propagates() {
        let p = SystemParams::degenerate(0.01, 0.1, 2);
        assert!(transmission_amplitude(&p, 2.0).is_err());
        assert!(resonator_ldos(&p, -3.0).is_err());
        assert!(between_ldos(&p, 2.0 - 1e-12).is_err());
    }

    #[test]
    fn single_site_segment() {
        let p = SystemParams::degenerate(0.2, 0.3, 0).with_eta(1e-4);
        let e = eval_point(&p, 0.1).unwrap();
        let want = e.g0 / (1.0 - e.sigma0 * (e.gw1 + e.gw2));
        assert!(close(e.site_green(0), want, 1e-13));
    }
}
