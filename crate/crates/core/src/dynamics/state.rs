//! Lattice states and the initial states used in the dynamics studies.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{LatticeLayout, ResonatorMode};

/// Amplitudes over the waveguide sites followed by the slots `a1, b1, a2, b2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    pub amplitudes: Vec<Complex64>,
    pub layout: LatticeLayout,
    pub time: f64,
}

impl LatticeState {
    /// Wraps amplitudes without normalising them.
    pub fn from_amplitudes(layout: LatticeLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.dim() {
            return Err(Error::Layout(format!(
                "state has {} amplitudes, layout needs {}",
                amplitudes.len(),
                layout.dim()
            )));
        }
        Ok(Self {
            amplitudes,
            layout,
            time: 0.0,
        })
    }

    /// Sum of squared moduli.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn mode_amplitudes(&self) -> [Complex64; 4] {
        ResonatorMode::ALL.map(|m| self.amplitudes[self.layout.slot(m)])
    }

    /// `|u_a1|^2, |u_b1|^2, |u_a2|^2, |u_b2|^2`.
    pub fn mode_occupations(&self) -> [f64; 4] {
        self.mode_amplitudes().map(|a| a.norm_sqr())
    }

    /// Probabilities on the left lead, the segment `0..=L`, and the right lead.
    pub fn regional_probabilities(&self) -> [f64; 3] {
        self.layout
            .regions()
            .map(|r| self.amplitudes[r].iter().map(|a| a.norm_sqr()).sum())
    }
}

fn slot_state(layout: &LatticeLayout, entries: [(ResonatorMode, f64); 2]) -> LatticeState {
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for (mode, value) in entries {
        amplitudes[layout.slot(mode)] = Complex64::new(value, 0.0);
    }
    LatticeState {
        amplitudes,
        layout: *layout,
        time: 0.0,
    }
}

/// `(|a1> - |b1>) / sqrt 2`: both modes of resonator 1 with opposite phase.
pub fn antisym_w1(layout: &LatticeLayout) -> LatticeState {
    slot_state(
        layout,
        [
            (ResonatorMode::A1, FRAC_1_SQRT_2),
            (ResonatorMode::B1, -FRAC_1_SQRT_2),
        ],
    )
}

/// `(|a1> - |b2>) / sqrt 2`: one mode in each resonator with opposite phase.
pub fn antisym_w1w2(layout: &LatticeLayout) -> LatticeState {
    slot_state(
        layout,
        [
            (ResonatorMode::A1, FRAC_1_SQRT_2),
            (ResonatorMode::B2, -FRAC_1_SQRT_2),
        ],
    )
}

/// Gaussian wave packet `exp(-(x-x0)^2 / (2 sigma^2) + i k0 x)` on the waveguide.
///
/// `x` is the waveguide array index. The packet is normalised explicitly and
/// its `+-5 sigma` support must lie inside the chain.
pub fn gaussian_packet(
    layout: &LatticeLayout,
    sigma: f64,
    x0: f64,
    k0: f64,
) -> Result<LatticeState> {
    let sites = layout.total_sites();
    if !(sigma > 1.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sigma must exceed 1, got {sigma}"
        )));
    }
    if !(k0 > 0.0 && k0 < PI) {
        return Err(Error::InvalidParameter(format!(
            "k0 must lie in (0, pi), got {k0}"
        )));
    }
    if !(x0 > 0.0 && x0 < sites as f64) {
        return Err(Error::InvalidParameter(format!(
            "x0 = {x0} outside the chain of {sites} sites"
        )));
    }
    if x0 - 5.0 * sigma < 0.0 || x0 + 5.0 * sigma > (sites - 1) as f64 {
        return Err(Error::Geometry(format!(
            "packet support [{}, {}] leaves the chain [0, {}]",
            x0 - 5.0 * sigma,
            x0 + 5.0 * sigma,
            sites - 1
        )));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
    for (x, a) in amplitudes.iter_mut().take(sites).enumerate() {
        let dx = x as f64 - x0;
        *a = Complex64::from_polar((-dx * dx / (2.0 * sigma * sigma)).exp(), k0 * x as f64);
    }
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amplitudes {
        *a /= norm;
    }
    Ok(LatticeState {
        amplitudes,
        layout: *layout,
        time: 0.0,
    })
}
