//! Physical parameters, the waveguide dispersion and the lattice Hamiltonian.
//!
//! Energies are measured in units of the waveguide hopping `xi0` and times in
//! `hbar / xi0` with `hbar = 1`.

mod hamiltonian;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use hamiltonian::{build_hamiltonian, Hamiltonian};

/// Distance from the band edge (in units of `xi0`) inside which stationary
/// quantities are not evaluated, since `sin k -> 0` there.
pub const BAND_EDGE_MARGIN: f64 = 1e-9;

/// Default broadening of the retarded Green's functions.
pub const DEFAULT_ETA: f64 = 1e-6;

/// Detuning scheme applied to the four resonator frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Breaking {
    #[default]
    None,
    /// Splits `a` and `b` inside each resonator: `(+d, -d, +d, -d)`.
    Intra,
    /// Splits resonator 1 from resonator 2: `(+d, +d, -d, -d)`.
    Inter,
}

impl Breaking {
    /// Signs applied to `delta` for the slots `(a1, b1, a2, b2)`.
    pub fn signs(self) -> [f64; 4] {
        match self {
            Breaking::None => [0.0; 4],
            Breaking::Intra => [1.0, -1.0, 1.0, -1.0],
            Breaking::Inter => [1.0, 1.0, -1.0, -1.0],
        }
    }
}

impl fmt::Display for Breaking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Breaking::None => "none",
            Breaking::Intra => "intra",
            Breaking::Inter => "inter",
        })
    }
}

impl FromStr for Breaking {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Breaking::None),
            "intra" => Ok(Breaking::Intra),
            "inter" => Ok(Breaking::Inter),
            other => Err(Error::InvalidParameter(format!(
                "unknown breaking `{other}` (expected none, intra or inter)"
            ))),
        }
    }
}

/// The four resonator modes, in slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonatorMode {
    A1,
    B1,
    A2,
    B2,
}

impl ResonatorMode {
    pub const ALL: [ResonatorMode; 4] = [Self::A1, Self::B1, Self::A2, Self::B2];

    /// Position of the mode within the four resonator slots.
    pub fn slot(self) -> usize {
        self as usize
    }

    /// 1 for modes of the first resonator, 2 for the second.
    pub fn resonator(self) -> usize {
        match self {
            Self::A1 | Self::B1 => 1,
            Self::A2 | Self::B2 => 2,
        }
    }
}

/// All physical parameters of the two-resonator system.
///
/// The four `omega_*` fields hold the bare mode frequencies; the detuning
/// selected by `breaking` is applied on top of them by
/// [`SystemParams::mode_frequencies`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Centre of the waveguide band.
    pub omega_c: f64,
    /// Nearest-neighbour hopping along the waveguide.
    pub xi0: f64,
    /// Waveguide to resonator coupling.
    pub xi1: f64,
    pub omega_a1: f64,
    pub omega_b1: f64,
    pub omega_a2: f64,
    pub omega_b2: f64,
    /// Number of bonds `L` between the two coupling sites.
    pub separation: usize,
    /// Symmetry-breaking detuning.
    pub delta: f64,
    pub breaking: Breaking,
    /// Positive broadening added to resonator propagators.
    pub eta: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            omega_c: 0.0,
            xi0: 1.0,
            xi1: 0.0,
            omega_a1: 0.0,
            omega_b1: 0.0,
            omega_a2: 0.0,
            omega_b2: 0.0,
            separation: 0,
            delta: 0.0,
            breaking: Breaking::None,
            eta: DEFAULT_ETA,
        }
    }
}

impl SystemParams {
    /// All four resonator modes at `omega`, coupled with strength `xi1`.
    pub fn degenerate(omega: f64, xi1: f64, separation: usize) -> Self {
        Self {
            xi1,
            omega_a1: omega,
            omega_b1: omega,
            omega_a2: omega,
            omega_b2: omega,
            separation,
            ..Self::default()
        }
    }

    /// Modes at `(+omega, -omega, +omega, -omega)`.
    pub fn antisymmetric(omega: f64, xi1: f64, separation: usize) -> Self {
        Self {
            omega_b1: -omega,
            omega_b2: -omega,
            ..Self::degenerate(omega, xi1, separation)
        }
    }

    pub fn with_eta(self, eta: f64) -> Self {
        Self { eta, ..self }
    }

    pub fn with_separation(self, separation: usize) -> Self {
        Self { separation, ..self }
    }

    pub fn with_breaking(self, breaking: Breaking, delta: f64) -> Self {
        Self {
            breaking,
            delta,
            ..self
        }
    }

    /// Checks the structural invariants `xi0 > 0`, `eta > 0` and finiteness.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("omega_c", self.omega_c),
            ("xi0", self.xi0),
            ("xi1", self.xi1),
            ("omega_a1", self.omega_a1),
            ("omega_b1", self.omega_b1),
            ("omega_a2", self.omega_a2),
            ("omega_b2", self.omega_b2),
            ("delta", self.delta),
            ("eta", self.eta),
        ];
        if let Some((name, _)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be finite")));
        }
        if self.xi0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "xi0 must be positive, got {}",
                self.xi0
            )));
        }
        if self.eta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        Ok(())
    }

    /// Bare frequencies `(a1, b1, a2, b2)` before any detuning.
    pub fn bare_frequencies(&self) -> [f64; 4] {
        [self.omega_a1, self.omega_b1, self.omega_a2, self.omega_b2]
    }

    /// Effective frequencies `(a1, b1, a2, b2)` after the configured detuning.
    pub fn mode_frequencies(&self) -> [f64; 4] {
        let signs = self.breaking.signs();
        let bare = self.bare_frequencies();
        std::array::from_fn(|i| bare[i] + signs[i] * self.delta)
    }

    /// Lower and upper band edges `omega_c -+ 2 xi0`.
    pub fn band(&self) -> (f64, f64) {
        (self.omega_c - 2.0 * self.xi0, self.omega_c + 2.0 * self.xi0)
    }

    /// Fails unless `omega` lies inside the band by at least the edge margin.
    pub fn check_in_band(&self, omega: f64) -> Result<()> {
        let (lower, upper) = self.band();
        if omega.is_finite()
            && (omega - self.omega_c).abs() <= 2.0 * self.xi0 - BAND_EDGE_MARGIN * self.xi0
        {
            Ok(())
        } else {
            Err(Error::BandEdge {
                omega,
                lower,
                upper,
            })
        }
    }
}

/// Waveguide dispersion `omega(k) = omega_c - 2 xi0 cos k`.
pub fn dispersion(k: f64, params: &SystemParams) -> f64 {
    params.omega_c - 2.0 * params.xi0 * k.cos()
}

/// Inverse of [`dispersion`] on `(0, pi)`.
pub fn wavevector(omega: f64, params: &SystemParams) -> Result<f64> {
    params.check_in_band(omega)?;
    Ok(((params.omega_c - omega) / (2.0 * params.xi0)).acos())
}

/// Returns parameters whose bare frequencies already include the detuning.
///
/// The result has `breaking = None`, so the detuning is never applied twice:
/// `apply_symmetry_breaking(p).mode_frequencies() == p.mode_frequencies()`.
pub fn apply_symmetry_breaking(params: &SystemParams) -> SystemParams {
    let [omega_a1, omega_b1, omega_a2, omega_b2] = params.mode_frequencies();
    SystemParams {
        omega_a1,
        omega_b1,
        omega_a2,
        omega_b2,
        breaking: Breaking::None,
        ..*params
    }
}

/// Index bookkeeping for the finite lattice used by dense solvers and dynamics.
///
/// Waveguide sites occupy indices `0..total_sites()`. Coupling site 0 sits at
/// index `n_side` and coupling site `L` at `n_side + L`. The resonator slots
/// `a1, b1, a2, b2` follow the waveguide sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeLayout {
    pub n_side: usize,
    pub separation: usize,
}

impl LatticeLayout {
    pub fn new(n_side: usize, separation: usize) -> Result<Self> {
        if n_side == 0 {
            return Err(Error::Layout("n_side must be positive".into()));
        }
        Ok(Self { n_side, separation })
    }

    /// Layout whose separation matches `params`.
    pub fn for_params(params: &SystemParams, n_side: usize) -> Result<Self> {
        Self::new(n_side, params.separation)
    }

    pub fn total_sites(&self) -> usize {
        2 * self.n_side + self.separation + 1
    }

    /// Dimension of the single-excitation state space.
    pub fn dim(&self) -> usize {
        self.total_sites() + 4
    }

    /// Waveguide index of coupling-frame site `j` (site 0 is the first coupling site).
    pub fn site_index(&self, j: isize) -> Option<usize> {
        let idx = self.n_side as isize + j;
        (idx >= 0 && (idx as usize) < self.total_sites()).then_some(idx as usize)
    }

    /// Waveguide index of the coupling site of resonator 1.
    pub fn first_coupling(&self) -> usize {
        self.n_side
    }

    /// Waveguide index of the coupling site of resonator 2.
    pub fn second_coupling(&self) -> usize {
        self.n_side + self.separation
    }

    /// State index of a resonator mode.
    pub fn slot(&self, mode: ResonatorMode) -> usize {
        self.total_sites() + mode.slot()
    }

    /// Waveguide index the given mode couples to.
    pub fn coupling_site(&self, mode: ResonatorMode) -> usize {
        match mode.resonator() {
            1 => self.first_coupling(),
            _ => self.second_coupling(),
        }
    }

    /// Index ranges of the left lead, the segment between couplings, and the right lead.
    pub fn regions(&self) -> [std::ops::Range<usize>; 3] {
        let a = self.first_coupling();
        let b = self.second_coupling() + 1;
        [0..a, a..b, b..self.total_sites()]
    }
}
