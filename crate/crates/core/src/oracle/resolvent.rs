//! Brute-force resolvents `(z - H)^{-1}` of the finite lattice, `z = omega + i eta`.
//!
//! A hard-wall chain has a discrete spectrum, so its densities of states are
//! only meaningful once `eta` exceeds the level spacing. Terminating both ends
//! with the exact self-energy of a semi-infinite chain removes the finite-size
//! levels and reproduces the infinite-waveguide quantities at any `eta`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, wavevector, LatticeLayout, SystemParams};

/// Largest number of waveguide sites accepted by the dense solvers.
pub const DENSE_SITE_BUDGET: usize = 4096;

/// Smallest `eta` accepted for hard-wall chains with `n_side <= 2000`.
const HARD_WALL_ETA_FLOOR: f64 = 1e-5;
const HARD_WALL_FLOOR_SIDES: usize = 2000;

/// Boundary condition at the two ends of the finite chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Closed chain; the end sites have a single neighbour.
    HardWall,
    /// Each end is attached to a semi-infinite chain through its exact self-energy.
    Leads,
}

/// Self-energy `xi0^2 g_s(z)` of a semi-infinite chain attached through one bond.
///
/// The root of `g_s` with non-positive imaginary part is the retarded one for
/// `Im z > 0`; in the band it equals `-xi0 e^{ik}`.
pub fn lead_self_energy(params: &SystemParams, z: Complex64) -> Complex64 {
    let xi0 = params.xi0;
    let x = (z - params.omega_c) / (2.0 * xi0);
    let s = (x * x - 1.0).sqrt();
    let (r1, r2) = (x - s, x + s);
    let surface = if r1.im <= r2.im { r1 } else { r2 };
    xi0 * surface
}

fn check_budget(
    params: &SystemParams,
    layout: &LatticeLayout,
    termination: Termination,
) -> Result<()> {
    params.validate()?;
    if layout.total_sites() > DENSE_SITE_BUDGET {
        return Err(Error::InvalidParameter(format!(
            "{} waveguide sites exceed the dense budget of {DENSE_SITE_BUDGET}",
            layout.total_sites()
        )));
    }
    if termination == Termination::HardWall
        && layout.n_side <= HARD_WALL_FLOOR_SIDES
        && params.eta < HARD_WALL_ETA_FLOOR
    {
        return Err(Error::InvalidParameter(format!(
            "eta = {:e} is below the level-spacing floor {HARD_WALL_ETA_FLOOR:e} of a hard-wall chain with n_side = {}",
            params.eta, layout.n_side
        )));
    }
    Ok(())
}

fn complex_z(params: &SystemParams, omega: f64) -> Complex64 {
    Complex64::new(omega, params.eta)
}

/// Full inverse of `z - H - Sigma_leads`.
pub fn dense_resolvent_matrix(
    params: &SystemParams,
    layout: &LatticeLayout,
    omega: f64,
    termination: Termination,
) -> Result<DMatrix<Complex64>> {
    check_budget(params, layout, termination)?;
    let h = build_hamiltonian(params, layout)?.to_dense();
    let z = complex_z(params, omega);
    let n = h.nrows();
    let mut m = DMatrix::from_fn(n, n, |r, c| Complex64::from(-h[(r, c)]));
    for i in 0..n {
        m[(i, i)] += z;
    }
    if termination == Termination::Leads {
        let sigma = lead_self_energy(params, z);
        let last = layout.total_sites() - 1;
        m[(0, 0)] -= sigma;
        m[(last, last)] -= sigma;
    }
    m.try_inverse()
        .ok_or_else(|| Error::Singular(format!("z - H is singular at omega = {omega}")))
}

/// Diagonal of the resolvent, one entry per state index.
pub fn dense_resolvent(
    params: &SystemParams,
    layout: &LatticeLayout,
    omega: f64,
    termination: Termination,
) -> Result<Vec<Complex64>> {
    let g = dense_resolvent_matrix(params, layout, omega, termination)?;
    Ok(g.diagonal().iter().copied().collect())
}

/// Densities of states read off a resolvent diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseLdos {
    /// Summed over the four resonator slots.
    pub resonator: f64,
    /// Summed over the waveguide sites from coupling site 0 to coupling site `L`.
    pub between: f64,
}

pub fn dense_ldos(layout: &LatticeLayout, diagonal: &[Complex64]) -> DenseLdos {
    let sites = layout.total_sites();
    let resonator: f64 = diagonal[sites..sites + 4].iter().map(|g| g.im).sum();
    let between: f64 = diagonal[layout.first_coupling()..=layout.second_coupling()]
        .iter()
        .map(|g| g.im)
        .sum();
    DenseLdos {
        resonator: -resonator / PI,
        between: -between / PI,
    }
}

/// Transmission amplitude extracted from the lead-terminated resolvent.
///
/// Uses the propagator between the sites just outside the coupled segment,
/// `t = 2 i xi0 sin k G(-1, L+1) e^{-ik(L+2)}`.
pub fn fisher_lee_transmission(
    params: &SystemParams,
    layout: &LatticeLayout,
    omega: f64,
) -> Result<Complex64> {
    let k = wavevector(omega, params)?;
    let g = dense_resolvent_matrix(params, layout, omega, Termination::Leads)?;
    let from = layout.first_coupling() - 1;
    let to = layout.second_coupling() + 1;
    let l = params.separation as f64;
    Ok(Complex64::new(0.0, 2.0 * params.xi0 * k.sin())
        * g[(to, from)]
        * Complex64::from_polar(1.0, -k * (l + 2.0)))
}

/// End-site columns of the closed-chain resolvent and the inverted 2x2 core.
struct LeadCorrection {
    c0: Vec<Complex64>,
    cn: Vec<Complex64>,
    core: Matrix2<Complex64>,
}

/// Resolvent built from one eigendecomposition of the lattice Hamiltonian.
///
/// Each frequency then costs `O(n^2)` instead of a fresh `O(n^3)` inversion.
/// Lead terminations enter as a rank-2 Woodbury correction on the two end sites.
#[derive(Debug, Clone)]
pub struct SpectralResolvent {
    params: SystemParams,
    layout: LatticeLayout,
    termination: Termination,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SpectralResolvent {
    pub fn new(
        params: &SystemParams,
        layout: &LatticeLayout,
        termination: Termination,
    ) -> Result<Self> {
        check_budget(params, layout, termination)?;
        let h = build_hamiltonian(params, layout)?.to_dense();
        let eig = h.symmetric_eigen();
        Ok(Self {
            params: *params,
            layout: *layout,
            termination,
            eigenvalues: eig.eigenvalues,
            eigenvectors: eig.eigenvectors,
        })
    }

    pub fn layout(&self) -> &LatticeLayout {
        &self.layout
    }

    /// Same eigendecomposition with a different end termination.
    pub fn with_termination(&self, termination: Termination) -> Result<Self> {
        check_budget(&self.params, &self.layout, termination)?;
        Ok(Self {
            termination,
            ..self.clone()
        })
    }

    fn weights(&self, z: Complex64) -> Vec<Complex64> {
        self.eigenvalues.iter().map(|&e| 1.0 / (z - e)).collect()
    }

    /// Column `j` of the bare (closed-chain) resolvent.
    fn bare_column(&self, j: usize, d: &[Complex64]) -> Vec<Complex64> {
        let v = &self.eigenvectors;
        let n = v.nrows();
        let w_re = DVector::from_fn(n, |k, _| v[(j, k)] * d[k].re);
        let w_im = DVector::from_fn(n, |k, _| v[(j, k)] * d[k].im);
        let re = v * w_re;
        let im = v * w_im;
        re.iter()
            .zip(im.iter())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect()
    }

    /// Rank-2 lead correction: end-site columns of the bare resolvent and the 2x2 core.
    fn lead_correction(&self, z: Complex64, d: &[Complex64]) -> Result<Option<LeadCorrection>> {
        if self.termination == Termination::HardWall {
            return Ok(None);
        }
        let sigma = lead_self_energy(&self.params, z);
        let last = self.layout.total_sites() - 1;
        let c0 = self.bare_column(0, d);
        let cn = self.bare_column(last, d);
        let inv = 1.0 / sigma;
        let core = Matrix2::new(inv - c0[0], -c0[last], -cn[0], inv - cn[last]);
        let core = core
            .try_inverse()
            .ok_or_else(|| Error::Singular("lead correction is singular".into()))?;
        Ok(Some(LeadCorrection { c0, cn, core }))
    }

    /// Diagonal of the resolvent at `omega`.
    pub fn diagonal(&self, omega: f64) -> Result<Vec<Complex64>> {
        let z = complex_z(&self.params, omega);
        let d = self.weights(z);
        let v = &self.eigenvectors;
        let n = v.nrows();
        let mut diag = vec![Complex64::new(0.0, 0.0); n];
        for (k, col) in v.column_iter().enumerate() {
            let dk = d[k];
            for (g, &x) in diag.iter_mut().zip(col.iter()) {
                *g += dk * (x * x);
            }
        }
        if let Some(LeadCorrection { c0, cn, core }) = self.lead_correction(z, &d)? {
            for i in 0..n {
                let u = [c0[i], cn[i]];
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..2 {
                    for b in 0..2 {
                        acc += u[a] * core[(a, b)] * u[b];
                    }
                }
                diag[i] += acc;
            }
        }
        Ok(diag)
    }

    /// Single resolvent element `G(i, j)` at `omega`.
    pub fn element(&self, i: usize, j: usize, omega: f64) -> Result<Complex64> {
        let z = complex_z(&self.params, omega);
        let d = self.weights(z);
        let v = &self.eigenvectors;
        let mut g: Complex64 = (0..v.ncols()).map(|k| d[k] * (v[(i, k)] * v[(j, k)])).sum();
        if let Some(LeadCorrection { c0, cn, core }) = self.lead_correction(z, &d)? {
            let ui = [c0[i], cn[i]];
            let uj = [c0[j], cn[j]];
            for a in 0..2 {
                for b in 0..2 {
                    g += ui[a] * core[(a, b)] * uj[b];
                }
            }
        }
        Ok(g)
    }

    /// Densities of states at `omega`.
    pub fn ldos(&self, omega: f64) -> Result<DenseLdos> {
        Ok(dense_ldos(&self.layout, &self.diagonal(omega)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ResonatorMode;
    use crate::stationary;

    fn params() -> SystemParams {
        SystemParams {
            omega_a1: 0.3,
            omega_b1: -0.2,
            omega_a2: 0.1,
            omega_b2: 0.25,
            xi1: 0.4,
            separation: 3,
            eta: 1e-3,
            ..SystemParams::default()
        }
    }

    #[test]
    fn lead_self_energy_in_band() {
        let p = SystemParams::default();
        for w in [-1.5, -0.2, 0.0, 0.9] {
            let k = wavevector(w, &p).unwrap();
            let s = lead_self_energy(&p, Complex64::new(w, 1e-14));
            assert!((s + Complex64::from_polar(1.0, k)).norm() < 1e-9);
            let outside = lead_self_energy(&p, Complex64::new(3.0 + w, 1e-3));
            assert!(outside.im <= 0.0 && outside.norm() < 1.0);
        }
    }

    #[test]
    fn identity_check() {
        let p = params().with_eta(1e-4);
        let layout = LatticeLayout::new(30, 3).unwrap();
        assert_eq!(layout.total_sites(), 64);
        let g = dense_resolvent_matrix(&p, &layout, 0.2, Termination::HardWall).unwrap();
        let h = build_hamiltonian(&p, &layout).unwrap().to_dense();
        let z = Complex64::new(0.2, p.eta);
        let n = h.nrows();
        let a = DMatrix::from_fn(n, n, |r, c| {
            let d = if r == c { z } else { Complex64::new(0.0, 0.0) };
            d - h[(r, c)]
        });
        let prod = a * g;
        for r in 0..n {
            for c in 0..n {
                let want = if r == c { 1.0 } else { 0.0 };
                assert!((prod[(r, c)] - want).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn spectral_matches_direct() {
        let p = params();
        let layout = LatticeLayout::new(12, 3).unwrap();
        for term in [Termination::HardWall, Termination::Leads] {
            let s = SpectralResolvent::new(&p, &layout, term).unwrap();
            for w in [-1.2, 0.05, 0.3] {
                let direct = dense_resolvent_matrix(&p, &layout, w, term).unwrap();
                let diag = s.diagonal(w).unwrap();
                for (i, g) in diag.iter().enumerate() {
                    assert!((g - direct[(i, i)]).norm() < 1e-9 * (1.0 + g.norm()));
                }
                let g = s.element(4, 20, w).unwrap();
                assert!((g - direct[(4, 20)]).norm() < 1e-9 * (1.0 + g.norm()));
            }
        }
    }

    #[test]
    fn leads_reproduce_closed_forms() {
        let p = params().with_eta(1e-9);
        let layout = LatticeLayout::new(6, 3).unwrap();
        for w in [-0.9, 0.12, 0.27] {
            let diag = dense_resolvent(&p, &layout, w, Termination::Leads).unwrap();
            let e = stationary::eval_point(&p, w).unwrap();
            for m in ResonatorMode::ALL {
                let g = diag[layout.slot(m)];
                assert!((g - e.mode_green(m)).norm() < 1e-6 * g.norm());
            }
            for j in 0..=3 {
                let g = diag[layout.first_coupling() + j];
                assert!((g - e.site_green(j)).norm() < 1e-6 * g.norm());
            }
            let t = fisher_lee_transmission(&p, &layout, w).unwrap();
            assert!((t - e.transmission_amplitude()).norm() < 1e-6);
        }
    }

    #[test]
    fn dyson_equation() {
        let p = params().with_separation(1).with_eta(1e-3);
        let layout = LatticeLayout::new(7, 1).unwrap();
        assert_eq!(layout.total_sites(), 16);
        let full = dense_resolvent_matrix(&p, &layout, 0.15, Termination::HardWall).unwrap();
        let decoupled = SystemParams { xi1: 0.0, ..p };
        let g = dense_resolvent_matrix(&decoupled, &layout, 0.15, Termination::HardWall).unwrap();
        let h = build_hamiltonian(&p, &layout).unwrap().to_dense();
        let h0 = build_hamiltonian(&decoupled, &layout).unwrap().to_dense();
        let hi = (h - h0).map(Complex64::from);
        let rhs = &g + &g * hi * &full;
        assert!((full - rhs).camax() < 1e-10);
    }

    #[test]
    fn budget_and_floor() {
        let p = params().with_eta(1e-6);
        let small = LatticeLayout::new(10, 3).unwrap();
        assert!(dense_resolvent(&p, &small, 0.0, Termination::HardWall).is_err());
        assert!(dense_resolvent(&p, &small, 0.0, Termination::Leads).is_ok());
        let huge = LatticeLayout::new(2100, 3).unwrap();
        assert!(SpectralResolvent::new(&p, &huge, Termination::Leads).is_err());
    }
}
