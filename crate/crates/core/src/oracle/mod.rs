//! Independent stationary solvers used to cross-check the closed forms.
//!
//! * [`transfer_transmission`] matches plane waves across the two coupling
//!   sites by solving an explicit linear system. [`closed_form_amplitude`]
//!   and [`closed_form_probability`] give the same quantities in closed form.
//! * [`dense_resolvent`] and [`SpectralResolvent`] invert `z - H` on a finite
//!   lattice, optionally terminated by exact semi-infinite leads.
//! * [`spectral_evolution`] evolves small lattices by exact diagonalisation.

mod evolution;
mod resolvent;
mod wavefunction;

pub use evolution::spectral_evolution;
pub use resolvent::{
    dense_ldos, dense_resolvent, dense_resolvent_matrix, fisher_lee_transmission, lead_self_energy,
    DenseLdos, SpectralResolvent, Termination, DENSE_SITE_BUDGET,
};
pub use wavefunction::{
    closed_form_amplitude, closed_form_probability, effective_potential, transfer_transmission,
    ScatterSolution, POLE_TOLERANCE,
};
