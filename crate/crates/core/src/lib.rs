//! Single-photon transport through two whispering-gallery resonators (WGRs)
//! side-coupled to a tight-binding waveguide.
//!
//! Each resonator carries two counter-propagating modes `a` and `b`. Both
//! modes of resonator 1 couple to waveguide site 0 and both modes of
//! resonator 2 couple to site `L`.
//!
//! * [`model`]: parameters, dispersion, symmetry breaking and the lattice Hamiltonian.
//! * [`stationary`]: closed-form Green's functions for transmission and local densities of states.
//! * [`oracle`]: independent stationary solvers (wavefunction matching and dense resolvents).
//! * [`dynamics`]: initial states, a Chebyshev propagator, observables and transfer fidelity.
//! * [`cli`]: configuration parsing and batch runs that write CSV data.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod oracle;
pub mod stationary;

pub use error::{Error, Result};
pub use model::{Breaking, Hamiltonian, LatticeLayout, SystemParams};
