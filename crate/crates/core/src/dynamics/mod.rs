//! Time-dependent single-excitation dynamics on the closed lattice.
//!
//! States live on the waveguide sites plus the four resonator slots of a
//! [`LatticeLayout`](crate::LatticeLayout). [`propagate`] applies `exp(-i H t)` with a Chebyshev
//! expansion and records regional probabilities, mode occupations and
//! optional snapshots.

mod bessel;
mod propagator;
mod state;
mod trajectory;

pub use bessel::bessel_j_sequence;
pub use propagator::{evolve, propagate, PropagatorConfig, Sampling};
pub use state::{antisym_w1, antisym_w1w2, gaussian_packet, LatticeState};
pub use trajectory::{transfer_fidelity, Direction, Trajectory};
