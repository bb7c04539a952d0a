//! Recorded observables and transfer fidelity.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::LatticeState;
use crate::error::{Error, Result};

/// Observables sampled along one evolution.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub between: Vec<f64>,
    /// Occupations of `a1, b1, a2, b2`, one series per mode.
    pub mode_occ: [Vec<f64>; 4],
    /// Total norm at each sample.
    pub norms: Vec<f64>,
    /// Mode amplitudes of the initial state.
    pub initial_modes: [Complex64; 4],
    /// Full states at the requested snapshot times.
    pub snapshots: Vec<LatticeState>,
}

impl Trajectory {
    pub fn new(initial: &LatticeState) -> Self {
        Self {
            initial_modes: initial.mode_amplitudes(),
            ..Self::default()
        }
    }

    /// Appends the observables of `state` as the next sample.
    pub fn record(&mut self, state: &LatticeState) {
        let [l, b, r] = state.regional_probabilities();
        self.times.push(state.time);
        self.left.push(l);
        self.between.push(b);
        self.right.push(r);
        for (series, occ) in self.mode_occ.iter_mut().zip(state.mode_occupations()) {
            series.push(occ);
        }
        self.norms.push(state.norm_sqr());
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Mode occupations at sample `i`.
    pub fn occupations(&self, i: usize) -> [f64; 4] {
        std::array::from_fn(|m| self.mode_occ[m][i])
    }

    /// Summed occupation of both resonators at sample `i`.
    pub fn resonator_total(&self, i: usize) -> f64 {
        self.occupations(i).iter().sum()
    }

    /// Largest deviation of the recorded norm from one.
    pub fn max_norm_drift(&self) -> f64 {
        self.norms
            .iter()
            .map(|n| (n - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Occupation-based fidelity at every sample.
    pub fn fidelity_series(&self, direction: Direction) -> Vec<f64> {
        (0..self.len())
            .map(|i| direction.occupation(self.occupations(i)))
            .collect()
    }

    /// Projector-overlap fidelity at every sample (see [`Direction::overlap`]).
    pub fn overlap_series(&self, direction: Direction) -> Vec<f64> {
        let initial = self.initial_modes.map(|a| a.norm_sqr());
        (0..self.len())
            .map(|i| direction.overlap(self.occupations(i), initial))
            .collect()
    }
}

/// Which resonators count as source and target of a transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From resonator 1 into resonator 2.
    W1ToW2,
    /// From resonator 1 back into resonator 1.
    W1Return,
    /// Excitation shared by both resonators, retained in both.
    Pair,
}

impl Direction {
    fn resonators(self) -> (&'static [usize], &'static [usize]) {
        match self {
            Direction::W1ToW2 => (&[1], &[2]),
            Direction::W1Return => (&[1], &[1]),
            Direction::Pair => (&[1, 2], &[1, 2]),
        }
    }

    /// Target-resonator occupation.
    pub fn occupation(self, occ: [f64; 4]) -> f64 {
        let (_, targets) = self.resonators();
        targets
            .iter()
            .map(|&r| occ[2 * (r - 1)] + occ[2 * (r - 1) + 1])
            .sum()
    }

    /// Overlap form `1/2 sum_{m in a,b} P_m^target(t) P_m^source(0)`.
    ///
    /// For each mode type, the occupation summed over target resonators is
    /// weighted by the initial occupation summed over source resonators. For
    /// an excitation split evenly across two modes this equals a quarter of
    /// [`Direction::occupation`].
    pub fn overlap(self, occ: [f64; 4], initial: [f64; 4]) -> f64 {
        let (sources, targets) = self.resonators();
        let sum = |v: [f64; 4], set: &[usize], m: usize| -> f64 {
            set.iter().map(|&r| v[2 * (r - 1) + m]).sum()
        };
        0.5 * (0..2)
            .map(|m| sum(occ, targets, m) * sum(initial, sources, m))
            .sum::<f64>()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::W1ToW2 => "w1_to_w2",
            Direction::W1Return => "w1_return",
            Direction::Pair => "pair",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "w1_to_w2" => Ok(Direction::W1ToW2),
            "w1_return" => Ok(Direction::W1Return),
            "pair" => Ok(Direction::Pair),
            other => Err(Error::InvalidParameter(format!(
                "unknown direction `{other}`"
            ))),
        }
    }
}

/// Target occupation at the last recorded time.
pub fn transfer_fidelity(traj: &Trajectory, direction: Direction) -> f64 {
    traj.len()
        .checked_sub(1)
        .map_or(0.0, |last| direction.occupation(traj.occupations(last)))
}
