//! Chebyshev expansion of the evolution operator.
//!
//! With the spectrum mapped into `[-1, 1]` by `H = a + b X`,
//!
//! ```text
//! exp(-i H dt) = exp(-i a dt) [J_0(b dt) + 2 sum_n (-i)^n J_n(b dt) T_n(X)]
//! ```
//!
//! The series converges faster than exponentially once `n > b dt`, so each
//! step is truncated where the coefficients fall below the accuracy target.

use num_complex::Complex64;

use super::bessel::bessel_j_sequence;
use super::{LatticeState, Trajectory};
use crate::error::{Error, Result};
use crate::model::Hamiltonian;

/// Accuracy and step controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorConfig {
    /// Target error per unit time.
    pub accuracy: f64,
    /// Longest single Chebyshev step.
    pub max_step: f64,
    /// Norm drift that aborts the run.
    pub norm_tolerance: f64,
}

impl Default for PropagatorConfig {
    fn default() -> Self {
        Self {
            accuracy: 1e-9,
            max_step: 10.0,
            norm_tolerance: 1e-6,
        }
    }
}

/// What to record during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    /// Evenly spaced records from `t = 0` to `t_final`, both included.
    pub samples: usize,
    /// Times at which the full state is kept.
    pub snapshot_times: Vec<f64>,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            samples: 500,
            snapshot_times: Vec::new(),
        }
    }
}

struct Chebyshev<'a> {
    h: &'a Hamiltonian,
    center: f64,
    half_width: f64,
    accuracy: f64,
    cache: Vec<(u64, Vec<Complex64>)>,
    scratch: [Vec<Complex64>; 3],
}

impl<'a> Chebyshev<'a> {
    fn new(h: &'a Hamiltonian, accuracy: f64) -> Self {
        let (lo, hi) = h.spectral_bounds();
        // A small margin keeps the scaled spectrum strictly inside [-1, 1].
        let half_width = 0.5 * (hi - lo) * 1.01 + 1e-12;
        let n = h.dim();
        Self {
            h,
            center: 0.5 * (hi + lo),
            half_width,
            accuracy,
            cache: Vec::new(),
            scratch: [
                vec![Complex64::default(); n],
                vec![Complex64::default(); n],
                vec![Complex64::default(); n],
            ],
        }
    }

    fn coefficients(&mut self, dt: f64) -> Vec<Complex64> {
        let key = dt.to_bits();
        if let Some((_, c)) = self.cache.iter().find(|(k, _)| *k == key) {
            return c.clone();
        }
        let x = self.half_width * dt;
        // The tail decays faster than exponentially past n = x, so cutting at
        // machine precision costs only a few terms beyond the accuracy target.
        let cutoff = (0.1 * self.accuracy * dt).min(1e-17);
        let n_max = (x + 30.0 + 10.0 * x.cbrt()).ceil() as usize;
        let j = bessel_j_sequence(x, n_max);
        let mut len = j.len();
        for (n, v) in j.iter().enumerate() {
            if n as f64 > x && 2.0 * v.abs() < cutoff {
                len = n;
                break;
            }
        }
        let phase = Complex64::from_polar(1.0, -self.center * dt);
        let mut minus_i = Complex64::new(1.0, 0.0);
        let coeffs: Vec<Complex64> = j[..len]
            .iter()
            .enumerate()
            .map(|(n, &jn)| {
                let c = if n == 0 {
                    jn.into()
                } else {
                    2.0 * jn * minus_i
                };
                minus_i *= Complex64::new(0.0, -1.0);
                phase * c
            })
            .collect();
        if self.cache.len() < 16 {
            self.cache.push((key, coeffs.clone()));
        }
        coeffs
    }

    /// `y = (H - a) x / b`.
    fn scaled_apply(
        h: &Hamiltonian,
        center: f64,
        inv_b: f64,
        x: &[Complex64],
        y: &mut [Complex64],
    ) {
        h.apply(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = (*yi - xi * center) * inv_b;
        }
    }

    fn step(&mut self, psi: &mut [Complex64], dt: f64) {
        let coeffs = self.coefficients(dt);
        let (h, center, inv_b) = (self.h, self.center, 1.0 / self.half_width);
        let [prev, cur, next] = &mut self.scratch;
        prev.copy_from_slice(psi);
        for (p, v) in psi.iter_mut().zip(prev.iter()) {
            *p = coeffs[0] * v;
        }
        if coeffs.len() < 2 {
            return;
        }
        Self::scaled_apply(h, center, inv_b, prev, cur);
        for (p, v) in psi.iter_mut().zip(cur.iter()) {
            *p += coeffs[1] * v;
        }
        for c in &coeffs[2..] {
            Self::scaled_apply(h, center, inv_b, cur, next);
            for ((nx, pv), p) in next.iter_mut().zip(prev.iter()).zip(psi.iter_mut()) {
                *nx = 2.0 * *nx - pv;
                *p += c * *nx;
            }
            std::mem::swap(prev, cur);
            std::mem::swap(cur, next);
        }
    }

    /// Advances `psi` by `duration` in equal steps no longer than `max_step`.
    fn advance(&mut self, psi: &mut [Complex64], duration: f64, max_step: f64) {
        if duration <= 0.0 {
            return;
        }
        let steps = (duration / max_step).ceil().max(1.0) as usize;
        let dt = duration / steps as f64;
        for _ in 0..steps {
            self.step(psi, dt);
        }
    }
}

fn check_inputs(state: &LatticeState, h: &Hamiltonian, config: &PropagatorConfig) -> Result<()> {
    if state.amplitudes.len() != h.dim() {
        return Err(Error::Layout(format!(
            "state dimension {} differs from Hamiltonian dimension {}",
            state.amplitudes.len(),
            h.dim()
        )));
    }
    let drift = (state.norm_sqr() - 1.0).abs();
    if drift > 1e-8 {
        return Err(Error::InvalidParameter(format!(
            "initial state is not normalised (|norm - 1| = {drift:e})"
        )));
    }
    if !(config.accuracy > 0.0 && config.max_step > 0.0 && config.norm_tolerance > 0.0) {
        return Err(Error::InvalidParameter(
            "propagator settings must be positive".into(),
        ));
    }
    Ok(())
}

/// Evolves `state` by `t` and returns the final state.
pub fn evolve(
    state: &LatticeState,
    h: &Hamiltonian,
    t: f64,
    config: &PropagatorConfig,
) -> Result<LatticeState> {
    check_inputs(state, h, config)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "evolution time must be non-negative, got {t}"
        )));
    }
    let mut cheb = Chebyshev::new(h, config.accuracy);
    let mut out = state.clone();
    cheb.advance(&mut out.amplitudes, t, config.max_step);
    out.time = state.time + t;
    let drift = (out.norm_sqr() - 1.0).abs();
    if drift > config.norm_tolerance {
        return Err(Error::Tolerance {
            drift,
            tolerance: config.norm_tolerance,
            time: out.time,
        });
    }
    Ok(out)
}

/// Evolves `state` to `t_final`, recording observables and snapshots.
///
/// Sample and snapshot times are hit exactly. The step sequence depends only
/// on the inputs, so identical calls give identical trajectories.
pub fn propagate(
    state: &LatticeState,
    h: &Hamiltonian,
    t_final: f64,
    sampling: &Sampling,
    config: &PropagatorConfig,
) -> Result<Trajectory> {
    check_inputs(state, h, config)?;
    if !(t_final > 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "t_final must be positive, got {t_final}"
        )));
    }
    if sampling.samples < 2 {
        return Err(Error::InvalidParameter(
            "at least two samples are required".into(),
        ));
    }
    if let Some(bad) = sampling
        .snapshot_times
        .iter()
        .find(|&&t| !(t >= 0.0 && t <= t_final))
    {
        return Err(Error::InvalidParameter(format!(
            "snapshot time {bad} outside [0, {t_final}]"
        )));
    }

    let n = sampling.samples;
    let sample_times: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                t_final
            } else {
                t_final * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let mut events: Vec<(f64, bool, bool)> =
        sample_times.iter().map(|&t| (t, true, false)).collect();
    events.extend(sampling.snapshot_times.iter().map(|&t| (t, false, true)));
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, bool, bool)> = Vec::with_capacity(events.len());
    for e in events {
        match merged.last_mut() {
            Some(last) if last.0 == e.0 => {
                last.1 |= e.1;
                last.2 |= e.2;
            }
            _ => merged.push(e),
        }
    }

    let mut traj = Trajectory::new(state);
    let mut cheb = Chebyshev::new(h, config.accuracy);
    let mut current = state.clone();
    current.time = 0.0;
    for (t, sample, snapshot) in merged {
        cheb.advance(&mut current.amplitudes, t - current.time, config.max_step);
        current.time = t;
        let drift = (current.norm_sqr() - 1.0).abs();
        if drift > config.norm_tolerance {
            return Err(Error::Tolerance {
                drift,
                tolerance: config.norm_tolerance,
                time: t,
            });
        }
        if sample {
            traj.record(&current);
        }
        if snapshot {
            traj.snapshots.push(current.clone());
        }
    }
    Ok(traj)
}
