//! Frequency grids, tabulated spectra and the frequency by separation map.

use rayon::prelude::*;

use super::eval_point;
use crate::error::{Error, Result};
use crate::model::SystemParams;

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Controls for bisection refinement of a frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    /// An interval is split while its end values, or its midpoint against the
    /// chord, differ by more than `tolerance * max(1, |f|)`.
    pub tolerance: f64,
    /// Intervals narrower than this are never split.
    pub min_spacing: f64,
    /// Maximum bisection depth below each coarse interval.
    pub max_depth: u32,
}

impl Default for Refinement {
    fn default() -> Self {
        Self {
            tolerance: 1e-3,
            min_spacing: 1e-13,
            max_depth: 40,
        }
    }
}

/// Refines a sorted coarse grid by recursive bisection wherever `f` varies quickly.
///
/// Each coarse interval is refined independently, so the result does not
/// depend on how the work is scheduled.
pub fn adaptive_grid<F>(coarse: &[f64], refine: &Refinement, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if coarse
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::InvalidParameter(
            "refinement needs a strictly increasing grid".into(),
        ));
    }
    let values: Vec<f64> = coarse.par_iter().map(|&w| f(w)).collect::<Result<_>>()?;
    let pieces: Vec<Vec<f64>> = (0..coarse.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            subdivide(
                &f,
                refine,
                (coarse[i], values[i]),
                (coarse[i + 1], values[i + 1]),
                0,
                &mut out,
            )?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut grid = Vec::with_capacity(coarse.len() + pieces.iter().map(Vec::len).sum::<usize>());
    for (i, &w) in coarse.iter().enumerate() {
        grid.push(w);
        if let Some(p) = pieces.get(i) {
            grid.extend_from_slice(p);
        }
    }
    Ok(grid)
}

fn subdivide<F>(
    f: &F,
    refine: &Refinement,
    (a, fa): (f64, f64),
    (b, fb): (f64, f64),
    depth: u32,
    out: &mut Vec<f64>,
) -> Result<()>
where
    F: Fn(f64) -> Result<f64>,
{
    if depth >= refine.max_depth || b - a < 2.0 * refine.min_spacing {
        return Ok(());
    }
    let m = 0.5 * (a + b);
    if !(a < m && m < b) {
        return Ok(());
    }
    let fm = f(m)?;
    let scale = 1f64.max(fa.abs()).max(fb.abs()).max(fm.abs());
    let tol = refine.tolerance * scale;
    if (fb - fa).abs() > tol || (fm - 0.5 * (fa + fb)).abs() > tol {
        subdivide(f, refine, (a, fa), (m, fm), depth + 1, out)?;
        out.push(m);
        subdivide(f, refine, (m, fm), (b, fb), depth + 1, out)?;
    }
    Ok(())
}

/// One tabulated frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow {
    pub omega: f64,
    /// Transmission probability.
    pub transmission: f64,
    /// Resonator density of states summed over the four modes.
    pub rho_w: f64,
    /// Waveguide density of states summed over the segment between the couplings.
    pub rho_between: f64,
}

/// Transmission and densities of states tabulated on a frequency grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpectrumGrid {
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumGrid {
    pub fn omegas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.omega).collect()
    }

    pub fn transmission(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.transmission).collect()
    }

    /// Checks `0 <= T <= 1` and non-negative densities up to rounding slack.
    pub fn check_invariants(&self) -> Result<()> {
        for r in &self.rows {
            if !(r.transmission >= 0.0 && r.transmission <= 1.0 + 1e-12) {
                return Err(Error::Validation(format!(
                    "transmission {} out of range at omega = {}",
                    r.transmission, r.omega
                )));
            }
            if r.rho_w < -1e-12 || r.rho_between < -1e-12 {
                return Err(Error::Validation(format!(
                    "negative density of states at omega = {}",
                    r.omega
                )));
            }
        }
        Ok(())
    }

    /// Row with the largest transmission.
    pub fn max_transmission(&self) -> Option<SpectrumRow> {
        self.rows
            .iter()
            .copied()
            .max_by(|a, b| a.transmission.total_cmp(&b.transmission))
    }
}

/// Tabulates transmission and both densities of states at each frequency.
pub fn spectrum(params: &SystemParams, omegas: &[f64]) -> Result<SpectrumGrid> {
    let rows = omegas
        .par_iter()
        .map(|&omega| {
            let e = eval_point(params, omega)?;
            Ok(SpectrumRow {
                omega,
                transmission: e.transmission_amplitude().norm_sqr(),
                rho_w: e.resonator_ldos(),
                rho_between: e.between_ldos(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(SpectrumGrid { rows })
}

/// Segment density of states over a frequency by separation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub omegas: Vec<f64>,
    pub separations: Vec<usize>,
    /// `values[i][j]` is the value at `omegas[i]` and `separations[j]`;
    /// `None` marks cells that could not be evaluated (band edge).
    pub values: Vec<Vec<Option<f64>>>,
}

impl Heatmap {
    /// Values of one separation column.
    pub fn column(&self, j: usize) -> Vec<Option<f64>> {
        self.values.iter().map(|row| row[j]).collect()
    }

    /// Largest finite value of one separation column.
    pub fn column_max(&self, j: usize) -> Option<(f64, f64)> {
        self.omegas
            .iter()
            .zip(self.values.iter())
            .filter_map(|(&w, row)| row[j].map(|v| (w, v)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Evaluates the segment density of states for every `(omega, L)` pair.
pub fn heatmap(params: &SystemParams, omegas: &[f64], separations: &[usize]) -> Result<Heatmap> {
    params.validate()?;
    let values = omegas
        .par_iter()
        .map(|&omega| {
            separations
                .iter()
                .map(|&l| match eval_point(&params.with_separation(l), omega) {
                    Ok(e) => Ok(Some(e.between_ldos())),
                    Err(Error::BandEdge { .. }) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Heatmap {
        omegas: omegas.to_vec(),
        separations: separations.to_vec(),
        values,
    })
}
