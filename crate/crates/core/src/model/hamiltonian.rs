//! Sparse single-excitation Hamiltonian on a finite lattice.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{LatticeLayout, ResonatorMode, SystemParams};
use crate::error::{Error, Result};

/// Real symmetric Hamiltonian in compressed sparse row form.
///
/// Every matrix element of the model is real, so values are stored as `f64`
/// and applied to complex state vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Hamiltonian {
    /// Assembles a matrix from `(row, col, value)` triplets. Duplicates are summed.
    pub fn from_triplets(dim: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; dim + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in entries {
            assert!(
                r < dim && c < dim,
                "entry ({r}, {c}) outside dimension {dim}"
            );
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
                continue;
            }
            row_ptr[r + 1] += 1;
            cols.push(c);
            vals.push(v);
            last = Some((r, c));
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self {
            dim,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Stored entries of row `r` as `(col, value)` pairs.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    /// Matrix element `H[r, c]`, zero when not stored.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.row(r).find(|&(j, _)| j == c).map_or(0.0, |(_, v)| v)
    }

    /// `y = H x`.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += x[self.cols[k]] * self.vals[k];
            }
            *out = acc;
        }
    }

    /// True when every stored entry has an identical mirror entry.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| self.row(r).all(|(c, v)| self.get(c, r) == v))
    }

    /// Interval containing the whole spectrum, from Gershgorin discs.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in 0..self.dim {
            let mut diag = 0.0;
            let mut radius = 0.0;
            for (c, v) in self.row(r) {
                if c == r {
                    diag += v;
                } else {
                    radius += v.abs();
                }
            }
            lo = lo.min(diag - radius);
            hi = hi.max(diag + radius);
        }
        (lo, hi)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }
}

/// Builds the Hamiltonian of the waveguide plus both resonators on `layout`.
///
/// Diagonal entries are `omega_c` on waveguide sites and the detuned mode
/// frequencies on resonator slots. Bonds carry `-xi0` and each mode couples to
/// its waveguide site with `-xi1`.
pub fn build_hamiltonian(params: &SystemParams, layout: &LatticeLayout) -> Result<Hamiltonian> {
    if layout.separation != params.separation {
        return Err(Error::Layout(format!(
            "layout separation {} differs from L = {}",
            layout.separation, params.separation
        )));
    }
    let sites = layout.total_sites();
    if params.separation + 1 > sites {
        return Err(Error::Layout(format!(
            "coupled segment of {} sites exceeds {} waveguide sites",
            params.separation + 1,
            sites
        )));
    }
    let freqs = params.mode_frequencies();
    let mut entries = Vec::with_capacity(3 * sites + 12);
    for i in 0..sites {
        entries.push((i, i, params.omega_c));
        if i + 1 < sites {
            entries.push((i, i + 1, -params.xi0));
            entries.push((i + 1, i, -params.xi0));
        }
    }
    for mode in ResonatorMode::ALL {
        let s = layout.slot(mode);
        let w = layout.coupling_site(mode);
        entries.push((s, s, freqs[mode.slot()]));
        if params.xi1 != 0.0 {
            entries.push((s, w, -params.xi1));
            entries.push((w, s, -params.xi1));
        }
    }
    Ok(Hamiltonian::from_triplets(layout.dim(), entries))
}
