//! Exact time evolution of small lattices by diagonalisation.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::model::Hamiltonian;

/// `exp(-i H t) psi` computed from the eigendecomposition of the dense Hamiltonian.
pub fn spectral_evolution(h: &Hamiltonian, psi: &[Complex64], t: f64) -> Vec<Complex64> {
    assert_eq!(psi.len(), h.dim());
    let eig = h.to_dense().symmetric_eigen();
    let v = eig.eigenvectors;
    let n = v.nrows();
    let psi = DVector::from_column_slice(psi);
    let vc = v.map(Complex64::from);
    let mut coeffs = vc.transpose() * psi;
    for (c, &e) in coeffs.iter_mut().zip(eig.eigenvalues.iter()) {
        *c *= Complex64::from_polar(1.0, -e * t);
    }
    let out = vc * coeffs;
    debug_assert_eq!(out.len(), n);
    out.iter().copied().collect()
}
