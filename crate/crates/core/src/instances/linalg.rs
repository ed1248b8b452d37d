//! Complex-matrix helpers shared by the CPM and unitary code: Kraus slicing,
//! tensor separation and hermitian spectra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::instances::matrix::{ComplexMatrices, MatMorphism, Matrix};
use crate::object::ObjectWord;

pub type CMatrix = Matrix<Complex64>;

/// Slices `f : A → E ⊗ B` along the standard basis of `E`; slice `x` is
/// `(⟨x| ⊗ 1_B) · f`.
pub fn kraus_slices(b: &ComplexMatrices, f: &MatMorphism<Complex64>, env: &ObjectWord) -> Result<Vec<CMatrix>> {
    let rest = b.split_prefix(f.cod(), env).ok_or_else(|| Error::BadSplit {
        cod: f.cod().to_string(),
        env: env.to_string(),
        rest: "?".into(),
    })?;
    kraus_slices_dims(f.matrix(), b.dim(env), b.dim(&rest))
}

pub fn kraus_slices_dims(f: &CMatrix, env_dim: usize, out_dim: usize) -> Result<Vec<CMatrix>> {
    if env_dim * out_dim != f.rows() {
        return Err(Error::BadSplit {
            cod: format!("dimension {}", f.rows()),
            env: format!("dimension {env_dim}"),
            rest: format!("dimension {out_dim}"),
        });
    }
    Ok((0..env_dim).map(|x| CMatrix::from_fn(out_dim, f.cols(), |i, j| *f.get(x * out_dim + i, j))).collect())
}

/// Inverse of [`kraus_slices_dims`].
pub fn stack_slices(slices: &[CMatrix]) -> CMatrix {
    let out_dim = slices[0].rows();
    let cols = slices[0].cols();
    CMatrix::from_fn(out_dim * slices.len(), cols, |r, j| *slices[r / out_dim].get(r % out_dim, j))
}

/// Contracts the `B` factor of `U : E ⊗ B → E' ⊗ B` with the basis state
/// `|0⟩` and effect `⟨0|`, giving the candidate `U'` with `U ≈ U' ⊗ 1_B`.
pub fn contract_second_factor(u: &CMatrix, b_dim: usize) -> CMatrix {
    let rows = u.rows() / b_dim;
    let cols = u.cols() / b_dim;
    CMatrix::from_fn(rows, cols, |i, j| *u.get(i * b_dim, j * b_dim))
}

/// `‖U − U' ⊗ 1_B‖_F` for the contracted candidate `U'`.
pub fn separation_residual(u: &CMatrix, b_dim: usize) -> (CMatrix, f64) {
    let factor = contract_second_factor(u, b_dim);
    let rebuilt = factor.kron(&CMatrix::identity(b_dim));
    let residual = u.frobenius_distance(&rebuilt);
    (factor, residual)
}

/// Returns `U'` with `U = U' ⊗ 1_B` up to `tol`, or `None` when `U` does not
/// separate.
pub fn tensor_separate(u: &CMatrix, b_dim: usize, tol: f64) -> Option<(CMatrix, f64)> {
    if b_dim == 0 || !u.rows().is_multiple_of(b_dim) || !u.cols().is_multiple_of(b_dim) {
        return None;
    }
    let (factor, residual) = separation_residual(u, b_dim);
    (residual <= tol).then_some((factor, residual))
}

pub fn to_nalgebra(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.data())
}

/// Largest entrywise deviation from hermiticity.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            worst = worst.max((m.get(i, j) - m.get(j, i).conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of the hermitian part of a square matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    assert_eq!(m.rows(), m.cols(), "eigenvalues need a square matrix");
    let a = to_nalgebra(m);
    let h = (&a + a.adjoint()).scale(0.5);
    let mut evs: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    evs
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.rows() == m.cols() && m.mul(&m.adjoint()).approx_eq(&CMatrix::identity(m.rows()), tol)
}

pub fn is_isometry(m: &CMatrix, tol: f64) -> bool {
    m.adjoint().mul(m).approx_eq(&CMatrix::identity(m.cols()), tol)
}
