//! Seeded random generators for matrices, unitaries, isometries and combs.

use num_complex::Complex64;
use rand::Rng;

use crate::backend::Backend;
use crate::comb::CombRep;
use crate::error::Result;
use crate::instances::linalg::CMatrix;
use crate::instances::matrix::{BoolMatrices, ComplexMatrices, MatMorphism, Matrix};
use crate::object::ObjectWord;

pub fn bool_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, density: f64) -> Matrix<bool> {
    Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| rng.gen_bool(density)).collect())
}

/// Entries with real and imaginary parts uniform in `[-1, 1]`.
pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    Matrix::from_vec(
        rows,
        cols,
        (0..rows * cols).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
    )
}

/// A `rows × cols` matrix with orthonormal columns (`rows ≥ cols`), by
/// Gram–Schmidt on random columns.
pub fn isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    assert!(rows >= cols, "an isometry cannot increase dimension");
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    while basis.len() < cols {
        let mut v: Vec<Complex64> = complex_matrix(rng, rows, 1).data().to_vec();
        for u in &basis {
            let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= overlap * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        // a nearly dependent draw is discarded
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    Matrix::from_fn(rows, cols, |i, j| basis[j][i])
}

pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    isometry(rng, n, n)
}

pub fn word<R: Rng + ?Sized>(rng: &mut R, generators: &[String], max_len: usize) -> ObjectWord {
    let len = rng.gen_range(0..=max_len);
    ObjectWord::new((0..len).map(|_| generators[rng.gen_range(0..generators.len())].clone()))
}

pub fn bool_morphism<R: Rng + ?Sized>(
    rng: &mut R,
    b: &BoolMatrices,
    dom: &ObjectWord,
    cod: &ObjectWord,
    density: f64,
) -> Result<MatMorphism<bool>> {
    b.morphism(dom, cod, bool_matrix(rng, b.dim(cod), b.dim(dom), density))
}

pub fn complex_morphism<R: Rng + ?Sized>(
    rng: &mut R,
    b: &ComplexMatrices,
    dom: &ObjectWord,
    cod: &ObjectWord,
) -> Result<MatMorphism<Complex64>> {
    b.morphism(dom, cod, complex_matrix(rng, b.dim(cod), b.dim(dom)))
}

/// A random Boolean comb `(A, A′) → (B, B′)` with environment `env`.
pub fn bool_comb<R: Rng + ?Sized>(
    rng: &mut R,
    b: &BoolMatrices,
    outer: (&ObjectWord, &ObjectWord),
    hole: (&ObjectWord, &ObjectWord),
    env: &ObjectWord,
    density: f64,
) -> Result<CombRep<MatMorphism<bool>>> {
    let f = bool_morphism(rng, b, outer.0, &env.tensor(hole.0), density)?;
    let g = bool_morphism(rng, b, &env.tensor(hole.1), outer.1, density)?;
    CombRep::new(b, env.clone(), f, g)
}

pub fn complex_comb<R: Rng + ?Sized>(
    rng: &mut R,
    b: &ComplexMatrices,
    outer: (&ObjectWord, &ObjectWord),
    hole: (&ObjectWord, &ObjectWord),
    env: &ObjectWord,
) -> Result<CombRep<MatMorphism<Complex64>>> {
    let f = complex_morphism(rng, b, outer.0, &env.tensor(hole.0))?;
    let g = complex_morphism(rng, b, &env.tensor(hole.1), outer.1)?;
    CombRep::new(b, env.clone(), f, g)
}

/// A random isometry `A → E ⊗ B` as a morphism.
pub fn isometry_morphism<R: Rng + ?Sized>(
    rng: &mut R,
    b: &ComplexMatrices,
    dom: &ObjectWord,
    cod: &ObjectWord,
) -> Result<MatMorphism<Complex64>> {
    b.morphism(dom, cod, isometry(rng, b.dim(cod), b.dim(dom)))
}

/// Picks one of `items` uniformly.
pub fn choose<'a, T, R: Rng + ?Sized>(rng: &mut R, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

/// Random comb over any enumerable backend, halves drawn from its hom
/// enumerations; `None` when either hom-set is empty.
pub fn enumerated_comb<B: Backend + ?Sized, R: Rng + ?Sized>(
    rng: &mut R,
    b: &B,
    outer: (&ObjectWord, &ObjectWord),
    hole: (&ObjectWord, &ObjectWord),
    env: &ObjectWord,
    budget: &crate::backend::Budget,
) -> Result<Option<CombRep<B::Mor>>> {
    let fs = b.enumerate_hom(outer.0, &env.tensor(hole.0), budget)?;
    let gs = b.enumerate_hom(&env.tensor(hole.1), outer.1, budget)?;
    if fs.is_empty() || gs.is_empty() {
        return Ok(None);
    }
    let f = choose(rng, &fs.items).clone();
    let g = choose(rng, &gs.items).clone();
    CombRep::new(b, env.clone(), f, g).map(Some)
}
