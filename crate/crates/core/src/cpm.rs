//! Completely positive maps from dagger combs `(f, f†)_E` over complex
//! matrices.
//!
//! Density matrices are vectorised row-major, so the transfer matrix
//! `T = Σ_x conj(K_x) ⊗ K_x` of the Kraus slices `K_x` of `f` acts as
//! `ρ ↦ Σ_x K̄_x ρ K_xᵀ`. The Choi matrix is the reshuffle
//! `J[(i,k),(j,l)] = T[(k,l),(i,j)]`.

use num_complex::Complex64;

use crate::backend::Backend;
use crate::comb::{braid_probe, extended_eval, same_boundary, CombRep};
use crate::decision::{Coverage, Decision, Probe, Witness};
use crate::error::{Error, Result};
use crate::instances::linalg::{hermitian_eigenvalues, hermiticity_defect, kraus_slices, CMatrix};
use crate::instances::matrix::{ComplexMatrices, MatMorphism, Matrix};
use crate::object::{words_up_to, ObjectWord};

type CMor = MatMorphism<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(f, f†)_E : (A, A) → (B, B)`.
pub fn dagger_comb(b: &ComplexMatrices, env: ObjectWord, f: CMor) -> Result<CombRep<CMor>> {
    let top = b.dagger(&f).ok_or(Error::NotDaggerBackend(b.kind()))?;
    CombRep::new(b, env, f, top)
}

/// The top half is the dagger of the bottom half, within tolerance.
pub fn is_dagger_comb(b: &ComplexMatrices, c: &CombRep<CMor>) -> bool {
    b.dagger(&c.bottom).is_some_and(|fd| b.equal(&fd, &c.top))
}

#[derive(Debug, Clone)]
pub struct CpmMorphism {
    pub dom: ObjectWord,
    pub cod: ObjectWord,
    pub dom_dim: usize,
    pub cod_dim: usize,
    /// `dim(B)² × dim(A)²`
    pub transfer: CMatrix,
}

pub fn to_cpm(b: &ComplexMatrices, d: &CombRep<CMor>) -> Result<CpmMorphism> {
    if !is_dagger_comb(b, d) {
        return Err(Error::UnsupportedShape("top half is not the dagger of the bottom half".into()));
    }
    let slices = kraus_slices(b, &d.bottom, &d.env)?;
    let (da, db) = (b.dim(&d.a), b.dim(&d.b));
    let mut transfer = CMatrix::zeros(db * db, da * da);
    for k in &slices {
        transfer = transfer.add(&k.conj().kron(k));
    }
    Ok(CpmMorphism { dom: d.a.clone(), cod: d.b.clone(), dom_dim: da, cod_dim: db, transfer })
}

/// `first`, then `second`.
pub fn cpm_compose(first: &CpmMorphism, second: &CpmMorphism) -> Result<CpmMorphism> {
    if first.cod_dim != second.dom_dim {
        return Err(Error::mismatch("cpm compose", &first.cod, &second.dom));
    }
    Ok(CpmMorphism {
        dom: first.dom.clone(),
        cod: second.cod.clone(),
        dom_dim: first.dom_dim,
        cod_dim: second.cod_dim,
        transfer: second.transfer.mul(&first.transfer),
    })
}

/// Tensor of transfers, with the doubled wires regrouped so the result acts
/// on vectorised density matrices of `A₁ ⊗ A₂`.
pub fn cpm_tensor(m1: &CpmMorphism, m2: &CpmMorphism) -> CpmMorphism {
    let (a1, a2, b1, b2) = (m1.dom_dim, m2.dom_dim, m1.cod_dim, m2.cod_dim);
    let (a, bb) = (a1 * a2, b1 * b2);
    let transfer = CMatrix::from_fn(bb * bb, a * a, |row, col| {
        let (k, l) = (row / bb, row % bb);
        let (i, j) = (col / a, col % a);
        let (k1, k2, l1, l2) = (k / b2, k % b2, l / b2, l % b2);
        let (i1, i2, j1, j2) = (i / a2, i % a2, j / a2, j % a2);
        m1.transfer.get(k1 * b1 + l1, i1 * a1 + j1) * m2.transfer.get(k2 * b2 + l2, i2 * a2 + j2)
    });
    CpmMorphism { dom: m1.dom.tensor(&m2.dom), cod: m1.cod.tensor(&m2.cod), dom_dim: a, cod_dim: bb, transfer }
}

pub fn choi_matrix(m: &CpmMorphism) -> CMatrix {
    let (da, db) = (m.dom_dim, m.cod_dim);
    CMatrix::from_fn(da * db, da * db, |r, s| {
        let (i, k) = (r / db, r % db);
        let (j, l) = (s / db, s % db);
        *m.transfer.get(k * db + l, i * da + j)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Positivity {
    pub completely_positive: bool,
    pub min_eigenvalue: f64,
    pub hermiticity_defect: f64,
}

/// Hermitian and positive semidefinite Choi matrix, within `tol`.
pub fn is_completely_positive(m: &CpmMorphism, tol: f64) -> Positivity {
    let j = choi_matrix(m);
    let defect = hermiticity_defect(&j);
    let min_eigenvalue = hermitian_eigenvalues(&j).first().copied().unwrap_or(0.0);
    Positivity {
        completely_positive: defect <= tol && min_eigenvalue >= -tol,
        min_eigenvalue,
        hermiticity_defect: defect,
    }
}

/// `Σ K†K = 1`: the map preserves the trace.
pub fn preserves_trace(m: &CpmMorphism, tol: f64) -> bool {
    // tr(Φ(|i⟩⟨j|)) = δ_ij
    (0..m.dom_dim).all(|i| {
        (0..m.dom_dim).all(|j| {
            let tr: Complex64 = (0..m.cod_dim).map(|k| m.transfer.get(k * m.cod_dim + k, i * m.dom_dim + j)).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            (tr - c(want, 0.0)).norm() <= tol
        })
    })
}

/// Equality of transfer matrices.
pub fn cpm_equal(b: &ComplexMatrices, d1: &CombRep<CMor>, d2: &CombRep<CMor>) -> Result<Decision<CMor>> {
    same_boundary(b, d1, d2)?;
    let t1 = to_cpm(b, d1)?;
    let t2 = to_cpm(b, d2)?;
    let tol = b.tolerance_value();
    let d = if t1.transfer.approx_eq(&t2.transfer, tol) {
        Decision::equivalent("transfer", true)
    } else {
        let probe = braid_probe(b, d1, d2)?;
        if b.equal(&probe.lhs, &probe.rhs) {
            Decision::distinct(
                "transfer",
                Witness::Note(format!(
                    "transfer matrices differ by {:.3e}",
                    t1.transfer.frobenius_distance(&t2.transfer)
                )),
            )
        } else {
            Decision::distinct("transfer", Witness::Probe(probe))
        }
    };
    Ok(d.with_tolerance(Some(tol)))
}

/// The vectors `e_j`, `e_j + e_k`, `e_j + i e_k` (`j < k`); their projectors
/// span all `n × n` matrices.
pub fn spanning_vectors(n: usize) -> Vec<Vec<Complex64>> {
    let mut out = Vec::new();
    for j in 0..n {
        let mut v = vec![c(0.0, 0.0); n];
        v[j] = c(1.0, 0.0);
        out.push(v);
    }
    for j in 0..n {
        for k in j + 1..n {
            for phase in [c(1.0, 0.0), c(0.0, 1.0)] {
                let mut v = vec![c(0.0, 0.0); n];
                v[j] = c(1.0, 0.0);
                v[k] = phase;
                out.push(v);
            }
        }
    }
    out
}

/// Compares the combs on positive fillers `λ = h† ∘ h` with `h = ⟨v| : C ⊗ B → I`
/// for side words `C = D` up to length `bound`. At `C = I` the projectors
/// `|v⟩⟨v|` span every filler, so agreement there already certifies
/// equivalence.
pub fn cpinf_equiv(
    b: &ComplexMatrices,
    d1: &CombRep<CMor>,
    d2: &CombRep<CMor>,
    bound: usize,
) -> Result<Decision<CMor>> {
    same_boundary(b, d1, d2)?;
    if !b.same_object(&d1.b, &d1.b_prime) {
        return Err(Error::UnsupportedShape("positive fillers need B = B′".into()));
    }
    let sides = words_up_to(&b.object_generators(), bound);
    let mut probes = 0;
    for side in &sides {
        let dom = side.tensor(&d1.b);
        let n = b.dim(&dom);
        for v in spanning_vectors(n) {
            let bra = Matrix::from_vec(1, n, v.iter().map(|x| x.conj()).collect());
            let h = b.morphism(&dom, &ObjectWord::unit(), bra)?;
            let filler = b.compose(&h, &b.dagger(&h).expect("dagger backend"))?;
            probes += 1;
            let lhs = extended_eval(b, d1, side, side, &filler)?;
            let rhs = extended_eval(b, d2, side, side, &filler)?;
            if !b.equal(&lhs, &rhs) {
                let probe = Probe { extensions: vec![(side.clone(), side.clone())], fillers: vec![filler], lhs, rhs };
                return Ok(Decision::distinct("positive", Witness::Probe(probe))
                    .with_coverage(Coverage { probes, objects: sides.len(), complete: true, states: 0 })
                    .with_tolerance(Some(b.tolerance_value())));
            }
        }
    }
    Ok(Decision::equivalent("positive", true)
        .with_coverage(Coverage { probes, objects: sides.len(), complete: true, states: 0 })
        .with_tolerance(Some(b.tolerance_value())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubit() -> (ComplexMatrices, ObjectWord) {
        (ComplexMatrices::new([("Q", 2)]).unwrap(), ObjectWord::single("Q"))
    }

    fn copy_comb(b: &ComplexMatrices, q: &ObjectWord) -> CombRep<CMor> {
        let m = CMatrix::from_fn(4, 2, |r, j| if r == 3 * j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        dagger_comb(b, q.clone(), b.morphism(q, &q.tensor(q), m).unwrap()).unwrap()
    }

    #[test]
    fn identity_transfer() {
        let (b, q) = qubit();
        let d = dagger_comb(&b, ObjectWord::unit(), b.identity(&q)).unwrap();
        let t = to_cpm(&b, &d).unwrap();
        assert!(t.transfer.approx_eq(&CMatrix::identity(4), 1e-12));
    }

    #[test]
    fn dephasing_transfer_is_diagonal() {
        let (b, q) = qubit();
        let t = to_cpm(&b, &copy_comb(&b, &q)).unwrap();
        let want = CMatrix::from_fn(4, 4, |i, j| if i == j && (i == 0 || i == 3) { c(1.0, 0.0) } else { c(0.0, 0.0) });
        assert!(t.transfer.approx_eq(&want, 1e-12));
        assert!(preserves_trace(&t, 1e-12));
        assert!(is_completely_positive(&t, 1e-9).completely_positive);
    }

    #[test]
    fn dephasing_differs_from_identity() {
        let (b, q) = qubit();
        let id = dagger_comb(
            &b,
            q.clone(),
            b.morphism(&q, &q.tensor(&q), {
                // |ψ⟩ ↦ |0⟩|ψ⟩
                CMatrix::from_fn(4, 2, |r, j| if r == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
            })
            .unwrap(),
        )
        .unwrap();
        let deph = copy_comb(&b, &q);
        let d = cpm_equal(&b, &id, &deph).unwrap();
        assert!(d.is_distinct());
        assert!(matches!(d.witness, Some(Witness::Probe(_))));
        let p = cpinf_equiv(&b, &id, &deph, 0).unwrap();
        assert!(p.is_distinct());
    }

    #[test]
    fn unitary_conjugation_transfer() {
        let (b, q) = qubit();
        let s = 0.5f64.sqrt();
        let u = CMatrix::from_vec(2, 2, vec![c(s, 0.0), c(0.0, s), c(0.0, s), c(s, 0.0)]);
        let d = dagger_comb(&b, ObjectWord::unit(), b.morphism(&q, &q, u.clone()).unwrap()).unwrap();
        let t = to_cpm(&b, &d).unwrap();
        assert!(t.transfer.approx_eq(&u.conj().kron(&u), 1e-12));
    }

    #[test]
    fn transpose_is_not_completely_positive() {
        let t = CMatrix::from_fn(4, 4, |r, s| {
            let (k, l) = (r / 2, r % 2);
            let (i, j) = (s / 2, s % 2);
            if k == j && l == i {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let m = CpmMorphism {
            dom: ObjectWord::single("Q"),
            cod: ObjectWord::single("Q"),
            dom_dim: 2,
            cod_dim: 2,
            transfer: t,
        };
        let p = is_completely_positive(&m, 1e-9);
        assert!(!p.completely_positive);
        assert!((p.min_eigenvalue + 1.0).abs() < 1e-9);
    }

    #[test]
    fn zero_map_is_completely_positive() {
        let m = CpmMorphism {
            dom: ObjectWord::single("Q"),
            cod: ObjectWord::single("Q"),
            dom_dim: 2,
            cod_dim: 2,
            transfer: CMatrix::zeros(4, 4),
        };
        assert!(is_completely_positive(&m, 1e-9).completely_positive);
    }

    #[test]
    fn spanning_vector_count() {
        assert_eq!(spanning_vectors(3).len(), 9);
    }
}
