//! Finite-dimensional Hilbert spaces and unitary maps.
//!
//! Morphisms are the same complex matrices as in [`ComplexMatrices`]; every
//! generator and literal is checked to be unitary, and the structural maps
//! (identities, symmetries, tensors and composites of unitaries) stay unitary.

use num_complex::Complex64;
use serde_json::Value;

use crate::backend::{Backend, Budget, Capabilities, Enumeration};
use crate::error::{Error, Result};
use crate::instances::linalg::is_unitary;
use crate::instances::matrix::{ComplexMatrices, MatMorphism, Matrix};
use crate::object::ObjectWord;

#[derive(Clone, Debug)]
pub struct UnitaryBackend {
    inner: ComplexMatrices,
}

impl UnitaryBackend {
    pub fn new<N: Into<String>>(objects: impl IntoIterator<Item = (N, usize)>) -> Result<Self> {
        Ok(UnitaryBackend { inner: ComplexMatrices::new(objects)? })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.inner = self.inner.with_tolerance(tol);
        self
    }

    pub fn dim(&self, w: &ObjectWord) -> usize {
        self.inner.dim(w)
    }

    pub fn matrices(&self) -> &ComplexMatrices {
        &self.inner
    }

    pub fn unitary(&self, dom: &ObjectWord, cod: &ObjectWord, m: Matrix<Complex64>) -> Result<MatMorphism<Complex64>> {
        let mor = self.inner.morphism(dom, cod, m)?;
        if !is_unitary(mor.matrix(), self.inner.tolerance_value()) {
            return Err(Error::InvalidLiteral(format!("matrix {dom} -> {cod} is not unitary")));
        }
        Ok(mor)
    }

    pub fn add_generator(&mut self, name: &str, m: MatMorphism<Complex64>) -> Result<()> {
        let checked = self.unitary(m.dom(), m.cod(), m.matrix().clone())?;
        self.inner.add_generator(name, checked)
    }
}

impl Backend for UnitaryBackend {
    type Mor = MatMorphism<Complex64>;

    fn kind(&self) -> &'static str {
        "unitary"
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities { dagger: true, unitary: true, complex_scalars: true, ..Capabilities::default() }
    }

    fn tolerance(&self) -> Option<f64> {
        self.inner.tolerance()
    }

    fn object_generators(&self) -> Vec<String> {
        self.inner.object_generators()
    }

    fn dom(&self, m: &Self::Mor) -> ObjectWord {
        m.dom().clone()
    }

    fn cod(&self, m: &Self::Mor) -> ObjectWord {
        m.cod().clone()
    }

    fn identity(&self, x: &ObjectWord) -> Self::Mor {
        self.inner.identity(x)
    }

    fn compose(&self, first: &Self::Mor, second: &Self::Mor) -> Result<Self::Mor> {
        self.inner.compose(first, second)
    }

    fn tensor(&self, left: &Self::Mor, right: &Self::Mor) -> Self::Mor {
        self.inner.tensor(left, right)
    }

    fn symmetry(&self, x: &ObjectWord, y: &ObjectWord) -> Self::Mor {
        self.inner.symmetry(x, y)
    }

    fn equal(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        self.inner.equal(a, b)
    }

    fn generator(&self, name: &str) -> Result<Self::Mor> {
        self.inner.generator(name)
    }

    fn generator_type(&self, name: &str) -> Option<(ObjectWord, ObjectWord)> {
        self.inner.generator_type(name)
    }

    fn generator_names(&self) -> Vec<String> {
        self.inner.generator_names()
    }

    fn enumerate_objects(&self, budget: &Budget) -> Enumeration<ObjectWord> {
        self.inner.enumerate_objects(budget)
    }

    /// Only the permutation matrices; the unitary group is infinite.
    fn enumerate_hom(&self, x: &ObjectWord, y: &ObjectWord, budget: &Budget) -> Result<Enumeration<Self::Mor>> {
        self.check_object(x)?;
        self.check_object(y)?;
        let n = self.dim(x);
        if n != self.dim(y) {
            return Ok(Enumeration::complete(Vec::new()));
        }
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            if out.len() < budget.max_hom_size {
                let m =
                    Matrix::from_fn(
                        n,
                        n,
                        |i, j| {
                            if p[j] == i {
                                Complex64::new(1.0, 0.0)
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        },
                    );
                out.push(MatMorphism::new(x.clone(), y.clone(), m));
            }
        });
        Ok(Enumeration::truncated(out))
    }

    fn dagger(&self, m: &Self::Mor) -> Option<Self::Mor> {
        self.inner.dagger(m)
    }

    fn conjugate(&self, m: &Self::Mor) -> Option<Self::Mor> {
        self.inner.conjugate(m)
    }

    fn render(&self, m: &Self::Mor) -> Value {
        self.inner.render(m)
    }

    fn literal(&self, dom: &ObjectWord, cod: &ObjectWord, value: &Value) -> Result<Self::Mor> {
        let m = self.inner.literal(dom, cod, value)?;
        self.unitary(dom, cod, m.into_matrix())
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}
