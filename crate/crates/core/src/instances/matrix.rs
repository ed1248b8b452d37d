//! Matrices over a semiring: compact closed, with dagger over every scalar
//! type provided here (conjugate transpose over the complex numbers).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::Value;

use crate::backend::{Backend, Budget, Capabilities, CompactClosed, Enumeration};
use crate::error::{Error, Result};
use crate::object::{words_up_to, ObjectWord};

pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    const TAG: &'static str;
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn conj(&self) -> Self {
        self.clone()
    }
    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
    /// All scalars, when the semiring is finite.
    fn finite_values() -> Option<Vec<Self>> {
        None
    }
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> std::result::Result<Self, String>;
}

impl Scalar for bool {
    const TAG: &'static str = "boolean";
    const EXACT: bool = true;

    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
    fn finite_values() -> Option<Vec<Self>> {
        Some(vec![false, true])
    }
    fn to_json(&self) -> Value {
        Value::from(u8::from(*self))
    }
    fn from_json(v: &Value) -> std::result::Result<Self, String> {
        match v {
            Value::Bool(b) => Ok(*b),
            Value::Number(n) => match n.as_u64() {
                Some(0) => Ok(false),
                Some(1) => Ok(true),
                _ => Err(format!("boolean entry must be 0 or 1, got {n}")),
            },
            other => Err(format!("boolean entry must be 0/1 or true/false, got {other}")),
        }
    }
}

impl Scalar for Complex64 {
    const TAG: &'static str = "complex";
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }
    fn to_json(&self) -> Value {
        Value::Array(vec![json_f64(self.re), json_f64(self.im)])
    }
    fn from_json(v: &Value) -> std::result::Result<Self, String> {
        match v {
            Value::Number(n) => n.as_f64().map(|re| Complex64::new(re, 0.0)).ok_or_else(|| format!("bad number {n}")),
            Value::Array(parts) if parts.len() == 2 => {
                let re = parts[0].as_f64().ok_or("real part must be a number")?;
                let im = parts[1].as_f64().ok_or("imaginary part must be a number")?;
                Ok(Complex64::new(re, im))
            }
            other => Err(format!("complex entry must be a number or [re, im], got {other}")),
        }
    }
}

fn json_f64(x: f64) -> Value {
    // normalise -0.0 so rendering is stable
    let x = if x == 0.0 { 0.0 } else { x };
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

impl Scalar for Rational64 {
    const TAG: &'static str = "rational";
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational64::from_integer(0)
    }
    fn one() -> Self {
        Rational64::from_integer(1)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn to_json(&self) -> Value {
        if *self.denom() == 1 {
            Value::from(*self.numer())
        } else {
            Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }
    fn from_json(v: &Value) -> std::result::Result<Self, String> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Rational64::from_integer)
                .ok_or_else(|| format!("rational entry must be an integer or \"p/q\", got {n}")),
            Value::String(s) => {
                let (p, q) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator in {s}"))?;
                let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator in {s}"))?;
                if q == 0 {
                    return Err(format!("zero denominator in {s}"));
                }
                Ok(Rational64::new(p, q))
            }
            other => Err(format!("rational entry must be an integer or \"p/q\", got {other}")),
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    /// `self · rhs`
    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if *a == S::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = S::add(&out.data[idx], &S::mul(a, &rhs.data[k * rhs.cols + j]));
                }
            }
        }
        out
    }

    pub fn kron(&self, rhs: &Matrix<S>) -> Matrix<S> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if *a == S::zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.data[(i * rhs.rows + k) * cols + j * rhs.cols + l] = a.mul(&rhs.data[k * rhs.cols + l]);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<S> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(S::conj).collect() }
    }

    pub fn adjoint(&self) -> Matrix<S> {
        self.transpose().conj()
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn approx_eq(&self, rhs: &Matrix<S>, tol: f64) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Permutation matrix for `σ : X ⊗ Y → Y ⊗ X` with `dim X = dx`, `dim Y = dy`.
    pub fn swap(dx: usize, dy: usize) -> Matrix<S> {
        let n = dx * dy;
        let mut m = Matrix::zeros(n, n);
        for i in 0..dx {
            for j in 0..dy {
                m.set(j * dx + i, i * dy + j, S::one());
            }
        }
        m
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows).map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json()).collect())).collect(),
        )
    }

    pub fn from_json(rows: usize, cols: usize, v: &Value) -> std::result::Result<Self, String> {
        let outer = v.as_array().ok_or("matrix literal must be an array of rows")?;
        // a flat array is accepted for row vectors and column vectors
        let flat = outer.iter().all(|x| !x.is_array() || (S::TAG == "complex" && is_complex_pair(x)));
        if flat && (rows == 1 || cols == 1) && outer.len() == rows * cols {
            let data = outer.iter().map(S::from_json).collect::<std::result::Result<Vec<_>, _>>()?;
            return Ok(Matrix::from_vec(rows, cols, data));
        }
        if outer.len() != rows {
            return Err(format!("expected {rows} rows, found {}", outer.len()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in outer.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| format!("row {i} is not an array"))?;
            if row.len() != cols {
                return Err(format!("row {i}: expected {cols} entries, found {}", row.len()));
            }
            for x in row {
                data.push(S::from_json(x)?);
            }
        }
        Ok(Matrix::from_vec(rows, cols, data))
    }
}

fn is_complex_pair(v: &Value) -> bool {
    matches!(v, Value::Array(p) if p.len() == 2 && p.iter().all(Value::is_number))
}

impl Matrix<Complex64> {
    pub fn frobenius_distance(&self, rhs: &Matrix<Complex64>) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Matrix<Complex64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn sub(&self, rhs: &Matrix<Complex64>) -> Matrix<Complex64> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} ", self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols])).finish()
    }
}

/// A typed matrix: rows indexed by the codomain word, columns by the domain.
#[derive(Clone, PartialEq)]
pub struct MatMorphism<S> {
    dom: ObjectWord,
    cod: ObjectWord,
    m: Matrix<S>,
}

impl<S: Scalar> MatMorphism<S> {
    pub fn new(dom: ObjectWord, cod: ObjectWord, m: Matrix<S>) -> Self {
        MatMorphism { dom, cod, m }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn dom(&self) -> &ObjectWord {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectWord {
        &self.cod
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.m
    }
}

impl<S: Scalar> fmt::Debug for MatMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {:?}", self.dom, self.cod, self.m)
    }
}

#[derive(Clone, Debug)]
pub struct MatrixBackend<S: Scalar> {
    dims: BTreeMap<String, usize>,
    generators: BTreeMap<String, MatMorphism<S>>,
    tolerance: f64,
}

pub type BoolMatrices = MatrixBackend<bool>;
pub type ComplexMatrices = MatrixBackend<Complex64>;
pub type RationalMatrices = MatrixBackend<Rational64>;

impl<S: Scalar> MatrixBackend<S> {
    pub const DEFAULT_TOLERANCE: f64 = 1e-9;

    pub fn new<N: Into<String>>(objects: impl IntoIterator<Item = (N, usize)>) -> Result<Self> {
        let mut dims = BTreeMap::new();
        for (name, d) in objects {
            let name = name.into();
            if d == 0 {
                return Err(Error::InvalidObject(format!("object `{name}` must have positive dimension")));
            }
            dims.insert(name, d);
        }
        Ok(MatrixBackend { dims, generators: BTreeMap::new(), tolerance: Self::DEFAULT_TOLERANCE })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn tolerance_value(&self) -> f64 {
        self.tolerance
    }

    pub fn dim(&self, w: &ObjectWord) -> usize {
        w.factors().iter().map(|f| self.dims[f]).product()
    }

    pub fn add_generator(&mut self, name: &str, m: MatMorphism<S>) -> Result<()> {
        self.check_object(&m.dom)?;
        self.check_object(&m.cod)?;
        if m.m.rows() != self.dim(&m.cod) || m.m.cols() != self.dim(&m.dom) {
            return Err(Error::DimensionMismatch(format!(
                "generator `{name}` is {}x{} but {} -> {} needs {}x{}",
                m.m.rows(),
                m.m.cols(),
                m.dom,
                m.cod,
                self.dim(&m.cod),
                self.dim(&m.dom)
            )));
        }
        self.generators.insert(name.to_string(), m);
        Ok(())
    }

    pub fn morphism(&self, dom: &ObjectWord, cod: &ObjectWord, m: Matrix<S>) -> Result<MatMorphism<S>> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        if m.rows() != self.dim(cod) || m.cols() != self.dim(dom) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix cannot have type {} -> {}",
                m.rows(),
                m.cols(),
                dom,
                cod
            )));
        }
        Ok(MatMorphism::new(dom.clone(), cod.clone(), m))
    }

    fn all_matrices(&self, rows: usize, cols: usize, budget: &Budget) -> Enumeration<Matrix<S>> {
        let cells = rows * cols;
        match S::finite_values() {
            Some(values) => {
                let k = values.len();
                let total = (k as f64).powi(cells as i32);
                let complete = total <= budget.max_hom_size as f64;
                let count = if complete { total as usize } else { budget.max_hom_size };
                let mut out = Vec::with_capacity(count);
                let mut digits = vec![0usize; cells];
                for _ in 0..count {
                    out.push(Matrix::from_vec(rows, cols, digits.iter().map(|&d| values[d].clone()).collect()));
                    // little-endian counter over the last cell first
                    for d in digits.iter_mut().rev() {
                        *d += 1;
                        if *d < k {
                            break;
                        }
                        *d = 0;
                    }
                }
                Enumeration { items: out, complete }
            }
            None => {
                let mut out = vec![Matrix::zeros(rows, cols)];
                for i in 0..rows {
                    for j in 0..cols {
                        let mut m = Matrix::zeros(rows, cols);
                        m.set(i, j, S::one());
                        out.push(m);
                    }
                }
                out.truncate(budget.max_hom_size);
                Enumeration::truncated(out)
            }
        }
    }
}

impl<S: Scalar> Backend for MatrixBackend<S> {
    type Mor = MatMorphism<S>;

    fn kind(&self) -> &'static str {
        match S::TAG {
            "boolean" => "matrix-boolean",
            "complex" => "matrix-complex",
            _ => "matrix-rational",
        }
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities {
            cartesian: false,
            compact_closed: true,
            dagger: true,
            enumerable: true,
            commutative_symmetry: false,
            unitary: false,
            complex_scalars: S::TAG == "complex",
        }
    }

    fn tolerance(&self) -> Option<f64> {
        if S::EXACT {
            None
        } else {
            Some(self.tolerance)
        }
    }

    fn object_generators(&self) -> Vec<String> {
        self.dims.keys().cloned().collect()
    }

    fn dom(&self, m: &Self::Mor) -> ObjectWord {
        m.dom.clone()
    }

    fn cod(&self, m: &Self::Mor) -> ObjectWord {
        m.cod.clone()
    }

    fn identity(&self, x: &ObjectWord) -> Self::Mor {
        MatMorphism::new(x.clone(), x.clone(), Matrix::identity(self.dim(x)))
    }

    fn compose(&self, first: &Self::Mor, second: &Self::Mor) -> Result<Self::Mor> {
        if first.cod != second.dom {
            return Err(Error::mismatch("compose", &first.cod, &second.dom));
        }
        Ok(MatMorphism::new(first.dom.clone(), second.cod.clone(), second.m.mul(&first.m)))
    }

    fn tensor(&self, left: &Self::Mor, right: &Self::Mor) -> Self::Mor {
        MatMorphism::new(left.dom.tensor(&right.dom), left.cod.tensor(&right.cod), left.m.kron(&right.m))
    }

    fn symmetry(&self, x: &ObjectWord, y: &ObjectWord) -> Self::Mor {
        MatMorphism::new(x.tensor(y), y.tensor(x), Matrix::swap(self.dim(x), self.dim(y)))
    }

    fn equal(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        a.dom == b.dom && a.cod == b.cod && a.m.approx_eq(&b.m, self.tolerance)
    }

    fn generator(&self, name: &str) -> Result<Self::Mor> {
        self.generators.get(name).cloned().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn generator_type(&self, name: &str) -> Option<(ObjectWord, ObjectWord)> {
        self.generators.get(name).map(|m| (m.dom.clone(), m.cod.clone()))
    }

    fn generator_names(&self) -> Vec<String> {
        self.generators.keys().cloned().collect()
    }

    fn enumerate_objects(&self, budget: &Budget) -> Enumeration<ObjectWord> {
        Enumeration::truncated(words_up_to(&self.object_generators(), budget.max_word_len))
    }

    fn enumerate_hom(&self, x: &ObjectWord, y: &ObjectWord, budget: &Budget) -> Result<Enumeration<Self::Mor>> {
        self.check_object(x)?;
        self.check_object(y)?;
        let e = self.all_matrices(self.dim(y), self.dim(x), budget);
        Ok(Enumeration {
            items: e.items.into_iter().map(|m| MatMorphism::new(x.clone(), y.clone(), m)).collect(),
            complete: e.complete,
        })
    }

    fn compact(&self) -> Option<&dyn CompactClosed<Self::Mor>> {
        Some(self)
    }

    fn dagger(&self, m: &Self::Mor) -> Option<Self::Mor> {
        Some(MatMorphism::new(m.cod.clone(), m.dom.clone(), m.m.adjoint()))
    }

    fn conjugate(&self, m: &Self::Mor) -> Option<Self::Mor> {
        (S::TAG == "complex").then(|| MatMorphism::new(m.dom.clone(), m.cod.clone(), m.m.conj()))
    }

    fn render(&self, m: &Self::Mor) -> Value {
        m.m.to_json()
    }

    fn literal(&self, dom: &ObjectWord, cod: &ObjectWord, value: &Value) -> Result<Self::Mor> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        let m = Matrix::from_json(self.dim(cod), self.dim(dom), value).map_err(Error::InvalidLiteral)?;
        Ok(MatMorphism::new(dom.clone(), cod.clone(), m))
    }
}

/// Objects are self-dual: `X* = X`, with the cup the vectorised identity.
impl<S: Scalar> CompactClosed<MatMorphism<S>> for MatrixBackend<S> {
    fn dual(&self, x: &ObjectWord) -> ObjectWord {
        x.clone()
    }

    fn unit(&self, x: &ObjectWord) -> MatMorphism<S> {
        let d = self.dim(x);
        let mut m = Matrix::zeros(d * d, 1);
        for i in 0..d {
            m.set(i * d + i, 0, S::one());
        }
        MatMorphism::new(ObjectWord::unit(), x.tensor(x), m)
    }

    fn counit(&self, x: &ObjectWord) -> MatMorphism<S> {
        let u = self.unit(x);
        MatMorphism::new(x.tensor(x), ObjectWord::unit(), u.m.transpose())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::{compose_all, whisker_left, whisker_right};

    fn bools() -> BoolMatrices {
        BoolMatrices::new([("A", 2)]).unwrap()
    }

    #[test]
    fn boolean_two_by_two_hom_has_sixteen_elements() {
        let b = bools();
        let a = ObjectWord::single("A");
        let hom = b.enumerate_hom(&a, &a, &Budget::new(1)).unwrap();
        assert!(hom.complete);
        assert_eq!(hom.len(), 16);
        for (i, x) in hom.items.iter().enumerate() {
            for y in &hom.items[i + 1..] {
                assert!(!b.equal(x, y));
            }
        }
    }

    #[test]
    fn unit_hom_is_just_the_identity() {
        let b = bools();
        let hom = b.enumerate_hom(&ObjectWord::unit(), &ObjectWord::unit(), &Budget::new(1)).unwrap();
        // the Boolean semiring has one non-identity scalar: zero
        assert!(hom.items.iter().any(|m| b.equal(m, &b.identity(&ObjectWord::unit()))));
        assert_eq!(hom.len(), 2);
    }

    #[test]
    fn snake_equations() {
        let b = ComplexMatrices::new([("A", 2), ("B", 3)]).unwrap();
        for x in [ObjectWord::single("A"), ObjectWord::new(["A", "B"])] {
            let left =
                compose_all(&b, &[&whisker_left(&b, &x, &b.unit(&x)), &whisker_right(&b, &b.counit(&x), &x)]).unwrap();
            assert!(b.equal(&left, &b.identity(&x)));
            let right =
                compose_all(&b, &[&whisker_right(&b, &b.unit(&x), &x), &whisker_left(&b, &x, &b.counit(&x))]).unwrap();
            assert!(b.equal(&right, &b.identity(&x)));
        }
    }

    #[test]
    fn swap_is_an_involution() {
        let b = bools();
        let a = ObjectWord::single("A");
        let aa = a.tensor(&a);
        let s = b.symmetry(&a, &aa);
        let back = b.symmetry(&aa, &a);
        assert!(b.equal(&b.compose(&s, &back).unwrap(), &b.identity(&a.tensor(&aa))));
    }

    #[test]
    fn literal_round_trip() {
        let b = ComplexMatrices::new([("A", 2)]).unwrap();
        let a = ObjectWord::single("A");
        let m = Matrix::from_vec(
            2,
            2,
            vec![
                Complex64::new(0.5, -1.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(2.0, 0.25),
                Complex64::new(-3.0, 0.0),
            ],
        );
        let mor = b.morphism(&a, &a, m).unwrap();
        let back = b.literal(&a, &a, &b.render(&mor)).unwrap();
        assert!(b.equal(&mor, &back));
    }

    #[test]
    fn rational_entries_parse() {
        let b = RationalMatrices::new([("A", 2)]).unwrap();
        let a = ObjectWord::single("A");
        let v: Value = serde_json::from_str(r#"[["1/2", 0], [0, "-3/4"]]"#).unwrap();
        let m = b.literal(&a, &a, &v).unwrap();
        assert_eq!(*m.matrix().get(0, 0), Rational64::new(1, 2));
        assert_eq!(b.render(&m), v);
    }

    #[test]
    fn wrong_literal_shape_is_rejected() {
        let b = bools();
        let a = ObjectWord::single("A");
        let v: Value = serde_json::from_str("[[1, 0, 0], [0, 1, 0]]").unwrap();
        assert!(matches!(b.literal(&a, &a, &v), Err(Error::InvalidLiteral(_))));
    }
}
