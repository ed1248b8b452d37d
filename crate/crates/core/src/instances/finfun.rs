use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value;

use crate::backend::{Backend, Budget, Capabilities, Cartesian, Enumeration};
use crate::comb::StrictFunctor;
use crate::error::{Error, Result};
use crate::instances::matrix::{BoolMatrices, MatMorphism, Matrix};
use crate::object::{words_up_to, ObjectWord};

/// A function between finite sets, as a table from domain index to codomain
/// index. Elements of `X ⊗ Y` are indexed with the first factor most
/// significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFunMorphism {
    dom: ObjectWord,
    cod: ObjectWord,
    table: Vec<usize>,
}

impl FinFunMorphism {
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn dom(&self) -> &ObjectWord {
        &self.dom
    }

    pub fn cod(&self) -> &ObjectWord {
        &self.cod
    }
}

impl fmt::Debug for FinFunMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {:?}", self.dom, self.cod, self.table)
    }
}

#[derive(Clone, Debug)]
pub struct FinFunBackend {
    sizes: BTreeMap<String, usize>,
    generators: BTreeMap<String, FinFunMorphism>,
}

impl FinFunBackend {
    pub fn new<N: Into<String>>(objects: impl IntoIterator<Item = (N, usize)>) -> Result<Self> {
        Ok(FinFunBackend {
            sizes: objects.into_iter().map(|(n, s)| (n.into(), s)).collect(),
            generators: BTreeMap::new(),
        })
    }

    pub fn size(&self, w: &ObjectWord) -> usize {
        w.factors().iter().map(|f| self.sizes[f]).product()
    }

    pub fn function(&self, dom: &ObjectWord, cod: &ObjectWord, table: Vec<usize>) -> Result<FinFunMorphism> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        let n = self.size(dom);
        let m = self.size(cod);
        if table.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "function table has {} entries but {dom} has {n} elements",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v >= m) {
            return Err(Error::DimensionMismatch(format!("value {bad} is outside {cod} ({m} elements)")));
        }
        Ok(FinFunMorphism { dom: dom.clone(), cod: cod.clone(), table })
    }

    pub fn add_generator(&mut self, name: &str, f: FinFunMorphism) -> Result<()> {
        self.function(&f.dom, &f.cod, f.table.clone())?;
        self.generators.insert(name.to_string(), f);
        Ok(())
    }

    pub fn apply(&self, f: &FinFunMorphism, x: usize) -> usize {
        f.table[x]
    }
}

impl Backend for FinFunBackend {
    type Mor = FinFunMorphism;

    fn kind(&self) -> &'static str {
        "finfun"
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities { cartesian: true, enumerable: true, ..Capabilities::default() }
    }

    fn object_generators(&self) -> Vec<String> {
        self.sizes.keys().cloned().collect()
    }

    fn dom(&self, m: &Self::Mor) -> ObjectWord {
        m.dom.clone()
    }

    fn cod(&self, m: &Self::Mor) -> ObjectWord {
        m.cod.clone()
    }

    fn identity(&self, x: &ObjectWord) -> Self::Mor {
        FinFunMorphism { dom: x.clone(), cod: x.clone(), table: (0..self.size(x)).collect() }
    }

    fn compose(&self, first: &Self::Mor, second: &Self::Mor) -> Result<Self::Mor> {
        if first.cod != second.dom {
            return Err(Error::mismatch("compose", &first.cod, &second.dom));
        }
        Ok(FinFunMorphism {
            dom: first.dom.clone(),
            cod: second.cod.clone(),
            table: first.table.iter().map(|&y| second.table[y]).collect(),
        })
    }

    fn tensor(&self, left: &Self::Mor, right: &Self::Mor) -> Self::Mor {
        let rc = self.size(&right.cod);
        let mut table = Vec::with_capacity(left.table.len() * right.table.len());
        for &a in &left.table {
            for &b in &right.table {
                table.push(a * rc + b);
            }
        }
        FinFunMorphism { dom: left.dom.tensor(&right.dom), cod: left.cod.tensor(&right.cod), table }
    }

    fn symmetry(&self, x: &ObjectWord, y: &ObjectWord) -> Self::Mor {
        let (dx, dy) = (self.size(x), self.size(y));
        let mut table = vec![0; dx * dy];
        for i in 0..dx {
            for j in 0..dy {
                table[i * dy + j] = j * dx + i;
            }
        }
        FinFunMorphism { dom: x.tensor(y), cod: y.tensor(x), table }
    }

    fn equal(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        a == b
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
        let n = self.size(x);
        let m = self.size(y);
        if m == 0 && n > 0 {
            return Ok(Enumeration::complete(Vec::new()));
        }
        let total = (m as f64).powi(n as i32);
        let complete = total <= budget.max_hom_size as f64;
        let count = if complete { total as usize } else { budget.max_hom_size };
        let mut out = Vec::with_capacity(count);
        let mut digits = vec![0usize; n];
        for _ in 0..count {
            out.push(FinFunMorphism { dom: x.clone(), cod: y.clone(), table: digits.clone() });
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < m {
                    break;
                }
                *d = 0;
            }
        }
        Ok(Enumeration { items: out, complete })
    }

    fn cartesian(&self) -> Option<&dyn Cartesian<Self::Mor>> {
        Some(self)
    }

    fn render(&self, m: &Self::Mor) -> Value {
        Value::Array(m.table.iter().map(|&v| Value::from(v)).collect())
    }

    fn literal(&self, dom: &ObjectWord, cod: &ObjectWord, value: &Value) -> Result<Self::Mor> {
        let arr = value.as_array().ok_or_else(|| Error::InvalidLiteral("function table must be an array".into()))?;
        let table = arr
            .iter()
            .map(|v| v.as_u64().map(|x| x as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidLiteral("function table entries must be naturals".into()))?;
        self.function(dom, cod, table).map_err(|e| Error::InvalidLiteral(e.to_string()))
    }
}

impl Cartesian<FinFunMorphism> for FinFunBackend {
    fn copy(&self, x: &ObjectWord) -> FinFunMorphism {
        let d = self.size(x);
        FinFunMorphism { dom: x.clone(), cod: x.tensor(x), table: (0..d).map(|i| i * d + i).collect() }
    }

    fn delete(&self, x: &ObjectWord) -> FinFunMorphism {
        FinFunMorphism { dom: x.clone(), cod: ObjectWord::unit(), table: vec![0; self.size(x)] }
    }

    fn project_left(&self, x: &ObjectWord, y: &ObjectWord) -> FinFunMorphism {
        let dy = self.size(y);
        FinFunMorphism { dom: x.tensor(y), cod: x.clone(), table: (0..self.size(x) * dy).map(|i| i / dy).collect() }
    }

    fn project_right(&self, x: &ObjectWord, y: &ObjectWord) -> FinFunMorphism {
        let dy = self.size(y);
        FinFunMorphism { dom: x.tensor(y), cod: y.clone(), table: (0..self.size(x) * dy).map(|i| i % dy).collect() }
    }

    fn pair(&self, left: &FinFunMorphism, right: &FinFunMorphism) -> Result<FinFunMorphism> {
        if left.dom != right.dom {
            return Err(Error::mismatch("pair", &left.dom, &right.dom));
        }
        let dz = self.size(&right.cod);
        Ok(FinFunMorphism {
            dom: left.dom.clone(),
            cod: left.cod.tensor(&right.cod),
            table: left.table.iter().zip(&right.table).map(|(a, b)| a * dz + b).collect(),
        })
    }

    fn inhabitant(&self, x: &ObjectWord) -> Option<FinFunMorphism> {
        (self.size(x) > 0).then(|| FinFunMorphism { dom: ObjectWord::unit(), cod: x.clone(), table: vec![0] })
    }
}

/// The linearization `FinFun → Mat(𝔹)`: a set of size `n` becomes dimension
/// `n`, a function becomes its 0/1 graph matrix.
pub struct Linearization {
    source: FinFunBackend,
}

impl Linearization {
    pub fn new(source: &FinFunBackend) -> Self {
        Linearization { source: source.clone() }
    }

    /// The Boolean matrix backend with the same object generators.
    pub fn target(&self) -> Result<BoolMatrices> {
        if let Some((name, _)) = self.source.sizes.iter().find(|(_, &s)| s == 0) {
            return Err(Error::IllTypedFunctor(format!("empty set `{name}` has no matrix image")));
        }
        BoolMatrices::new(self.source.sizes.iter().map(|(n, &s)| (n.clone(), s)))
    }
}

impl StrictFunctor<FinFunBackend, BoolMatrices> for Linearization {
    fn map_object(&self, w: &ObjectWord) -> ObjectWord {
        w.clone()
    }

    fn map_morphism(&self, m: &FinFunMorphism) -> Result<MatMorphism<bool>> {
        let rows = self.source.size(&m.cod);
        let mut out = Matrix::zeros(rows, m.table.len());
        for (x, &y) in m.table.iter().enumerate() {
            out.set(y, x, true);
        }
        Ok(MatMorphism::new(m.dom.clone(), m.cod.clone(), out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn backend() -> FinFunBackend {
        FinFunBackend::new([("A", 2), ("B", 3)]).unwrap()
    }

    #[test]
    fn projections_of_pairing() {
        let b = backend();
        let a = ObjectWord::single("A");
        let bb = ObjectWord::single("B");
        let budget = Budget::new(1);
        let f_s = b.enumerate_hom(&a, &bb, &budget).unwrap();
        let g_s = b.enumerate_hom(&a, &a, &budget).unwrap();
        for f in &f_s.items {
            for g in &g_s.items {
                let p = b.pair(f, g).unwrap();
                assert_eq!(b.compose(&p, &b.project_left(&bb, &a)).unwrap(), *f);
                assert_eq!(b.compose(&p, &b.project_right(&bb, &a)).unwrap(), *g);
            }
        }
    }

    #[test]
    fn delete_is_natural() {
        let b = backend();
        let a = ObjectWord::single("A");
        let bb = ObjectWord::single("B");
        for m in b.enumerate_hom(&bb, &a, &Budget::new(1)).unwrap().items {
            assert_eq!(b.compose(&m, &b.delete(&a)).unwrap(), b.delete(&bb));
        }
    }

    #[test]
    fn copy_then_project() {
        let b = backend();
        let bb = ObjectWord::single("B");
        let c = b.copy(&bb);
        assert_eq!(b.compose(&c, &b.project_left(&bb, &bb)).unwrap(), b.identity(&bb));
        assert_eq!(b.compose(&c, &b.project_right(&bb, &bb)).unwrap(), b.identity(&bb));
    }

    #[test]
    fn empty_object_has_no_inhabitant() {
        let b = FinFunBackend::new([("Z", 0)]).unwrap();
        assert!(b.inhabitant(&ObjectWord::single("Z")).is_none());
        assert!(b.inhabitant(&ObjectWord::unit()).is_some());
    }

    #[test]
    fn linearization_is_functorial() {
        let b = backend();
        let lin = Linearization::new(&b);
        let t = lin.target().unwrap();
        let a = ObjectWord::single("A");
        let bb = ObjectWord::single("B");
        let budget = Budget::new(1);
        for f in b.enumerate_hom(&a, &bb, &budget).unwrap().items {
            for g in b.enumerate_hom(&bb, &a, &budget).unwrap().items {
                let lhs = lin.map_morphism(&b.compose(&f, &g).unwrap()).unwrap();
                let rhs = t.compose(&lin.map_morphism(&f).unwrap(), &lin.map_morphism(&g).unwrap()).unwrap();
                assert!(t.equal(&lhs, &rhs));
                let lt = lin.map_morphism(&b.tensor(&f, &g)).unwrap();
                let rt = t.tensor(&lin.map_morphism(&f).unwrap(), &lin.map_morphism(&g).unwrap());
                assert!(t.equal(&lt, &rt));
            }
        }
        let sym = lin.map_morphism(&b.symmetry(&a, &bb)).unwrap();
        assert!(t.equal(&sym, &t.symmetry(&a, &bb)));
    }

    #[test]
    fn hom_counts() {
        let b = backend();
        let e = b.enumerate_hom(&ObjectWord::single("A"), &ObjectWord::single("B"), &Budget::new(1)).unwrap();
        assert!(e.complete);
        assert_eq!(e.len(), 9);
    }
}
