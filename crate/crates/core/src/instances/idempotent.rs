//! The free commutative monoidal category on one object `A` and a set of
//! idempotents `e : A → A`.
//!
//! Commutativity means `σ = id`, and naturality of `σ` then forces
//! `e ⊗ 1 = 1 ⊗ e`. Consequently on `Aⁿ` with `n ≥ 2` all generators commute
//! and a morphism is just the *set* of idempotents applied, while on `A` a
//! morphism is a word with no letter repeated twice in a row. A strand vector
//! is therefore only meaningful up to this collapse; [`IdempotentBackend::strands`]
//! builds the canonical form from one.

use std::fmt;

use serde_json::Value;

use crate::backend::{Backend, Budget, Capabilities, Enumeration};
use crate::error::{Error, Result};
use crate::object::ObjectWord;

pub const OBJECT: &str = "A";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IdemMorphism {
    arity: usize,
    /// arity 1: reduced word in application order; arity ≥ 2: sorted set;
    /// arity 0: empty
    letters: Vec<u16>,
}

impl IdemMorphism {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    fn canonical(arity: usize, mut letters: Vec<u16>) -> Self {
        match arity {
            0 => letters.clear(),
            1 => letters.dedup(),
            _ => {
                letters.sort_unstable();
                letters.dedup();
            }
        }
        IdemMorphism { arity, letters }
    }
}

impl fmt::Debug for IdemMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A^{}:{:?}", self.arity, self.letters)
    }
}

#[derive(Clone, Debug)]
pub struct IdempotentBackend {
    names: Vec<String>,
}

impl IdempotentBackend {
    pub fn new<N: Into<String>>(idempotents: impl IntoIterator<Item = N>) -> Result<Self> {
        let names: Vec<String> = idempotents.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidLiteral("at least one idempotent is required".into()));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidLiteral("idempotent names must be distinct".into()));
        }
        Ok(IdempotentBackend { names })
    }

    /// The instance with the single idempotent `f`.
    pub fn single() -> Self {
        IdempotentBackend { names: vec!["f".into()] }
    }

    pub fn object(n: usize) -> ObjectWord {
        ObjectWord::power(OBJECT, n)
    }

    fn letter(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    /// Tensor of single-strand morphisms; `"id"` is the identity strand and
    /// other entries are `;`-separated idempotent names applied in order.
    pub fn strands(&self, strands: &[&str]) -> Result<IdemMorphism> {
        let mut acc = self.identity(&ObjectWord::unit());
        for s in strands {
            let mut word = Vec::new();
            if *s != "id" {
                for part in s.split(';') {
                    let part = part.trim();
                    word.push(self.letter(part).ok_or_else(|| Error::UnknownGenerator(part.to_string()))?);
                }
            }
            acc = self.tensor(&acc, &IdemMorphism::canonical(1, word));
        }
        Ok(acc)
    }

    fn arity_of(&self, w: &ObjectWord) -> usize {
        w.len()
    }

    fn reduced_words(&self, max_len: usize, cap: usize) -> Vec<Vec<u16>> {
        let k = self.names.len() as u16;
        let mut out = vec![Vec::new()];
        let mut layer: Vec<Vec<u16>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in 0..k {
                    if w.last() != Some(&l) {
                        let mut v = w.clone();
                        v.push(l);
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
            if out.len() >= cap {
                break;
            }
        }
        out.truncate(cap);
        out
    }
}

impl Backend for IdempotentBackend {
    type Mor = IdemMorphism;

    fn kind(&self) -> &'static str {
        "idempotent"
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities { enumerable: true, commutative_symmetry: true, ..Capabilities::default() }
    }

    fn object_generators(&self) -> Vec<String> {
        vec![OBJECT.to_string()]
    }

    fn normalize(&self, w: &ObjectWord) -> ObjectWord {
        w.sorted()
    }

    fn split_prefix(&self, word: &ObjectWord, prefix: &ObjectWord) -> Option<ObjectWord> {
        word.remove_multiset(prefix)
    }

    fn dom(&self, m: &Self::Mor) -> ObjectWord {
        Self::object(m.arity)
    }

    fn cod(&self, m: &Self::Mor) -> ObjectWord {
        Self::object(m.arity)
    }

    fn identity(&self, x: &ObjectWord) -> Self::Mor {
        IdemMorphism { arity: self.arity_of(x), letters: Vec::new() }
    }

    fn compose(&self, first: &Self::Mor, second: &Self::Mor) -> Result<Self::Mor> {
        if first.arity != second.arity {
            return Err(Error::mismatch("compose", &Self::object(first.arity), &Self::object(second.arity)));
        }
        let mut letters = first.letters.clone();
        letters.extend_from_slice(&second.letters);
        Ok(IdemMorphism::canonical(first.arity, letters))
    }

    fn tensor(&self, left: &Self::Mor, right: &Self::Mor) -> Self::Mor {
        let arity = left.arity + right.arity;
        let mut letters = left.letters.clone();
        letters.extend_from_slice(&right.letters);
        if arity == 1 {
            // one side is the unit, so the other side's word is kept as is
            letters = if left.arity == 1 { left.letters.clone() } else { right.letters.clone() };
        }
        IdemMorphism::canonical(arity, letters)
    }

    fn symmetry(&self, x: &ObjectWord, y: &ObjectWord) -> Self::Mor {
        self.identity(&x.tensor(y))
    }

    fn equal(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        a == b
    }

    fn generator(&self, name: &str) -> Result<Self::Mor> {
        let l = self.letter(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(IdemMorphism { arity: 1, letters: vec![l] })
    }

    fn generator_type(&self, name: &str) -> Option<(ObjectWord, ObjectWord)> {
        self.letter(name).map(|_| (Self::object(1), Self::object(1)))
    }

    fn generator_names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn enumerate_objects(&self, budget: &Budget) -> Enumeration<ObjectWord> {
        Enumeration::truncated((0..=budget.max_word_len).map(Self::object).collect())
    }

    fn enumerate_hom(&self, x: &ObjectWord, y: &ObjectWord, budget: &Budget) -> Result<Enumeration<Self::Mor>> {
        self.check_object(x)?;
        self.check_object(y)?;
        let (n, m) = (x.len(), y.len());
        if n != m {
            return Ok(Enumeration::complete(Vec::new()));
        }
        let k = self.names.len();
        match n {
            0 => Ok(Enumeration::complete(vec![self.identity(x)])),
            1 if k == 1 => {
                Ok(Enumeration::complete(vec![self.identity(x), IdemMorphism { arity: 1, letters: vec![0] }]))
            }
            1 => {
                let words = self.reduced_words(budget.max_word_len.max(2), budget.max_hom_size);
                Ok(Enumeration::truncated(words.into_iter().map(|w| IdemMorphism { arity: 1, letters: w }).collect()))
            }
            _ => {
                let total = 1usize << k.min(usize::BITS as usize - 1);
                let complete = total <= budget.max_hom_size;
                let count = total.min(budget.max_hom_size);
                let mut subsets: Vec<Vec<u16>> =
                    (0..count).map(|mask| (0..k as u16).filter(|i| mask & (1 << i) != 0).collect()).collect();
                subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
                Ok(Enumeration {
                    items: subsets.into_iter().map(|s| IdemMorphism { arity: n, letters: s }).collect(),
                    complete,
                })
            }
        }
    }

    fn environments(&self, a: &ObjectWord, b: &ObjectWord, _budget: &Budget) -> Enumeration<ObjectWord> {
        match a.len().checked_sub(b.len()) {
            Some(e) => Enumeration::complete(vec![Self::object(e)]),
            None => Enumeration::complete(Vec::new()),
        }
    }

    /// With one idempotent every `hom(Aⁿ, Aⁿ)`, `n ≥ 1`, is `{1, e}` and
    /// `- ⊗ 1_A` is an isomorphism between them, so extensions longer than two
    /// repeat shorter ones.
    fn probe_saturation(&self) -> Option<usize> {
        (self.names.len() == 1).then_some(2)
    }

    fn render(&self, m: &Self::Mor) -> Value {
        Value::Array(m.letters.iter().map(|&l| Value::from(self.names[l as usize].clone())).collect())
    }

    fn literal(&self, dom: &ObjectWord, cod: &ObjectWord, value: &Value) -> Result<Self::Mor> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        if dom.len() != cod.len() {
            return Err(Error::InvalidLiteral(format!("no morphisms {dom} -> {cod}")));
        }
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidLiteral("idempotent literal must be an array of names".into()))?;
        let mut letters = Vec::new();
        for v in arr {
            let name = v
                .as_str()
                .ok_or_else(|| Error::InvalidLiteral("idempotent literal must be an array of names".into()))?;
            letters.push(self.letter(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?);
        }
        if dom.is_unit() && !letters.is_empty() {
            return Err(Error::InvalidLiteral("the unit object carries no idempotents".into()));
        }
        Ok(IdemMorphism::canonical(dom.len(), letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endomorphisms_of_a() {
        let b = IdempotentBackend::single();
        let a = IdempotentBackend::object(1);
        let hom = b.enumerate_hom(&a, &a, &Budget::new(3)).unwrap();
        assert!(hom.complete);
        assert_eq!(hom.items, vec![b.identity(&a), b.generator("f").unwrap()]);
    }

    #[test]
    fn unit_hom_is_trivial() {
        let b = IdempotentBackend::single();
        let i = ObjectWord::unit();
        let hom = b.enumerate_hom(&i, &i, &Budget::new(3)).unwrap();
        assert!(hom.complete);
        assert_eq!(hom.items, vec![b.identity(&i)]);
    }

    #[test]
    fn no_morphisms_between_different_arities() {
        let b = IdempotentBackend::single();
        let hom =
            b.enumerate_hom(&IdempotentBackend::object(1), &IdempotentBackend::object(2), &Budget::new(3)).unwrap();
        assert!(hom.complete && hom.is_empty());
    }

    #[test]
    fn strands_commute_and_collapse() {
        let b = IdempotentBackend::single();
        let x = b.strands(&["f", "id"]).unwrap();
        let y = b.strands(&["id", "f"]).unwrap();
        assert!(b.equal(&x, &y));
        let both = b.strands(&["f", "f"]).unwrap();
        assert!(b.equal(&b.compose(&x, &y).unwrap(), &both));
        assert!(b.equal(&b.compose(&x, &y).unwrap(), &b.compose(&y, &x).unwrap()));
    }

    #[test]
    fn two_idempotents_commute_only_beside_another_strand() {
        let b = IdempotentBackend::new(["f", "h"]).unwrap();
        let fh = b.strands(&["f;h"]).unwrap();
        let hf = b.strands(&["h;f"]).unwrap();
        assert!(!b.equal(&fh, &hf));
        let a = IdempotentBackend::object(1);
        let fh1 = b.tensor(&fh, &b.identity(&a));
        let hf1 = b.tensor(&hf, &b.identity(&a));
        assert!(b.equal(&fh1, &hf1));
    }

    #[test]
    fn symmetry_is_natural() {
        let b = IdempotentBackend::new(["f", "h"]).unwrap();
        let a = IdempotentBackend::object(1);
        let words = b.enumerate_hom(&a, &a, &Budget::new(2)).unwrap().items;
        for m in &words {
            for n in &words {
                let lhs = b.compose(&b.tensor(m, n), &b.symmetry(&a, &a)).unwrap();
                let rhs = b.compose(&b.symmetry(&a, &a), &b.tensor(n, m)).unwrap();
                assert!(b.equal(&lhs, &rhs));
            }
        }
    }
}
