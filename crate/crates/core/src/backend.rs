//! The contract every base category implements.
//!
//! Backends are strict symmetric monoidal: objects are [`ObjectWord`]s and the
//! tensor of objects is concatenation (after [`Backend::normalize`]). Composition
//! is written in diagrammatic order, `compose(first, second)` meaning "`first`,
//! then `second`".

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::object::ObjectWord;

/// Structure a backend advertises. Deciders use these flags to pick and certify
/// strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Capabilities {
    pub cartesian: bool,
    pub compact_closed: bool,
    pub dagger: bool,
    pub enumerable: bool,
    pub commutative_symmetry: bool,
    /// Every morphism is unitary (all maps invertible, dagger = inverse).
    pub unitary: bool,
    /// Scalars are complex numbers and [`Backend::conjugate`] is available.
    pub complex_scalars: bool,
}

/// Enumeration budget. `max_word_len` caps object words, `max_hom_size` caps
/// the number of morphisms returned for one hom-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_word_len: usize,
    pub max_hom_size: usize,
}

impl Budget {
    pub const DEFAULT_HOM_SIZE: usize = 4096;

    pub fn new(bound: usize) -> Self {
        Budget { max_word_len: bound, max_hom_size: Self::DEFAULT_HOM_SIZE }
    }

    pub fn with_hom_size(mut self, size: usize) -> Self {
        self.max_hom_size = size;
        self
    }
}

/// A finite list plus a flag saying whether it is provably everything.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub complete: bool,
}

impl<T> Enumeration<T> {
    pub fn complete(items: Vec<T>) -> Self {
        Enumeration { items, complete: true }
    }

    pub fn truncated(items: Vec<T>) -> Self {
        Enumeration { items, complete: false }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Cartesian structure: copy, delete, projections, pairing and chosen states.
pub trait Cartesian<M> {
    fn copy(&self, x: &ObjectWord) -> M;
    fn delete(&self, x: &ObjectWord) -> M;
    /// `X ⊗ Y → X`
    fn project_left(&self, x: &ObjectWord, y: &ObjectWord) -> M;
    /// `X ⊗ Y → Y`
    fn project_right(&self, x: &ObjectWord, y: &ObjectWord) -> M;
    fn pair(&self, left: &M, right: &M) -> Result<M>;
    /// A chosen state `I → X`, or `None` when `X` is empty.
    fn inhabitant(&self, x: &ObjectWord) -> Option<M>;
}

/// Compact closed structure with `η_X : I → X* ⊗ X` and `ε_X : X ⊗ X* → I`.
pub trait CompactClosed<M> {
    fn dual(&self, x: &ObjectWord) -> ObjectWord;
    fn unit(&self, x: &ObjectWord) -> M;
    fn counit(&self, x: &ObjectWord) -> M;
}

pub trait Backend {
    type Mor: Clone + fmt::Debug;

    fn kind(&self) -> &'static str;
    fn capabilities(&self) -> Capabilities;

    /// Absolute tolerance used by [`Backend::equal`], `None` for exact backends.
    fn tolerance(&self) -> Option<f64> {
        None
    }

    fn object_generators(&self) -> Vec<String>;

    fn normalize(&self, w: &ObjectWord) -> ObjectWord {
        w.clone()
    }

    fn check_object(&self, w: &ObjectWord) -> Result<()> {
        let gens = self.object_generators();
        match w.factors().iter().find(|f| !gens.contains(f)) {
            Some(bad) => Err(Error::InvalidObject(format!("unknown object generator `{bad}`"))),
            None => Ok(()),
        }
    }

    /// Splits `word` as `prefix ⊗ rest`.
    fn split_prefix(&self, word: &ObjectWord, prefix: &ObjectWord) -> Option<ObjectWord> {
        word.strip_prefix(prefix)
    }

    fn same_object(&self, x: &ObjectWord, y: &ObjectWord) -> bool {
        self.normalize(x) == self.normalize(y)
    }

    fn dom(&self, m: &Self::Mor) -> ObjectWord;
    fn cod(&self, m: &Self::Mor) -> ObjectWord;

    fn identity(&self, x: &ObjectWord) -> Self::Mor;
    fn compose(&self, first: &Self::Mor, second: &Self::Mor) -> Result<Self::Mor>;
    fn tensor(&self, left: &Self::Mor, right: &Self::Mor) -> Self::Mor;
    /// `σ_{X,Y} : X ⊗ Y → Y ⊗ X`
    fn symmetry(&self, x: &ObjectWord, y: &ObjectWord) -> Self::Mor;
    fn equal(&self, a: &Self::Mor, b: &Self::Mor) -> bool;

    fn generator(&self, name: &str) -> Result<Self::Mor>;
    fn generator_type(&self, name: &str) -> Option<(ObjectWord, ObjectWord)>;
    fn generator_names(&self) -> Vec<String>;

    fn enumerate_objects(&self, budget: &Budget) -> Enumeration<ObjectWord>;
    fn enumerate_hom(&self, x: &ObjectWord, y: &ObjectWord, budget: &Budget) -> Result<Enumeration<Self::Mor>>;

    /// Candidate environments `E` for which `hom(a, E ⊗ b)` may be inhabited.
    /// Complete only when the backend can rule out every other word.
    fn environments(&self, _a: &ObjectWord, _b: &ObjectWord, budget: &Budget) -> Enumeration<ObjectWord> {
        let objs = self.enumerate_objects(budget);
        Enumeration::truncated(objs.items)
    }

    /// Word length beyond which side extensions `C`, `D` of a probe add no
    /// distinguishing power, when the backend can certify one.
    fn probe_saturation(&self) -> Option<usize> {
        None
    }

    fn cartesian(&self) -> Option<&dyn Cartesian<Self::Mor>> {
        None
    }

    fn compact(&self) -> Option<&dyn CompactClosed<Self::Mor>> {
        None
    }

    fn dagger(&self, _m: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    /// The entrywise conjugation functor on complex backends.
    fn conjugate(&self, _m: &Self::Mor) -> Option<Self::Mor> {
        None
    }

    /// Renders the morphism as a JSON literal accepted by [`Backend::literal`].
    fn render(&self, m: &Self::Mor) -> serde_json::Value;
    fn literal(&self, dom: &ObjectWord, cod: &ObjectWord, value: &serde_json::Value) -> Result<Self::Mor>;
}

/// Compose a non-empty chain in diagrammatic order.
pub fn compose_all<B: Backend + ?Sized>(b: &B, chain: &[&B::Mor]) -> Result<B::Mor> {
    let (first, rest) = chain.split_first().expect("compose_all needs at least one morphism");
    let mut acc = (*first).clone();
    for m in rest {
        acc = b.compose(&acc, m)?;
    }
    Ok(acc)
}

pub fn tensor_all<B: Backend + ?Sized>(b: &B, parts: &[&B::Mor]) -> B::Mor {
    match parts.split_first() {
        None => b.identity(&ObjectWord::unit()),
        Some((first, rest)) => rest.iter().fold((*first).clone(), |acc, m| b.tensor(&acc, m)),
    }
}

/// `1_x ⊗ m`
pub fn whisker_left<B: Backend + ?Sized>(b: &B, x: &ObjectWord, m: &B::Mor) -> B::Mor {
    b.tensor(&b.identity(x), m)
}

/// `m ⊗ 1_x`
pub fn whisker_right<B: Backend + ?Sized>(b: &B, m: &B::Mor, x: &ObjectWord) -> B::Mor {
    b.tensor(m, &b.identity(x))
}

/// Permutation morphism sending block `i` of the domain to position `perm[i]`
/// of the codomain, built from adjacent symmetries.
pub fn block_permutation<B: Backend + ?Sized>(b: &B, blocks: &[ObjectWord], perm: &[usize]) -> Result<B::Mor> {
    assert_eq!(blocks.len(), perm.len());
    // current[k] = index of the block currently at position k
    let mut current: Vec<usize> = (0..blocks.len()).collect();
    let mut target_pos = vec![0; blocks.len()];
    for (i, &p) in perm.iter().enumerate() {
        target_pos[i] = p;
    }
    let layout = |cur: &[usize]| -> Vec<ObjectWord> { cur.iter().map(|&i| blocks[i].clone()).collect() };
    let mut acc = b.identity(&ObjectWord::tensor_all(blocks.iter()));
    // bubble sort by target position, one adjacent swap at a time
    let n = blocks.len();
    for pass in 0..n {
        let mut swapped = false;
        for k in 0..n.saturating_sub(1 + pass) {
            if target_pos[current[k]] > target_pos[current[k + 1]] {
                let lay = layout(&current);
                let before = ObjectWord::tensor_all(lay[..k].iter());
                let after = ObjectWord::tensor_all(lay[k + 2..].iter());
                let swap = b.symmetry(&lay[k], &lay[k + 1]);
                let step = b.tensor(&b.tensor(&b.identity(&before), &swap), &b.identity(&after));
                acc = b.compose(&acc, &step)?;
                current.swap(k, k + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(acc)
}

/// Right trace over `x` of `h : p ⊗ x → q ⊗ x`, built from compact structure.
pub fn trace_right<B: Backend + ?Sized>(
    b: &B,
    h: &B::Mor,
    p: &ObjectWord,
    q: &ObjectWord,
    x: &ObjectWord,
) -> Result<B::Mor> {
    let cc = b.compact().ok_or(Error::NotCompactClosed(b.kind()))?;
    let xd = cc.dual(x);
    // p → p ⊗ x* ⊗ x → p ⊗ x ⊗ x* → q ⊗ x ⊗ x* → q
    let open = whisker_left(b, p, &cc.unit(x));
    let swap = whisker_left(b, p, &b.symmetry(&xd, x));
    let body = whisker_right(b, h, &xd);
    let close = whisker_left(b, q, &cc.counit(x));
    compose_all(b, &[&open, &swap, &body, &close])
}
