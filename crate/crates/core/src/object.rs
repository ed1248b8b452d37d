use std::fmt;

use serde::{Deserialize, Serialize};

/// A tensor word of generator objects. The empty word is the monoidal unit `I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectWord(Vec<String>);

impl ObjectWord {
    pub fn unit() -> Self {
        ObjectWord(Vec::new())
    }

    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = S>) -> Self {
        ObjectWord(factors.into_iter().map(Into::into).collect())
    }

    pub fn single(name: impl Into<String>) -> Self {
        ObjectWord(vec![name.into()])
    }

    /// `n` copies of one generator.
    pub fn power(name: &str, n: usize) -> Self {
        ObjectWord(vec![name.to_string(); n])
    }

    pub fn factors(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tensor(&self, other: &ObjectWord) -> ObjectWord {
        let mut out = self.0.clone();
        out.extend(other.0.iter().cloned());
        ObjectWord(out)
    }

    pub fn tensor_all<'a>(words: impl IntoIterator<Item = &'a ObjectWord>) -> ObjectWord {
        let mut out = Vec::new();
        for w in words {
            out.extend(w.0.iter().cloned());
        }
        ObjectWord(out)
    }

    pub fn strip_prefix(&self, prefix: &ObjectWord) -> Option<ObjectWord> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|rest| ObjectWord(rest.to_vec()))
    }

    /// Multiset difference, used by backends whose words are commutative.
    pub fn remove_multiset(&self, part: &ObjectWord) -> Option<ObjectWord> {
        let mut rest = self.0.clone();
        for f in &part.0 {
            let pos = rest.iter().position(|x| x == f)?;
            rest.remove(pos);
        }
        Some(ObjectWord(rest))
    }

    pub fn sorted(&self) -> ObjectWord {
        let mut v = self.0.clone();
        v.sort();
        ObjectWord(v)
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("I")
        } else {
            f.write_str(&self.0.join(" "))
        }
    }
}

impl fmt::Debug for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// All words over `generators` of length at most `max_len`, ordered by length
/// and then lexicographically.
pub fn words_up_to(generators: &[String], max_len: usize) -> Vec<ObjectWord> {
    let mut gens = generators.to_vec();
    gens.sort();
    gens.dedup();
    let mut out = vec![ObjectWord::unit()];
    let mut layer = vec![ObjectWord::unit()];
    for _ in 0..max_len {
        if gens.is_empty() {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for w in &layer {
            for g in &gens {
                let mut v = w.0.clone();
                v.push(g.clone());
                next.push(ObjectWord(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_tensor_identity() {
        let a = ObjectWord::new(["A", "B"]);
        assert_eq!(a.tensor(&ObjectWord::unit()), a);
        assert_eq!(ObjectWord::unit().tensor(&a), a);
        assert_eq!(ObjectWord::unit().to_string(), "I");
    }

    #[test]
    fn word_enumeration_order() {
        let ws = words_up_to(&["B".into(), "A".into()], 2);
        let shown: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["I", "A", "B", "A A", "A B", "B A", "B B"]);
    }

    #[test]
    fn multiset_difference() {
        let w = ObjectWord::new(["A", "B", "A"]);
        assert_eq!(w.remove_multiset(&ObjectWord::new(["A", "A"])), Some(ObjectWord::single("B")));
        assert_eq!(w.remove_multiset(&ObjectWord::new(["C"])), None);
    }
}
