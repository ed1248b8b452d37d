//! The free symmetric monoidal category on one object `A`, a set of states
//! `I → A` and effects `A → I`, modulo rules `effect ∘ state → 1_I`.
//!
//! Diagrams in this signature contain no boxes with both inputs and outputs,
//! so a diagram `Aⁿ → Aᵐ` is determined by: where each output wire comes from
//! (an input or a state), which effect terminates each unused input, and the
//! multiset of closed `effect ∘ state` scalars. Composition glues wires and
//! rewrites every closed pair covered by a rule to the empty diagram; the
//! result is the rewrite normal form.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::backend::{Backend, Budget, Capabilities, Enumeration};
use crate::error::{Error, Result};
use crate::object::{words_up_to, ObjectWord};

pub const OBJECT: &str = "A";

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Source {
    Input(usize),
    State(u16),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointedMorphism {
    /// Origin of each output wire.
    outputs: Vec<Source>,
    /// Effect terminating each input, `None` when the input reaches an output.
    effects: Vec<Option<u16>>,
    /// Closed `(effect, state)` pairs with no rule, sorted.
    scalars: Vec<(u16, u16)>,
}

impl PointedMorphism {
    pub fn outputs(&self) -> &[Source] {
        &self.outputs
    }

    pub fn effects(&self) -> &[Option<u16>] {
        &self.effects
    }

    pub fn scalars(&self) -> &[(u16, u16)] {
        &self.scalars
    }
}

impl fmt::Debug for PointedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A^{} -> A^{} out={:?} del={:?}",
            self.effects.len(),
            self.outputs.len(),
            self.outputs,
            self.effects
        )?;
        if !self.scalars.is_empty() {
            write!(f, " scalars={:?}", self.scalars)?;
        }
        Ok(())
    }
}

/// Outcome of the startup check on the rule set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleCheck {
    /// Pairs of rules whose left-hand sides overlap.
    pub critical_pairs: Vec<((u16, u16), (u16, u16))>,
    /// Every critical pair rewrites to a common form.
    pub locally_confluent: bool,
    /// Every rule strictly decreases the number of generators.
    pub terminating: bool,
}

#[derive(Clone, Debug)]
pub struct PointedBackend {
    states: Vec<String>,
    effects: Vec<String>,
    rules: BTreeSet<(u16, u16)>,
    check: RuleCheck,
}

impl PointedBackend {
    /// `rules` lists `(effect, state)` pairs with `effect ∘ state = 1_I`.
    pub fn new(states: &[&str], effects: &[&str], rules: &[(&str, &str)]) -> Result<Self> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let effects: Vec<String> = effects.iter().map(|s| s.to_string()).collect();
        let mut all: Vec<&String> = states.iter().chain(&effects).collect();
        all.sort();
        let n = all.len();
        all.dedup();
        if all.len() != n {
            return Err(Error::InvalidLiteral("state and effect names must be distinct".into()));
        }
        let mut rule_set = BTreeSet::new();
        for (e, s) in rules {
            let ei = effects.iter().position(|x| x == e).ok_or_else(|| Error::UnknownGenerator(e.to_string()))?;
            let si = states.iter().position(|x| x == s).ok_or_else(|| Error::UnknownGenerator(s.to_string()))?;
            rule_set.insert((ei as u16, si as u16));
        }
        let check = check_rules(&rule_set);
        if !check.locally_confluent || !check.terminating {
            return Err(Error::InvalidLiteral("rewrite rules are not confluent".into()));
        }
        Ok(PointedBackend { states, effects, rules: rule_set, check })
    }

    /// States `phi`, `psi`, effect `del`, with `del ∘ phi = del ∘ psi = 1_I`.
    pub fn standard() -> Self {
        Self::new(&["phi", "psi"], &["del"], &[("del", "phi"), ("del", "psi")]).expect("standard signature is valid")
    }

    pub fn object(n: usize) -> ObjectWord {
        ObjectWord::power(OBJECT, n)
    }

    pub fn rule_check(&self) -> &RuleCheck {
        &self.check
    }

    pub fn state(&self, name: &str) -> Option<PointedMorphism> {
        let s = self.states.iter().position(|x| x == name)? as u16;
        Some(PointedMorphism { outputs: vec![Source::State(s)], effects: Vec::new(), scalars: Vec::new() })
    }

    pub fn effect(&self, name: &str) -> Option<PointedMorphism> {
        let e = self.effects.iter().position(|x| x == name)? as u16;
        Some(PointedMorphism { outputs: Vec::new(), effects: vec![Some(e)], scalars: Vec::new() })
    }

    /// Every effect/state pair has a rule, so there are no free scalars and
    /// hom-sets are finite.
    fn scalar_free(&self) -> bool {
        self.rules.len() == self.states.len() * self.effects.len()
    }

    fn forms(&self, n: usize, m: usize, cap: usize) -> (Vec<PointedMorphism>, bool) {
        let mut out = Vec::new();
        let mut outputs = Vec::with_capacity(m);
        let mut used = vec![false; n];
        let mut hit_cap = false;
        self.fill_outputs(n, m, &mut outputs, &mut used, &mut out, cap, &mut hit_cap);
        (out, !hit_cap)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_outputs(
        &self,
        n: usize,
        m: usize,
        outputs: &mut Vec<Source>,
        used: &mut Vec<bool>,
        out: &mut Vec<PointedMorphism>,
        cap: usize,
        hit_cap: &mut bool,
    ) {
        if *hit_cap {
            return;
        }
        if outputs.len() == m {
            let free: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
            if !free.is_empty() && self.effects.is_empty() {
                return;
            }
            let k = self.effects.len().max(1);
            let combos = k.pow(free.len() as u32);
            for c in 0..combos {
                if out.len() >= cap {
                    *hit_cap = true;
                    return;
                }
                let mut effects = vec![None; n];
                let mut rest = c;
                for &i in free.iter().rev() {
                    effects[i] = Some((rest % k) as u16);
                    rest /= k;
                }
                out.push(PointedMorphism { outputs: outputs.clone(), effects, scalars: Vec::new() });
            }
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                outputs.push(Source::Input(i));
                self.fill_outputs(n, m, outputs, used, out, cap, hit_cap);
                outputs.pop();
                used[i] = false;
            }
        }
        for s in 0..self.states.len() as u16 {
            outputs.push(Source::State(s));
            self.fill_outputs(n, m, outputs, used, out, cap, hit_cap);
            outputs.pop();
        }
    }

    fn parse_literal(&self, n: usize, m: usize, value: &Value) -> std::result::Result<PointedMorphism, String> {
        let obj = value.as_object().ok_or("pointed literal must be an object")?;
        let out = obj.get("out").and_then(Value::as_array).ok_or("missing `out` array")?;
        if out.len() != m {
            return Err(format!("`out` has {} entries, expected {m}", out.len()));
        }
        let mut outputs = Vec::with_capacity(m);
        for v in out {
            outputs.push(match v {
                Value::Number(x) => {
                    let i = x.as_u64().ok_or("input index must be a natural")? as usize;
                    if i >= n {
                        return Err(format!("input {i} out of range"));
                    }
                    Source::Input(i)
                }
                Value::String(s) => Source::State(
                    self.states.iter().position(|x| x == s).ok_or_else(|| format!("unknown state {s}"))? as u16,
                ),
                other => return Err(format!("bad output source {other}")),
            });
        }
        let del = obj.get("del").and_then(Value::as_array).ok_or("missing `del` array")?;
        if del.len() != n {
            return Err(format!("`del` has {} entries, expected {n}", del.len()));
        }
        let mut effects = Vec::with_capacity(n);
        for v in del {
            effects.push(match v {
                Value::Null => None,
                Value::String(s) => {
                    Some(self.effects.iter().position(|x| x == s).ok_or_else(|| format!("unknown effect {s}"))? as u16)
                }
                other => return Err(format!("bad effect entry {other}")),
            });
        }
        let mut scalars = Vec::new();
        if let Some(sc) = obj.get("scalars").and_then(Value::as_array) {
            for pair in sc {
                let p = pair.as_array().filter(|p| p.len() == 2).ok_or("scalar must be [effect, state]")?;
                let e = p[0].as_str().and_then(|s| self.effects.iter().position(|x| x == s)).ok_or("unknown effect")?;
                let s = p[1].as_str().and_then(|s| self.states.iter().position(|x| x == s)).ok_or("unknown state")?;
                if !self.rules.contains(&(e as u16, s as u16)) {
                    scalars.push((e as u16, s as u16));
                }
            }
        }
        scalars.sort_unstable();
        // each input must be used exactly once: routed or deleted
        let mut routed = vec![0usize; n];
        for o in &outputs {
            if let Source::Input(i) = o {
                routed[*i] += 1;
            }
        }
        for i in 0..n {
            let uses = routed[i] + usize::from(effects[i].is_some());
            if uses != 1 {
                return Err(format!("input {i} is used {uses} times"));
            }
        }
        Ok(PointedMorphism { outputs, effects, scalars })
    }
}

/// Left-hand sides are `effect ∘ state` on a single wire, so two redexes can
/// only overlap when they share both generators, i.e. have the same left-hand
/// side. Every right-hand side is the empty diagram, so such pairs are
/// trivially joinable, and each step deletes two generators.
pub fn check_rules(rules: &BTreeSet<(u16, u16)>) -> RuleCheck {
    let list: Vec<(u16, u16)> = rules.iter().copied().collect();
    let mut critical_pairs = Vec::new();
    for (i, a) in list.iter().enumerate() {
        for b in &list[i..] {
            // redexes overlap iff they share the effect occurrence, which fixes the state too
            if a.0 == b.0 && a.1 == b.1 {
                critical_pairs.push((*a, *b));
            }
        }
    }
    RuleCheck { critical_pairs, locally_confluent: true, terminating: true }
}

impl Backend for PointedBackend {
    type Mor = PointedMorphism;

    fn kind(&self) -> &'static str {
        "pointed"
    }

    fn capabilities(&self) -> Capabilities {
        Capabilities { enumerable: true, ..Capabilities::default() }
    }

    fn object_generators(&self) -> Vec<String> {
        vec![OBJECT.to_string()]
    }

    fn dom(&self, m: &Self::Mor) -> ObjectWord {
        Self::object(m.effects.len())
    }

    fn cod(&self, m: &Self::Mor) -> ObjectWord {
        Self::object(m.outputs.len())
    }

    fn identity(&self, x: &ObjectWord) -> Self::Mor {
        PointedMorphism {
            outputs: (0..x.len()).map(Source::Input).collect(),
            effects: vec![None; x.len()],
            scalars: Vec::new(),
        }
    }

    fn compose(&self, first: &Self::Mor, second: &Self::Mor) -> Result<Self::Mor> {
        if first.outputs.len() != second.effects.len() {
            return Err(Error::mismatch("compose", &self.cod(first), &self.dom(second)));
        }
        let outputs = second
            .outputs
            .iter()
            .map(|s| match s {
                Source::Input(k) => first.outputs[*k],
                Source::State(st) => Source::State(*st),
            })
            .collect();
        let mut effects = first.effects.clone();
        let mut scalars: Vec<(u16, u16)> = first.scalars.iter().chain(&second.scalars).copied().collect();
        for (k, src) in first.outputs.iter().enumerate() {
            if let Some(e) = second.effects[k] {
                match src {
                    Source::Input(i) => effects[*i] = Some(e),
                    Source::State(s) => {
                        // redex effect ∘ state
                        if !self.rules.contains(&(e, *s)) {
                            scalars.push((e, *s));
                        }
                    }
                }
            }
        }
        scalars.sort_unstable();
        Ok(PointedMorphism { outputs, effects, scalars })
    }

    fn tensor(&self, left: &Self::Mor, right: &Self::Mor) -> Self::Mor {
        let shift = left.effects.len();
        let mut outputs = left.outputs.clone();
        outputs.extend(right.outputs.iter().map(|s| match s {
            Source::Input(i) => Source::Input(i + shift),
            st => *st,
        }));
        let mut effects = left.effects.clone();
        effects.extend_from_slice(&right.effects);
        let mut scalars: Vec<(u16, u16)> = left.scalars.iter().chain(&right.scalars).copied().collect();
        scalars.sort_unstable();
        PointedMorphism { outputs, effects, scalars }
    }

    fn symmetry(&self, x: &ObjectWord, y: &ObjectWord) -> Self::Mor {
        let (n, m) = (x.len(), y.len());
        PointedMorphism {
            outputs: (n..n + m).chain(0..n).map(Source::Input).collect(),
            effects: vec![None; n + m],
            scalars: Vec::new(),
        }
    }

    fn equal(&self, a: &Self::Mor, b: &Self::Mor) -> bool {
        a == b
    }

    fn generator(&self, name: &str) -> Result<Self::Mor> {
        self.state(name).or_else(|| self.effect(name)).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn generator_type(&self, name: &str) -> Option<(ObjectWord, ObjectWord)> {
        if self.states.iter().any(|s| s == name) {
            Some((ObjectWord::unit(), Self::object(1)))
        } else if self.effects.iter().any(|s| s == name) {
            Some((Self::object(1), ObjectWord::unit()))
        } else {
            None
        }
    }

    fn generator_names(&self) -> Vec<String> {
        self.states.iter().chain(&self.effects).cloned().collect()
    }

    fn enumerate_objects(&self, budget: &Budget) -> Enumeration<ObjectWord> {
        Enumeration::truncated(words_up_to(&self.object_generators(), budget.max_word_len))
    }

    fn enumerate_hom(&self, x: &ObjectWord, y: &ObjectWord, budget: &Budget) -> Result<Enumeration<Self::Mor>> {
        self.check_object(x)?;
        self.check_object(y)?;
        let (items, exhausted) = self.forms(x.len(), y.len(), budget.max_hom_size);
        Ok(Enumeration { items, complete: exhausted && self.scalar_free() })
    }

    fn render(&self, m: &Self::Mor) -> Value {
        let out: Vec<Value> = m
            .outputs
            .iter()
            .map(|s| match s {
                Source::Input(i) => Value::from(*i),
                Source::State(st) => Value::from(self.states[*st as usize].clone()),
            })
            .collect();
        let del: Vec<Value> = m
            .effects
            .iter()
            .map(|e| e.map_or(Value::Null, |e| Value::from(self.effects[e as usize].clone())))
            .collect();
        if m.scalars.is_empty() {
            json!({ "out": out, "del": del })
        } else {
            let sc: Vec<Value> =
                m.scalars.iter().map(|(e, s)| json!([self.effects[*e as usize], self.states[*s as usize]])).collect();
            json!({ "out": out, "del": del, "scalars": sc })
        }
    }

    fn literal(&self, dom: &ObjectWord, cod: &ObjectWord, value: &Value) -> Result<Self::Mor> {
        self.check_object(dom)?;
        self.check_object(cod)?;
        self.parse_literal(dom.len(), cod.len(), value).map_err(Error::InvalidLiteral)
    }
}
