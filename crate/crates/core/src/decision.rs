use std::fmt;

use serde::Serialize;

use crate::object::ObjectWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    Distinct,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Equivalent => "Equivalent",
            Verdict::Distinct => "Distinct",
            Verdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

/// A probe on which two sides were evaluated.
#[derive(Debug, Clone)]
pub struct Probe<M> {
    /// Side extensions (one pair per hole; a single pair for 1-combs).
    pub extensions: Vec<(ObjectWord, ObjectWord)>,
    /// Hole fillers, one per hole.
    pub fillers: Vec<M>,
    pub lhs: M,
    pub rhs: M,
}

#[derive(Debug, Clone)]
pub enum Witness<M> {
    /// The two sides differ on this probe.
    Probe(Probe<M>),
    /// Unequal canonical invariants (names, lens pairs, transfer matrices).
    Invariants { label: &'static str, lhs: Vec<M>, rhs: Vec<M> },
    /// A zigzag of slides connecting the two representatives.
    SlidePath(Vec<crate::optic::SlideMove<M>>),
    /// Equal canonical invariants.
    SameInvariant { label: &'static str, value: Vec<M> },
    /// The whole slide component of the left side was explored without
    /// meeting the right side.
    ExhaustedComponent { states: usize },
    /// Environment isomorphisms realising a slide between unitary combs.
    Factorization { u: M, v: M },
    /// Numeric invariants (CPM transfer matrices are reported through this).
    Note(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Coverage {
    pub probes: usize,
    pub objects: usize,
    pub complete: bool,
    pub states: usize,
}

#[derive(Debug, Clone)]
pub struct Decision<M> {
    pub verdict: Verdict,
    pub method: &'static str,
    pub certified: bool,
    pub witness: Option<Witness<M>>,
    pub coverage: Option<Coverage>,
    pub tolerance: Option<f64>,
}

impl<M> Decision<M> {
    pub fn equivalent(method: &'static str, certified: bool) -> Self {
        Decision {
            verdict: if certified { Verdict::Equivalent } else { Verdict::Unknown },
            method,
            certified,
            witness: None,
            coverage: None,
            tolerance: None,
        }
    }

    pub fn distinct(method: &'static str, witness: Witness<M>) -> Self {
        Decision {
            verdict: Verdict::Distinct,
            method,
            certified: true,
            witness: Some(witness),
            coverage: None,
            tolerance: None,
        }
    }

    pub fn unknown(method: &'static str) -> Self {
        Decision { verdict: Verdict::Unknown, method, certified: false, witness: None, coverage: None, tolerance: None }
    }

    pub fn with_witness(mut self, w: Witness<M>) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_coverage(mut self, c: Coverage) -> Self {
        self.coverage = Some(c);
        self
    }

    pub fn with_tolerance(mut self, t: Option<f64>) -> Self {
        self.tolerance = t;
        self
    }

    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }

    pub fn is_distinct(&self) -> bool {
        self.verdict == Verdict::Distinct
    }
}
