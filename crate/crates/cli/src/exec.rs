//! Runs a parsed program against a backend and builds the reports.

use std::collections::BTreeMap;
use std::time::Instant;

use combs_core::comb::{braid_eval, comb_compose, comb_tensor, equiv_comb, equiv_sigma, equiv_tau, CombRep, ProbeSpec};
use combs_core::cpm::{self, is_completely_positive, preserves_trace, to_cpm};
use combs_core::decision::{Decision, Witness};
use combs_core::error::Error;
use combs_core::instances::finfun::FinFunBackend;
use combs_core::instances::idempotent::IdempotentBackend;
use combs_core::instances::matrix::{BoolMatrices, ComplexMatrices, RationalMatrices};
use combs_core::instances::pointed::PointedBackend;
use combs_core::instances::unitary::UnitaryBackend;
use combs_core::object::ObjectWord;
use combs_core::optic::{equiv_optic, lens_pair, unitary_comb_factor, OpticRep, OpticSpec, SlideDirection};
use combs_core::polycomb::{poly_compose_at, poly_equiv, star_counit, star_unit, PolyCombRep};
use combs_core::term::MorTerm;
use combs_core::Backend;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::program::{Definition, Located, Query, Relation, Statement, Strategy};
use crate::theory::AnyBackend;

/// Backend-specific deciders that the generic executor cannot express.
pub trait Host: Backend {
    fn cpm_summary(&self, _c: &CombRep<Self::Mor>) -> Result<Value> {
        Err(Error::NotDaggerBackend(self.kind()))
    }

    fn cpm_equal(&self, _c1: &CombRep<Self::Mor>, _c2: &CombRep<Self::Mor>) -> Result<Decision<Self::Mor>> {
        Err(Error::NotDaggerBackend(self.kind()))
    }

    fn cpinf_equiv(
        &self,
        _c1: &CombRep<Self::Mor>,
        _c2: &CombRep<Self::Mor>,
        _bound: usize,
    ) -> Result<Decision<Self::Mor>> {
        Err(Error::NotDaggerBackend(self.kind()))
    }

    fn factorization(&self, _c1: &CombRep<Self::Mor>, _c2: &CombRep<Self::Mor>) -> Result<Decision<Self::Mor>> {
        Err(Error::IncompatibleStrategy { strategy: "factorization".into(), backend: self.kind() })
    }
}

impl Host for BoolMatrices {}
impl Host for RationalMatrices {}
impl Host for FinFunBackend {}
impl Host for IdempotentBackend {}
impl Host for PointedBackend {}

impl Host for ComplexMatrices {
    fn cpm_summary(&self, c: &CombRep<Self::Mor>) -> Result<Value> {
        let m = to_cpm(self, c)?;
        let tol = self.tolerance_value();
        let pos = is_completely_positive(&m, tol);
        Ok(json!({
            "dom": m.dom.to_string(),
            "cod": m.cod.to_string(),
            "transfer": m.transfer.to_json(),
            "completely_positive": pos.completely_positive,
            "trace_preserving": preserves_trace(&m, tol),
        }))
    }

    fn cpm_equal(&self, c1: &CombRep<Self::Mor>, c2: &CombRep<Self::Mor>) -> Result<Decision<Self::Mor>> {
        cpm::cpm_equal(self, c1, c2)
    }

    fn cpinf_equiv(
        &self,
        c1: &CombRep<Self::Mor>,
        c2: &CombRep<Self::Mor>,
        bound: usize,
    ) -> Result<Decision<Self::Mor>> {
        cpm::cpinf_equiv(self, c1, c2, bound)
    }
}

impl Host for UnitaryBackend {
    fn factorization(&self, c1: &CombRep<Self::Mor>, c2: &CombRep<Self::Mor>) -> Result<Decision<Self::Mor>> {
        unitary_comb_factor(self, c1, c2)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub strategy: Strategy,
    pub bound: usize,
    pub timing: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub reports: Vec<Value>,
    /// Queries that could not be executed.
    pub failures: usize,
}

enum Item<M> {
    Comb(CombRep<M>),
    Poly(PolyCombRep<M>),
}

struct Session<'a, B: Host> {
    b: &'a B,
    opts: Options,
    items: BTreeMap<String, Item<B::Mor>>,
}

pub fn run_any(backend: &AnyBackend, program: &[Located], opts: Options) -> std::result::Result<Outcome, CliError> {
    match backend {
        AnyBackend::Boolean(b) => run(b, program, opts),
        AnyBackend::Rational(b) => run(b, program, opts),
        AnyBackend::Complex(b) => run(b, program, opts),
        AnyBackend::Unitary(b) => run(b, program, opts),
        AnyBackend::FinFun(b) => run(b, program, opts),
        AnyBackend::Idempotent(b) => run(b, program, opts),
        AnyBackend::Pointed(b) => run(b, program, opts),
    }
}

pub fn backend_kind(backend: &AnyBackend) -> &'static str {
    match backend {
        AnyBackend::Boolean(b) => b.kind(),
        AnyBackend::Rational(b) => b.kind(),
        AnyBackend::Complex(b) => b.kind(),
        AnyBackend::Unitary(b) => b.kind(),
        AnyBackend::FinFun(b) => b.kind(),
        AnyBackend::Idempotent(b) => b.kind(),
        AnyBackend::Pointed(b) => b.kind(),
    }
}

/// Definitions that fail to type-check abort the run; queries that fail are
/// reported and counted.
pub fn run<B: Host>(b: &B, program: &[Located], opts: Options) -> std::result::Result<Outcome, CliError> {
    let mut s = Session { b, opts, items: BTreeMap::new() };
    let mut out = Outcome::default();
    for stmt in program {
        match &stmt.statement {
            Statement::Define(d) => s.define(d).map_err(|e| CliError::Type {
                line: stmt.line,
                expr: stmt.text.clone(),
                message: e.to_string(),
            })?,
            Statement::Query(q) => {
                let started = Instant::now();
                let mut report = match s.query(q) {
                    Ok(body) => body,
                    Err(e) => {
                        out.failures += 1;
                        json!({ "error": e.to_string() })
                    }
                };
                let obj = report.as_object_mut().expect("reports are objects");
                obj.insert("query".into(), json!(stmt.text));
                obj.insert("line".into(), json!(stmt.line));
                if opts.timing {
                    obj.insert("timing_ms".into(), json!(started.elapsed().as_secs_f64() * 1e3));
                }
                out.reports.push(report);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, thiserror::Error)]
enum QueryError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("no comb or polymorphism named `{0}`")]
    Unknown(String),
}

type Result<T, E = Error> = std::result::Result<T, E>;
type QResult<T> = Result<T, QueryError>;

fn unknown(name: &str) -> QueryError {
    QueryError::Unknown(name.to_string())
}

impl<B: Host> Session<'_, B> {
    fn define(&mut self, d: &Definition) -> QResult<()> {
        let b = self.b;
        let (name, item) = match d {
            Definition::Comb { name, env, bottom, top } => {
                (name, Item::Comb(CombRep::new(b, env.clone(), bottom.eval(b)?, top.eval(b)?)?))
            }
            Definition::DaggerComb { name, env, bottom } => {
                let f = bottom.eval(b)?;
                let top = b.dagger(&f).ok_or(Error::NotDaggerBackend(b.kind()))?;
                (name, Item::Comb(CombRep::new(b, env.clone(), f, top)?))
            }
            Definition::Poly { name, holes, outer, envs, segments } => {
                let segs = segments.iter().map(|t| t.eval(b)).collect::<Result<Vec<_>>>()?;
                (name, Item::Poly(PolyCombRep::new(b, holes.clone(), outer.clone(), envs.clone(), segs)?))
            }
            Definition::Unit { name, pair } => (name, Item::Poly(star_unit(b, pair)?)),
            Definition::Counit { name, pair } => (name, Item::Poly(star_counit(b, pair)?)),
        };
        self.items.insert(name.clone(), item);
        Ok(())
    }

    fn comb(&self, name: &str) -> QResult<CombRep<B::Mor>> {
        match self.items.get(name) {
            Some(Item::Comb(c)) => Ok(c.clone()),
            Some(Item::Poly(p)) => p.to_comb().ok_or_else(|| {
                Error::UnsupportedShape(format!("`{name}` is not a comb with one hole and one outer pair")).into()
            }),
            None => Err(unknown(name)),
        }
    }

    fn poly(&self, name: &str) -> QResult<PolyCombRep<B::Mor>> {
        match self.items.get(name) {
            Some(Item::Comb(c)) => Ok(PolyCombRep::from_comb(c)),
            Some(Item::Poly(p)) => Ok(p.clone()),
            None => Err(unknown(name)),
        }
    }

    fn term(&self, m: &B::Mor) -> Value {
        json!(MorTerm::literal_of(self.b, m).to_string())
    }

    fn comb_json(&self, c: &CombRep<B::Mor>) -> Value {
        json!({
            "outer": [c.a.to_string(), c.a_prime.to_string()],
            "hole": [c.b.to_string(), c.b_prime.to_string()],
            "env": c.env.to_string(),
            "bottom": self.term(&c.bottom),
            "top": self.term(&c.top),
        })
    }

    fn poly_json(&self, p: &PolyCombRep<B::Mor>) -> Value {
        let pairs = |v: &[(ObjectWord, ObjectWord)]| -> Value {
            v.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect()
        };
        json!({
            "holes": pairs(&p.holes),
            "outer": pairs(&p.outer),
            "envs": p.envs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "segments": p.segments.iter().map(|m| self.term(m)).collect::<Vec<_>>(),
        })
    }

    fn witness_json(&self, w: &Witness<B::Mor>) -> Value {
        let terms = |v: &[B::Mor]| v.iter().map(|m| self.term(m)).collect::<Vec<_>>();
        match w {
            Witness::Probe(p) => json!({
                "kind": "probe",
                "extensions": p.extensions.iter().map(|(c, d)| json!([c.to_string(), d.to_string()])).collect::<Vec<_>>(),
                "fillers": terms(&p.fillers),
                "lhs": self.term(&p.lhs),
                "rhs": self.term(&p.rhs),
            }),
            Witness::Invariants { label, lhs, rhs } => {
                json!({ "kind": "invariants", "label": label, "lhs": terms(lhs), "rhs": terms(rhs) })
            }
            Witness::SameInvariant { label, value } => {
                json!({ "kind": "same-invariant", "label": label, "value": terms(value) })
            }
            Witness::SlidePath(moves) => json!({
                "kind": "slide-path",
                "moves": moves.iter().map(|mv| json!({
                    "direction": match mv.direction {
                        SlideDirection::TowardTop => "toward-top",
                        SlideDirection::TowardBottom => "toward-bottom",
                    },
                    "v": self.term(&mv.v),
                    "factor": self.term(&mv.factor),
                })).collect::<Vec<_>>(),
            }),
            Witness::ExhaustedComponent { states } => json!({ "kind": "exhausted-component", "states": states }),
            Witness::Factorization { u, v } => json!({ "kind": "factorization", "u": self.term(u), "v": self.term(v) }),
            Witness::Note(text) => json!({ "kind": "note", "text": text }),
        }
    }

    fn decision_json(&self, relation: Relation, d: &Decision<B::Mor>) -> Value {
        json!({
            "relation": relation.name(),
            "verdict": d.verdict.to_string(),
            "method": d.method,
            "certified": d.certified,
            "witness": d.witness.as_ref().map(|w| self.witness_json(w)),
            "coverage": d.coverage,
            "tolerance": d.tolerance,
        })
    }

    fn probe_spec(&self, s: Strategy) -> Result<ProbeSpec> {
        let bound = self.opts.bound;
        Ok(match s {
            Strategy::Auto => match ProbeSpec::Auto.resolve(self.b.capabilities()) {
                ProbeSpec::Enumerate(_) => ProbeSpec::Enumerate(bound),
                other => other,
            },
            Strategy::Name => ProbeSpec::BraidOnly,
            Strategy::Lens => ProbeSpec::CartesianPair,
            Strategy::Enumerate => ProbeSpec::Enumerate(bound),
            Strategy::Positive => ProbeSpec::PositiveOnly(bound),
            other => return Err(Error::IncompatibleStrategy { strategy: other.name().into(), backend: self.b.kind() }),
        })
    }

    fn optic_spec(&self, s: Strategy) -> Result<OpticSpec> {
        let bound = self.opts.bound;
        Ok(match s {
            Strategy::Auto => match OpticSpec::Auto.resolve(self.b.capabilities()) {
                OpticSpec::Zigzag(_) => OpticSpec::Zigzag(bound),
                other => other,
            },
            Strategy::Name => OpticSpec::NameForm,
            Strategy::Lens => OpticSpec::LensPair,
            Strategy::Factorization => OpticSpec::Factorization,
            Strategy::Zigzag => OpticSpec::Zigzag(bound),
            other => return Err(Error::IncompatibleStrategy { strategy: other.name().into(), backend: self.b.kind() }),
        })
    }

    fn equiv(&self, relation: Relation, lhs: &str, rhs: &str, strategy: Strategy) -> QResult<Decision<B::Mor>> {
        let b = self.b;
        if relation == Relation::Poly {
            return Ok(poly_equiv(b, &self.poly(lhs)?, &self.poly(rhs)?, self.probe_spec(strategy)?)?);
        }
        let (c1, c2) = (self.comb(lhs)?, self.comb(rhs)?);
        let d = match relation {
            Relation::Sigma => equiv_sigma(b, &c1, &c2),
            Relation::Tau => equiv_tau(b, &c1, &c2, self.opts.bound),
            Relation::Comb => equiv_comb(b, &c1, &c2, self.probe_spec(strategy)?),
            Relation::Optic => match self.optic_spec(strategy)? {
                OpticSpec::Factorization => b.factorization(&c1, &c2),
                spec => equiv_optic(b, &OpticRep(c1), &OpticRep(c2), spec),
            },
            Relation::Cpm => b.cpm_equal(&c1, &c2),
            Relation::Cpinf => b.cpinf_equiv(&c1, &c2, self.opts.bound),
            Relation::Poly => unreachable!("handled above"),
        };
        Ok(d?)
    }

    fn query(&mut self, q: &Query) -> QResult<Value> {
        let b = self.b;
        Ok(match q {
            Query::Compose { first, second, bind } => {
                let c = comb_compose(b, &self.comb(first)?, &self.comb(second)?)?;
                let body = json!({ "comb": self.comb_json(&c) });
                if let Some(n) = bind {
                    self.items.insert(n.clone(), Item::Comb(c));
                }
                body
            }
            Query::Tensor { left, right, bind } => {
                let c = comb_tensor(b, &self.comb(left)?, &self.comb(right)?)?;
                let body = json!({ "comb": self.comb_json(&c) });
                if let Some(n) = bind {
                    self.items.insert(n.clone(), Item::Comb(c));
                }
                body
            }
            Query::Name(c) => json!({ "name": self.term(&braid_eval(b, &self.comb(c)?)?) }),
            Query::Lens(c) => {
                let l = lens_pair(b, &self.comb(c)?)?;
                json!({ "get": self.term(&l.get), "put": self.term(&l.put) })
            }
            Query::Cpm(c) => json!({ "cpm": b.cpm_summary(&self.comb(c)?)? }),
            Query::Equiv { relation, lhs, rhs, strategy } => {
                let d = self.equiv(*relation, lhs, rhs, strategy.unwrap_or(self.opts.strategy))?;
                self.decision_json(*relation, &d)
            }
            Query::Plug { outer, hole, inner, pair, bind } => {
                let p = poly_compose_at(b, &self.poly(outer)?, &self.poly(inner)?, *hole, *pair)?;
                let body = json!({ "poly": self.poly_json(&p) });
                if let Some(n) = bind {
                    self.items.insert(n.clone(), Item::Poly(p));
                }
                body
            }
        })
    }
}
