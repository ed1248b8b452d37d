//! Theory files: the backend kind, its parameters and its generators.
//!
//! ```text
//! backend complex            # boolean | rational | complex | unitary | finfun | idempotent | pointed
//! tolerance 1e-9
//! bound 2
//! object Q 2
//! generator h : Q -> Q = [[0.7071067811865476, 0.7071067811865476],
//!                         [0.7071067811865476, -0.7071067811865476]]
//! idempotent f h             # idempotent backend
//! state phi psi              # pointed backend
//! effect del
//! rule del phi
//! ```

use combs_core::instances::finfun::FinFunBackend;
use combs_core::instances::idempotent::IdempotentBackend;
use combs_core::instances::matrix::{BoolMatrices, ComplexMatrices, MatrixBackend, RationalMatrices, Scalar};
use combs_core::instances::pointed::PointedBackend;
use combs_core::instances::unitary::UnitaryBackend;
use combs_core::object::ObjectWord;
use combs_core::term::{is_identifier, parse_word};
use combs_core::Backend;
use serde_json::Value;

use crate::error::CliError;
use crate::lines::{json_block, logical_lines, Line};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Boolean,
    Rational,
    Complex,
    Unitary,
    FinFun,
    Idempotent,
    Pointed,
}

impl Kind {
    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "boolean" => Kind::Boolean,
            "rational" => Kind::Rational,
            "complex" => Kind::Complex,
            "unitary" => Kind::Unitary,
            "finfun" => Kind::FinFun,
            "idempotent" => Kind::Idempotent,
            "pointed" => Kind::Pointed,
            _ => return None,
        })
    }

    fn has_objects(self) -> bool {
        !matches!(self, Kind::Idempotent | Kind::Pointed)
    }
}

#[derive(Debug, Clone)]
struct GeneratorDecl {
    line: usize,
    name: String,
    dom: ObjectWord,
    cod: ObjectWord,
    value: Value,
}

/// A parsed but not yet built theory.
#[derive(Debug, Clone)]
pub struct TheoryDecl {
    pub kind: Kind,
    pub tolerance: Option<f64>,
    pub bound: Option<usize>,
    objects: Vec<(String, usize)>,
    idempotents: Vec<String>,
    states: Vec<String>,
    effects: Vec<String>,
    rules: Vec<(String, String)>,
    generators: Vec<GeneratorDecl>,
}

pub enum AnyBackend {
    Boolean(BoolMatrices),
    Rational(RationalMatrices),
    Complex(ComplexMatrices),
    Unitary(UnitaryBackend),
    FinFun(FinFunBackend),
    Idempotent(IdempotentBackend),
    Pointed(PointedBackend),
}

fn parse_err(line: &Line, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line: line.number, column, message: message.into() }
}

fn names(line: &Line, args: &[&str]) -> Result<Vec<String>, CliError> {
    if args.is_empty() {
        return Err(parse_err(line, 1, "expected at least one name"));
    }
    for a in args {
        if !is_identifier(a) || *a == "I" {
            return Err(parse_err(line, line.column_of(a), format!("`{a}` is not a valid name")));
        }
    }
    Ok(args.iter().map(|s| s.to_string()).collect())
}

pub fn parse_theory(src: &str) -> Result<TheoryDecl, CliError> {
    let lines = logical_lines(src);
    let mut iter = lines.iter();
    let first = iter.next().ok_or(CliError::Parse { line: 1, column: 1, message: "empty theory".into() })?;
    let words: Vec<&str> = first.text.split_whitespace().collect();
    let kind = match words.as_slice() {
        ["backend", k] => {
            Kind::parse(k).ok_or_else(|| parse_err(first, first.column_of(k), format!("unknown backend `{k}`")))?
        }
        _ => return Err(parse_err(first, 1, "theory must start with `backend <kind>`")),
    };
    let mut decl = TheoryDecl {
        kind,
        tolerance: None,
        bound: None,
        objects: Vec::new(),
        idempotents: Vec::new(),
        states: Vec::new(),
        effects: Vec::new(),
        rules: Vec::new(),
        generators: Vec::new(),
    };
    let rest: Vec<&Line> = iter.collect();
    let mut idx = 0;
    while idx < rest.len() {
        let line = rest[idx];
        idx += 1;
        let words: Vec<&str> = line.text.split_whitespace().collect();
        match words.as_slice() {
            ["tolerance", t] => {
                let v: f64 = t.parse().map_err(|_| parse_err(line, line.column_of(t), "tolerance must be a number"))?;
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(parse_err(line, line.column_of(t), "tolerance must be finite and non-negative"));
                }
                decl.tolerance = Some(v);
            }
            ["bound", n] => {
                decl.bound =
                    Some(n.parse().map_err(|_| parse_err(line, line.column_of(n), "bound must be a natural number"))?);
            }
            ["object", name, dim] if kind.has_objects() => {
                names(line, &[name])?;
                let d: usize =
                    dim.parse().map_err(|_| parse_err(line, line.column_of(dim), "size must be a natural number"))?;
                decl.objects.push((name.to_string(), d));
            }
            ["idempotent", args @ ..] if kind == Kind::Idempotent => decl.idempotents.extend(names(line, args)?),
            ["state", args @ ..] if kind == Kind::Pointed => decl.states.extend(names(line, args)?),
            ["effect", args @ ..] if kind == Kind::Pointed => decl.effects.extend(names(line, args)?),
            ["rule", e, s] if kind == Kind::Pointed => decl.rules.push((e.to_string(), s.to_string())),
            ["generator", ..] if kind.has_objects() => {
                let (g, consumed) = parse_generator(line, &rest[idx..])?;
                idx += consumed;
                decl.generators.push(g);
            }
            [] => {}
            [head, ..] => {
                return Err(parse_err(line, line.column_of(head), format!("unexpected `{head}` in a {kind:?} theory")))
            }
        }
    }
    Ok(decl)
}

/// `generator NAME : DOM -> COD = JSON`, where the JSON block may continue on
/// the following lines. Returns the declaration and the number of extra
/// lines consumed.
fn parse_generator(line: &Line, following: &[&Line]) -> Result<(GeneratorDecl, usize), CliError> {
    let body = line.text.trim_start().strip_prefix("generator").unwrap_or_default();
    let (head, literal) =
        body.split_once('=').ok_or_else(|| parse_err(line, 1, "expected `generator NAME : DOM -> COD = LITERAL`"))?;
    let (name, ty) = head.split_once(':').ok_or_else(|| parse_err(line, 1, "expected `:` after the generator name"))?;
    let name = name.trim();
    names(line, &[name])?;
    let (dom, cod) =
        ty.split_once("->").ok_or_else(|| parse_err(line, line.column_of(ty.trim()), "expected `DOM -> COD`"))?;
    let word = |w: &str| parse_word(w).map_err(|e| parse_err(line, line.column_of(w) + e.offset, e.message));
    let (dom, cod) = (word(dom)?, word(cod)?);
    let (value, consumed) = json_block(line, literal, following)?;
    Ok((GeneratorDecl { line: line.number, name: name.to_string(), dom, cod, value }, consumed))
}

fn type_err(line: usize, expr: &str, e: impl ToString) -> CliError {
    CliError::Type { line, expr: expr.to_string(), message: e.to_string() }
}

fn matrices<S: Scalar>(decl: &TheoryDecl, tolerance: Option<f64>) -> Result<MatrixBackend<S>, CliError> {
    let mut b = MatrixBackend::<S>::new(decl.objects.iter().map(|(n, d)| (n.clone(), *d)))
        .map_err(|e| type_err(1, "objects", e))?;
    if let Some(t) = tolerance {
        b = b.with_tolerance(t);
    }
    for g in &decl.generators {
        let m = b.literal(&g.dom, &g.cod, &g.value).map_err(|e| type_err(g.line, &g.name, e))?;
        b.add_generator(&g.name, m).map_err(|e| type_err(g.line, &g.name, e))?;
    }
    Ok(b)
}

impl TheoryDecl {
    /// Builds the backend, checking every literal. `tolerance` overrides the
    /// file's value.
    pub fn build(&self, tolerance: Option<f64>) -> Result<AnyBackend, CliError> {
        let tol = tolerance.or(self.tolerance);
        Ok(match self.kind {
            Kind::Boolean => AnyBackend::Boolean(matrices(self, tol)?),
            Kind::Rational => AnyBackend::Rational(matrices(self, tol)?),
            Kind::Complex => AnyBackend::Complex(matrices(self, tol)?),
            Kind::Unitary => {
                let mut b = UnitaryBackend::new(self.objects.iter().map(|(n, d)| (n.clone(), *d)))
                    .map_err(|e| type_err(1, "objects", e))?;
                if let Some(t) = tol {
                    b = b.with_tolerance(t);
                }
                for g in &self.generators {
                    let m = b.literal(&g.dom, &g.cod, &g.value).map_err(|e| type_err(g.line, &g.name, e))?;
                    b.add_generator(&g.name, m).map_err(|e| type_err(g.line, &g.name, e))?;
                }
                AnyBackend::Unitary(b)
            }
            Kind::FinFun => {
                let mut b = FinFunBackend::new(self.objects.iter().map(|(n, d)| (n.clone(), *d)))
                    .map_err(|e| type_err(1, "objects", e))?;
                for g in &self.generators {
                    let m = b.literal(&g.dom, &g.cod, &g.value).map_err(|e| type_err(g.line, &g.name, e))?;
                    b.add_generator(&g.name, m).map_err(|e| type_err(g.line, &g.name, e))?;
                }
                AnyBackend::FinFun(b)
            }
            Kind::Idempotent => AnyBackend::Idempotent(
                IdempotentBackend::new(self.idempotents.iter().cloned()).map_err(|e| type_err(1, "idempotent", e))?,
            ),
            Kind::Pointed => {
                let s: Vec<&str> = self.states.iter().map(String::as_str).collect();
                let e: Vec<&str> = self.effects.iter().map(String::as_str).collect();
                let r: Vec<(&str, &str)> = self.rules.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
                AnyBackend::Pointed(PointedBackend::new(&s, &e, &r).map_err(|err| type_err(1, "signature", err))?)
            }
        })
    }
}
