//! Program files: comb and polymorphism definitions followed by queries.
//!
//! ```text
//! comb c1 env I = id(A) | f          # (bottom, top) with environment I
//! dcomb d env E = k                  # (k, k†)
//! poly p holes (X, Y) (Y, X) outer (X, X) envs [Y] [X] = s0 | s1 | s2
//! unit u (X, Y)
//! counit e (X, Y)
//! compose c1 c2 as c3
//! tensor c1 c2
//! name c1
//! lens c1
//! cpm d
//! equiv comb c1 c2 with enumerate
//! plug e 0 u 0 as snake
//! ```
//!
//! A statement continues onto following lines while parentheses or brackets
//! are open.

use combs_core::object::ObjectWord;
use combs_core::term::{is_identifier, parse_term, parse_word, MorTerm};

use crate::error::CliError;
use crate::lines::{logical_lines, Line};

pub type Pair = (ObjectWord, ObjectWord);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Name,
    Lens,
    Enumerate,
    Positive,
    Factorization,
    Zigzag,
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Strategy> {
        Some(match s {
            "auto" => Strategy::Auto,
            "name" | "braid" => Strategy::Name,
            "lens" | "cartesian" => Strategy::Lens,
            "enumerate" => Strategy::Enumerate,
            "positive" => Strategy::Positive,
            "factorization" => Strategy::Factorization,
            "zigzag" => Strategy::Zigzag,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Auto => "auto",
            Strategy::Name => "name",
            Strategy::Lens => "lens",
            Strategy::Enumerate => "enumerate",
            Strategy::Positive => "positive",
            Strategy::Factorization => "factorization",
            Strategy::Zigzag => "zigzag",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Sigma,
    Tau,
    Comb,
    Optic,
    Cpm,
    Cpinf,
    Poly,
}

impl Relation {
    fn parse(s: &str) -> Option<Relation> {
        Some(match s {
            "sigma" => Relation::Sigma,
            "tau" => Relation::Tau,
            "comb" => Relation::Comb,
            "optic" => Relation::Optic,
            "cpm" => Relation::Cpm,
            "cpinf" => Relation::Cpinf,
            "poly" => Relation::Poly,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Sigma => "sigma",
            Relation::Tau => "tau",
            Relation::Comb => "comb",
            Relation::Optic => "optic",
            Relation::Cpm => "cpm",
            Relation::Cpinf => "cpinf",
            Relation::Poly => "poly",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Definition {
    Comb { name: String, env: ObjectWord, bottom: MorTerm, top: MorTerm },
    DaggerComb { name: String, env: ObjectWord, bottom: MorTerm },
    Poly { name: String, holes: Vec<Pair>, outer: Vec<Pair>, envs: Vec<ObjectWord>, segments: Vec<MorTerm> },
    Unit { name: String, pair: Pair },
    Counit { name: String, pair: Pair },
}

#[derive(Debug, Clone)]
pub enum Query {
    Compose { first: String, second: String, bind: Option<String> },
    Tensor { left: String, right: String, bind: Option<String> },
    Name(String),
    Lens(String),
    Cpm(String),
    Equiv { relation: Relation, lhs: String, rhs: String, strategy: Option<Strategy> },
    Plug { outer: String, hole: usize, inner: String, pair: usize, bind: Option<String> },
}

#[derive(Debug, Clone)]
pub enum Statement {
    Define(Definition),
    Query(Query),
}

#[derive(Debug, Clone)]
pub struct Located {
    pub line: usize,
    /// The statement as written, without comments.
    pub text: String,
    pub statement: Statement,
}

pub fn parse_program(src: &str) -> Result<Vec<Located>, CliError> {
    let lines = logical_lines(src);
    let mut out = Vec::new();
    let mut idx = 0;
    while idx < lines.len() {
        let start = idx;
        let mut text = lines[idx].text.clone();
        idx += 1;
        while depth(&text) > 0 && idx < lines.len() {
            text.push(' ');
            text.push_str(lines[idx].text.trim());
            idx += 1;
        }
        let line = Line { number: lines[start].number, text };
        let statement = parse_statement(&line)?;
        out.push(Located { line: line.number, text: line.text.trim().to_string(), statement });
    }
    Ok(out)
}

fn depth(s: &str) -> i64 {
    s.chars()
        .map(|c| match c {
            '(' | '[' => 1,
            ')' | ']' => -1,
            _ => 0,
        })
        .sum()
}

fn err(line: &Line, at: &str, message: impl Into<String>) -> CliError {
    CliError::Parse { line: line.number, column: line.column_of(at), message: message.into() }
}

fn ident<'a>(line: &Line, tok: Option<&'a str>, what: &str) -> Result<&'a str, CliError> {
    match tok {
        Some(t) if is_identifier(t) => Ok(t),
        Some(t) => Err(err(line, t, format!("expected {what}, found `{t}`"))),
        None => {
            Err(CliError::Parse { line: line.number, column: line.text.len() + 1, message: format!("expected {what}") })
        }
    }
}

fn number(line: &Line, tok: Option<&str>, what: &str) -> Result<usize, CliError> {
    let t = tok.ok_or_else(|| CliError::Parse {
        line: line.number,
        column: line.text.len() + 1,
        message: format!("expected {what}"),
    })?;
    t.parse().map_err(|_| err(line, t, format!("expected {what}, found `{t}`")))
}

fn term(line: &Line, src: &str) -> Result<MorTerm, CliError> {
    parse_term(src).map_err(|e| CliError::Parse {
        line: line.number,
        column: line.column_of(src) + e.offset,
        message: e.message,
    })
}

fn word(line: &Line, src: &str) -> Result<ObjectWord, CliError> {
    parse_word(src).map_err(|e| CliError::Parse {
        line: line.number,
        column: line.column_of(src) + e.offset,
        message: e.message,
    })
}

/// `(W, W)`
fn pair(line: &Line, src: &str) -> Result<Pair, CliError> {
    let inner = src
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| err(line, src.trim(), "expected `(A, A')`"))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| err(line, inner, "expected `,` inside a pair"))?;
    Ok((word(line, a)?, word(line, b)?))
}

/// Optional trailing `as NAME` or `with STRATEGY`.
fn trailer<'a>(line: &Line, rest: &[&'a str], keyword: &str) -> Result<Option<&'a str>, CliError> {
    match rest {
        [] => Ok(None),
        [k, v] if *k == keyword => Ok(Some(v)),
        [t, ..] => Err(err(line, t, format!("unexpected `{t}`"))),
    }
}

fn bind(line: &Line, rest: &[&str]) -> Result<Option<String>, CliError> {
    trailer(line, rest, "as")?.map(|v| ident(line, Some(v), "a name").map(String::from)).transpose()
}

fn parse_statement(line: &Line) -> Result<Statement, CliError> {
    let text = line.text.as_str();
    let toks: Vec<&str> = text.split_whitespace().collect();
    let head = toks[0];
    let two = |what: &str| -> Result<(String, String), CliError> {
        Ok((ident(line, toks.get(1).copied(), what)?.to_string(), ident(line, toks.get(2).copied(), what)?.to_string()))
    };
    let q = match head {
        "comb" | "dcomb" => return comb_definition(line, head == "dcomb").map(Statement::Define),
        "poly" => return poly_definition(line).map(Statement::Define),
        "unit" | "counit" => {
            let name = ident(line, toks.get(1).copied(), "a name")?.to_string();
            let after = &text[line.column_of(toks[1]) - 1 + toks[1].len()..];
            let pair = pair(line, after)?;
            return Ok(Statement::Define(if head == "unit" {
                Definition::Unit { name, pair }
            } else {
                Definition::Counit { name, pair }
            }));
        }
        "compose" => {
            let (first, second) = two("a comb name")?;
            Query::Compose { first, second, bind: bind(line, &toks[3..])? }
        }
        "tensor" => {
            let (left, right) = two("a comb name")?;
            Query::Tensor { left, right, bind: bind(line, &toks[3..])? }
        }
        "name" | "lens" | "cpm" => {
            let c = ident(line, toks.get(1).copied(), "a comb name")?.to_string();
            if let Some(t) = toks.get(2) {
                return Err(err(line, t, format!("unexpected `{t}`")));
            }
            match head {
                "name" => Query::Name(c),
                "lens" => Query::Lens(c),
                _ => Query::Cpm(c),
            }
        }
        "equiv" => {
            let r = toks.get(1).copied().unwrap_or_default();
            let relation = Relation::parse(r).ok_or_else(|| {
                err(line, if r.is_empty() { text } else { r }, "expected sigma, tau, comb, optic, cpm, cpinf or poly")
            })?;
            let lhs = ident(line, toks.get(2).copied(), "a name")?.to_string();
            let rhs = ident(line, toks.get(3).copied(), "a name")?.to_string();
            let strategy = match trailer(line, toks.get(4..).unwrap_or_default(), "with")? {
                Some(s) => Some(Strategy::parse(s).ok_or_else(|| err(line, s, format!("unknown strategy `{s}`")))?),
                None => None,
            };
            Query::Equiv { relation, lhs, rhs, strategy }
        }
        "plug" => {
            let outer = ident(line, toks.get(1).copied(), "a poly name")?.to_string();
            let hole = number(line, toks.get(2).copied(), "a hole index")?;
            let inner = ident(line, toks.get(3).copied(), "a poly name")?.to_string();
            let pair = number(line, toks.get(4).copied(), "an outer pair index")?;
            Query::Plug { outer, hole, inner, pair, bind: bind(line, toks.get(5..).unwrap_or_default())? }
        }
        other => return Err(err(line, other, format!("unknown statement `{other}`"))),
    };
    Ok(Statement::Query(q))
}

/// `comb NAME env WORD = BOTTOM | TOP` or `dcomb NAME env WORD = BOTTOM`.
fn comb_definition(line: &Line, dagger: bool) -> Result<Definition, CliError> {
    let text = line.text.as_str();
    let (head, body) = text.split_once('=').ok_or_else(|| err(line, text.trim(), "expected `=`"))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    let name = ident(line, toks.get(1).copied(), "a name")?.to_string();
    if toks.get(2) != Some(&"env") {
        return Err(err(line, toks.get(2).copied().unwrap_or(head), "expected `env`"));
    }
    let env_src = &head[line.column_of(toks[2]) - 1 + 3..];
    let env = word(line, env_src)?;
    if dagger {
        return Ok(Definition::DaggerComb { name, env, bottom: term(line, body)? });
    }
    let (b, t) = body.split_once('|').ok_or_else(|| err(line, body.trim(), "expected `BOTTOM | TOP`"))?;
    Ok(Definition::Comb { name, env, bottom: term(line, b)?, top: term(line, t)? })
}

/// `poly NAME holes P* outer P* envs [W]* = S | S | ...`
fn poly_definition(line: &Line) -> Result<Definition, CliError> {
    let text = line.text.as_str();
    let (head, body) = text.split_once('=').ok_or_else(|| err(line, text.trim(), "expected `=`"))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    let name = ident(line, toks.get(1).copied(), "a name")?.to_string();
    let section = |key: &str| -> Result<&str, CliError> {
        let start = head.find(&format!(" {key}")).ok_or_else(|| err(line, head.trim(), format!("expected `{key}`")))?
            + key.len()
            + 1;
        let end = ["holes", "outer", "envs"]
            .iter()
            .filter_map(|k| head[start..].find(&format!(" {k}")).map(|i| start + i))
            .min()
            .unwrap_or(head.len());
        Ok(&head[start..end])
    };
    let pairs = |src: &str| -> Result<Vec<Pair>, CliError> {
        let mut out = Vec::new();
        let mut rest = src;
        while let Some(open) = rest.find('(') {
            let close = rest[open..].find(')').ok_or_else(|| err(line, &rest[open..], "unclosed `(`"))? + open;
            out.push(pair(line, &rest[open..=close])?);
            rest = &rest[close + 1..];
        }
        Ok(out)
    };
    let holes = pairs(section("holes")?)?;
    let outer = pairs(section("outer")?)?;
    let mut envs = Vec::new();
    let mut rest = section("envs")?;
    while let Some(open) = rest.find('[') {
        let close = rest[open..].find(']').ok_or_else(|| err(line, &rest[open..], "unclosed `[`"))? + open;
        envs.push(word(line, &rest[open + 1..close])?);
        rest = &rest[close + 1..];
    }
    let segments = body.split('|').map(|s| term(line, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Definition::Poly { name, holes, outer, envs, segments })
}
