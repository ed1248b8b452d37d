//! Closed morphism expressions and their evaluation in a backend.
//!
//! The textual form is `f ; g` for "f then g" and `f * g` for the tensor, with
//! `*` binding tighter than `;`.

use std::fmt;

use crate::backend::Backend;
use crate::error::{Error, Result};
use crate::object::ObjectWord;

#[derive(Debug, Clone, PartialEq)]
pub enum MorTerm {
    Generator(String),
    Identity(ObjectWord),
    Symmetry(ObjectWord, ObjectWord),
    /// First, then second.
    Compose(Box<MorTerm>, Box<MorTerm>),
    Tensor(Box<MorTerm>, Box<MorTerm>),
    Literal {
        dom: ObjectWord,
        cod: ObjectWord,
        value: serde_json::Value,
    },
    Dagger(Box<MorTerm>),
    Conjugate(Box<MorTerm>),
    Copy(ObjectWord),
    Delete(ObjectWord),
    /// `η_X : I → X* ⊗ X`
    Cup(ObjectWord),
    /// `ε_X : X ⊗ X* → I`
    Cap(ObjectWord),
}

impl MorTerm {
    pub fn gen(name: &str) -> Self {
        MorTerm::Generator(name.to_string())
    }

    pub fn then(self, next: MorTerm) -> Self {
        MorTerm::Compose(Box::new(self), Box::new(next))
    }

    pub fn tensor(self, right: MorTerm) -> Self {
        MorTerm::Tensor(Box::new(self), Box::new(right))
    }

    /// Domain and codomain, computed from generator signatures only.
    pub fn typing<B: Backend + ?Sized>(&self, b: &B) -> Result<(ObjectWord, ObjectWord)> {
        match self {
            MorTerm::Generator(name) => b.generator_type(name).ok_or_else(|| Error::UnknownGenerator(name.clone())),
            MorTerm::Identity(x) => {
                b.check_object(x)?;
                Ok((x.clone(), x.clone()))
            }
            MorTerm::Symmetry(x, y) => {
                b.check_object(x)?;
                b.check_object(y)?;
                Ok((x.tensor(y), y.tensor(x)))
            }
            MorTerm::Compose(first, second) => {
                let (d1, c1) = first.typing(b)?;
                let (d2, c2) = second.typing(b)?;
                if !b.same_object(&c1, &d2) {
                    return Err(Error::mismatch(self.to_string(), &c1, &d2));
                }
                Ok((d1, c2))
            }
            MorTerm::Tensor(l, r) => {
                let (d1, c1) = l.typing(b)?;
                let (d2, c2) = r.typing(b)?;
                Ok((d1.tensor(&d2), c1.tensor(&c2)))
            }
            MorTerm::Literal { dom, cod, .. } => {
                b.check_object(dom)?;
                b.check_object(cod)?;
                Ok((dom.clone(), cod.clone()))
            }
            MorTerm::Dagger(t) => {
                if !b.capabilities().dagger {
                    return Err(Error::IncompatibleStrategy { strategy: "dagger".into(), backend: b.kind() });
                }
                let (d, c) = t.typing(b)?;
                Ok((c, d))
            }
            MorTerm::Conjugate(t) => {
                if !b.capabilities().complex_scalars {
                    return Err(Error::NotDaggerBackend(b.kind()));
                }
                t.typing(b)
            }
            MorTerm::Copy(x) => {
                b.cartesian().ok_or(Error::NotCartesian(b.kind()))?;
                Ok((x.clone(), x.tensor(x)))
            }
            MorTerm::Delete(x) => {
                b.cartesian().ok_or(Error::NotCartesian(b.kind()))?;
                Ok((x.clone(), ObjectWord::unit()))
            }
            MorTerm::Cup(x) => {
                let cc = b.compact().ok_or(Error::NotCompactClosed(b.kind()))?;
                Ok((ObjectWord::unit(), cc.dual(x).tensor(x)))
            }
            MorTerm::Cap(x) => {
                let cc = b.compact().ok_or(Error::NotCompactClosed(b.kind()))?;
                Ok((x.tensor(&cc.dual(x)), ObjectWord::unit()))
            }
        }
    }

    pub fn eval<B: Backend + ?Sized>(&self, b: &B) -> Result<B::Mor> {
        match self {
            MorTerm::Generator(name) => b.generator(name),
            MorTerm::Identity(x) => {
                b.check_object(x)?;
                Ok(b.identity(x))
            }
            MorTerm::Symmetry(x, y) => {
                b.check_object(x)?;
                b.check_object(y)?;
                Ok(b.symmetry(x, y))
            }
            MorTerm::Compose(first, second) => {
                let m1 = first.eval(b)?;
                let m2 = second.eval(b)?;
                b.compose(&m1, &m2).map_err(|e| match e {
                    Error::TypeMismatch { expected, found, .. } => {
                        Error::TypeMismatch { context: self.to_string(), expected, found }
                    }
                    other => other,
                })
            }
            MorTerm::Tensor(l, r) => Ok(b.tensor(&l.eval(b)?, &r.eval(b)?)),
            MorTerm::Literal { dom, cod, value } => b.literal(dom, cod, value),
            MorTerm::Dagger(t) => {
                let m = t.eval(b)?;
                b.dagger(&m).ok_or(Error::IncompatibleStrategy { strategy: "dagger".into(), backend: b.kind() })
            }
            MorTerm::Conjugate(t) => {
                let m = t.eval(b)?;
                b.conjugate(&m).ok_or(Error::NotDaggerBackend(b.kind()))
            }
            MorTerm::Copy(x) => Ok(b.cartesian().ok_or(Error::NotCartesian(b.kind()))?.copy(x)),
            MorTerm::Delete(x) => Ok(b.cartesian().ok_or(Error::NotCartesian(b.kind()))?.delete(x)),
            MorTerm::Cup(x) => Ok(b.compact().ok_or(Error::NotCompactClosed(b.kind()))?.unit(x)),
            MorTerm::Cap(x) => Ok(b.compact().ok_or(Error::NotCompactClosed(b.kind()))?.counit(x)),
        }
    }

    /// Literal term for a backend value, suitable for re-parsing.
    pub fn literal_of<B: Backend + ?Sized>(b: &B, m: &B::Mor) -> Self {
        MorTerm::Literal { dom: b.dom(m), cod: b.cod(m), value: b.render(m) }
    }
}

fn fmt_word(w: &ObjectWord) -> String {
    w.to_string()
}

impl fmt::Display for MorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorTerm::Generator(n) => f.write_str(n),
            MorTerm::Identity(x) => write!(f, "id({})", fmt_word(x)),
            MorTerm::Symmetry(x, y) => write!(f, "swap({}, {})", fmt_word(x), fmt_word(y)),
            MorTerm::Compose(a, b) => write!(f, "({a} ; {b})"),
            MorTerm::Tensor(a, b) => write!(f, "({a} * {b})"),
            MorTerm::Literal { dom, cod, value } => {
                write!(f, "lit({} -> {}) {}", fmt_word(dom), fmt_word(cod), value)
            }
            MorTerm::Dagger(t) => write!(f, "dagger({t})"),
            MorTerm::Conjugate(t) => write!(f, "conj({t})"),
            MorTerm::Copy(x) => write!(f, "copy({})", fmt_word(x)),
            MorTerm::Delete(x) => write!(f, "del({})", fmt_word(x)),
            MorTerm::Cup(x) => write!(f, "cup({})", fmt_word(x)),
            MorTerm::Cap(x) => write!(f, "cap({})", fmt_word(x)),
        }
    }
}

/// A syntax error in a term, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for TermParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for TermParseError {}

type ParseResult<T> = std::result::Result<T, TermParseError>;

/// Parses the syntax produced by `Display`: `;` composes, `*` tensors and
/// binds tighter, and `id`, `swap`, `lit`, `dagger`, `conj`, `copy`, `del`,
/// `cup`, `cap` are the built-in forms. Any other identifier is a generator.
pub fn parse_term(src: &str) -> ParseResult<MorTerm> {
    let mut p = Parser { src, pos: 0 };
    let t = p.sequence()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

/// Parses an object word: space-separated generator names, with `I` for the unit.
pub fn parse_word(src: &str) -> ParseResult<ObjectWord> {
    let mut p = Parser { src, pos: 0 };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(w)
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_') && chars.all(ident_char)
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> TermParseError {
        TermParseError { offset: self.pos, message: message.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> ParseResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{tok}`")))
        }
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let rest = self.rest();
        let first = rest.chars().next()?;
        if !(first.is_alphabetic() || first == '_') {
            return None;
        }
        let len = rest.find(|c: char| !ident_char(c)).unwrap_or(rest.len());
        let start = self.pos;
        self.pos += len;
        Some(&self.src[start..start + len])
    }

    fn word(&mut self) -> ParseResult<ObjectWord> {
        let mut factors = Vec::new();
        loop {
            let save = self.pos;
            match self.ident() {
                Some("I") => {}
                Some(name) => factors.push(name.to_string()),
                None => {
                    self.pos = save;
                    break;
                }
            }
        }
        Ok(ObjectWord::new(factors))
    }

    fn sequence(&mut self) -> ParseResult<MorTerm> {
        let mut t = self.product()?;
        while self.eat(";") {
            t = t.then(self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> ParseResult<MorTerm> {
        let mut t = self.atom()?;
        while self.eat("*") {
            t = t.tensor(self.atom()?);
        }
        Ok(t)
    }

    fn word_arg(&mut self) -> ParseResult<ObjectWord> {
        self.expect("(")?;
        let w = self.word()?;
        self.expect(")")?;
        Ok(w)
    }

    fn term_arg(&mut self) -> ParseResult<MorTerm> {
        self.expect("(")?;
        let t = self.sequence()?;
        self.expect(")")?;
        Ok(t)
    }

    fn atom(&mut self) -> ParseResult<MorTerm> {
        if self.eat("(") {
            let t = self.sequence()?;
            self.expect(")")?;
            return Ok(t);
        }
        let start = self.pos;
        let Some(name) = self.ident() else {
            return Err(self.error("expected a term"));
        };
        let name = name.to_string();
        self.skip_ws();
        // built-in forms take arguments; bare names are generators
        if !self.rest().starts_with('(') {
            return Ok(MorTerm::Generator(name));
        }
        match name.as_str() {
            "id" => Ok(MorTerm::Identity(self.word_arg()?)),
            "copy" => Ok(MorTerm::Copy(self.word_arg()?)),
            "del" => Ok(MorTerm::Delete(self.word_arg()?)),
            "cup" => Ok(MorTerm::Cup(self.word_arg()?)),
            "cap" => Ok(MorTerm::Cap(self.word_arg()?)),
            "dagger" => Ok(MorTerm::Dagger(Box::new(self.term_arg()?))),
            "conj" => Ok(MorTerm::Conjugate(Box::new(self.term_arg()?))),
            "swap" => {
                self.expect("(")?;
                let x = self.word()?;
                self.expect(",")?;
                let y = self.word()?;
                self.expect(")")?;
                Ok(MorTerm::Symmetry(x, y))
            }
            "lit" => {
                self.expect("(")?;
                let dom = self.word()?;
                self.expect("->")?;
                let cod = self.word()?;
                self.expect(")")?;
                self.skip_ws();
                let mut stream = serde_json::Deserializer::from_str(self.rest()).into_iter::<serde_json::Value>();
                match stream.next() {
                    Some(Ok(value)) => {
                        self.pos += stream.byte_offset();
                        Ok(MorTerm::Literal { dom, cod, value })
                    }
                    Some(Err(e)) => Err(self.error(format!("bad literal: {e}"))),
                    None => Err(self.error("expected a literal value")),
                }
            }
            _ => {
                self.pos = start;
                Err(self.error(format!("`{name}` is not a built-in form")))
            }
        }
    }
}
