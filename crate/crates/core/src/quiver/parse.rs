use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::graph::{Quiver, QuiverError};
use super::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("arrows `{0}` and `{1}` do not compose")]
    NotComposable(String, String),
    #[error("terms of one relation must be parallel")]
    NotParallel,
    #[error("relation term `{0}` has length below 2")]
    RelationTooShort(String),
    #[error("potential term `{0}` is not a closed path")]
    NotClosed(String),
    #[error("`{0}` is not a prime below 2^32")]
    BadPrime(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(u64),
}

/// One `relation` line: an optional label naming the paired new arrow, and
/// a linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub label: Option<String>,
    pub terms: Vec<(BigRational, Path)>,
}

/// Contents of a quiver input file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuiverFile {
    pub name: Option<String>,
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub relations: Vec<RelationSpec>,
    pub potential: Option<Vec<(BigRational, Path)>>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Star,
    Plus,
    Minus,
    Slash,
    Colon,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn lex(s: &str, base_col: usize, line: usize) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = base_col + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '*' => Some(Tok::Star),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[st..i].iter().collect();
            toks.push((Tok::Int(text.parse().unwrap()), col));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[st..i].iter().collect()), col));
        } else {
            return Err(ParseError { line, col, kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")) });
        }
    }
    Ok(Lexed { toks, end_col: base_col + chars.len() })
}

struct TermParser<'a> {
    q: &'a Quiver,
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> TermParser<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, col: self.col(), kind }
    }

    fn syntax(&self, msg: &str) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.to_string()))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn scalar(&mut self) -> Result<Option<BigRational>, ParseError> {
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return Ok(None);
        };
        self.pos += 1;
        let mut value = BigRational::from_integer(n);
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(d)) => {
                    if d.is_zero() {
                        self.pos -= 1;
                        return Err(self.err(ParseErrorKind::ZeroDenominator));
                    }
                    value /= BigRational::from_integer(d);
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.syntax("expected denominator"));
                }
            }
        }
        match self.next() {
            Some(Tok::Star) => Ok(Some(value)),
            _ => {
                self.pos -= 1;
                Err(self.syntax("expected `*` after scalar"))
            }
        }
    }

    fn term(&mut self) -> Result<(BigRational, Path, usize), ParseError> {
        let col = self.col();
        let coeff = self.scalar()?.unwrap_or_else(BigRational::one);
        let mut names = Vec::new();
        loop {
            let acol = self.col();
            match self.next() {
                Some(Tok::Ident(name)) => {
                    let a = self.q.arrow_by_name(&name).map_err(|e| ParseError {
                        line: self.line,
                        col: acol,
                        kind: e.into(),
                    })?;
                    names.push((a, name, acol));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.syntax("expected arrow name"));
                }
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        let mut path = Path::arrow(self.q, names[0].0);
        for w in names.windows(2) {
            let next = Path::arrow(self.q, w[1].0);
            path = path.compose(&next).ok_or_else(|| ParseError {
                line: self.line,
                col: w[1].2,
                kind: ParseErrorKind::NotComposable(w[0].1.clone(), w[1].1.clone()),
            })?;
        }
        Ok((coeff, path, col))
    }

    fn terms(&mut self) -> Result<Vec<(BigRational, Path, usize)>, ParseError> {
        let mut out = Vec::new();
        let mut sign = BigRational::one();
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -sign;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, p, col) = self.term()?;
            out.push((c * &sign, p, col));
            match self.next() {
                None => break,
                Some(Tok::Plus) => sign = BigRational::one(),
                Some(Tok::Minus) => sign = -BigRational::one(),
                Some(_) => {
                    self.pos -= 1;
                    return Err(self.syntax("expected `+` or `-`"));
                }
            }
        }
        Ok(out)
    }
}

fn is_prime_u64(p: u64) -> bool {
    crate::exactlin::is_prime(p)
}

/// Parses the line-oriented quiver format.
pub fn parse_quiver(text: &str) -> Result<QuiverFile, ParseError> {
    let mut file = QuiverFile::default();
    let mut potential_terms: Option<Vec<(BigRational, Path)>> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.chars().count() - trimmed.chars().count();
        let (kw, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], &trimmed[i..]),
            None => (trimmed, ""),
        };
        let rest_col = indent + kw.chars().count() + 1;
        let words: Vec<&str> = rest.split_whitespace().collect();
        let syntax = |col: usize, msg: &str| ParseError { line, col, kind: ParseErrorKind::Syntax(msg.to_string()) };
        match kw {
            "algebra" => {
                if words.len() != 1 {
                    return Err(syntax(rest_col, "expected `algebra <name>`"));
                }
                file.name = Some(words[0].to_string());
            }
            "field" => {
                file.field = match words.as_slice() {
                    ["Q"] => FieldSpec::Rational,
                    ["F", p] | ["Fp", p] => parse_prime(p, line, rest_col)?,
                    [w] if w.starts_with('F') && w.len() > 1 => parse_prime(&w[1..], line, rest_col)?,
                    _ => return Err(syntax(rest_col, "expected `field Q` or `field F <prime>`")),
                };
            }
            "vertices" => {
                for w in words {
                    file.quiver
                        .add_vertex(w)
                        .map_err(|e| ParseError { line, col: rest_col, kind: e.into() })?;
                }
            }
            "arrow" => {
                if words.len() != 3 {
                    return Err(syntax(rest_col, "expected `arrow <name> <source> <target>`"));
                }
                let ok_name = words[0].chars().next().is_some_and(|c| c.is_alphabetic() || c == '_');
                if !ok_name {
                    return Err(syntax(rest_col, "arrow names start with a letter"));
                }
                file.quiver
                    .add_arrow(words[0], words[1], words[2])
                    .map_err(|e| ParseError { line, col: rest_col, kind: e.into() })?;
            }
            "relation" | "potential" => {
                let lexed = lex(rest, indent + kw.chars().count() + 1, line)?;
                let mut toks: &[(Tok, usize)] = &lexed.toks;
                let mut label = None;
                if kw == "relation" && toks.len() >= 2 {
                    if let (Tok::Ident(name), Tok::Colon) = (&toks[0].0, &toks[1].0) {
                        label = Some(name.clone());
                        toks = &toks[2..];
                    }
                }
                if toks.is_empty() {
                    return Err(syntax(lexed.end_col, "expected at least one term"));
                }
                let mut tp = TermParser { q: &file.quiver, toks, pos: 0, line, end_col: lexed.end_col };
                let terms = tp.terms()?;
                if kw == "relation" {
                    let (s, t) = (terms[0].1.start(), terms[0].1.end());
                    for (_, p, col) in &terms {
                        if p.len() < 2 {
                            return Err(ParseError {
                                line,
                                col: *col,
                                kind: ParseErrorKind::RelationTooShort(p.display(&file.quiver)),
                            });
                        }
                        if p.start() != s || p.end() != t {
                            return Err(ParseError { line, col: *col, kind: ParseErrorKind::NotParallel });
                        }
                    }
                    file.relations.push(RelationSpec {
                        label,
                        terms: terms.into_iter().map(|(c, p, _)| (c, p)).collect(),
                    });
                } else {
                    for (_, p, col) in &terms {
                        if !p.is_closed() {
                            return Err(ParseError {
                                line,
                                col: *col,
                                kind: ParseErrorKind::NotClosed(p.display(&file.quiver)),
                            });
                        }
                    }
                    potential_terms
                        .get_or_insert_with(Vec::new)
                        .extend(terms.into_iter().map(|(c, p, _)| (c, p)));
                }
            }
            other => {
                return Err(syntax(indent + 1, &format!("unknown keyword `{other}`")));
            }
        }
    }
    file.potential = potential_terms;
    Ok(file)
}

/// Parses a linear combination of paths, such as `u + v` or `2*mu*gamma`,
/// against an existing quiver.
pub fn parse_terms(q: &Quiver, text: &str) -> Result<Vec<(BigRational, Path)>, ParseError> {
    let lexed = lex(text, 1, 1)?;
    if lexed.toks.is_empty() {
        return Err(ParseError { line: 1, col: lexed.end_col, kind: ParseErrorKind::Syntax("expected at least one term".into()) });
    }
    let mut tp = TermParser { q, toks: &lexed.toks, pos: 0, line: 1, end_col: lexed.end_col };
    Ok(tp.terms()?.into_iter().map(|(c, p, _)| (c, p)).collect())
}

fn parse_prime(s: &str, line: usize, col: usize) -> Result<FieldSpec, ParseError> {
    match s.parse::<u64>() {
        Ok(p) if p < (1 << 32) && is_prime_u64(p) => Ok(FieldSpec::Prime(p)),
        _ => Err(ParseError { line, col, kind: ParseErrorKind::BadPrime(s.to_string()) }),
    }
}

fn write_scalar(out: &mut String, c: &BigRational) {
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

/// Writes `c1*p1 + c2*p2 - ...` with unit coefficients omitted.
pub fn format_terms(q: &Quiver, terms: &[(BigRational, Path)]) -> String {
    let mut out = String::new();
    for (i, (c, p)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if !mag.is_one() {
            write_scalar(&mut out, &mag);
            out.push('*');
        }
        out.push_str(&p.display(q));
    }
    out
}

impl QuiverFile {
    /// Canonical text form; parsing it gives back an equal value.
    pub fn to_text(&self) -> String {
        let q = &self.quiver;
        let mut out = String::new();
        if let Some(n) = &self.name {
            writeln!(out, "algebra {n}").unwrap();
        }
        match self.field {
            FieldSpec::Rational => writeln!(out, "field Q").unwrap(),
            FieldSpec::Prime(p) => writeln!(out, "field F {p}").unwrap(),
        }
        if q.num_vertices() > 0 {
            writeln!(out, "vertices {}", q.vertex_names().join(" ")).unwrap();
        }
        for a in q.arrows() {
            writeln!(out, "arrow {} {} {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target)).unwrap();
        }
        for r in &self.relations {
            out.push_str("relation ");
            if let Some(l) = &r.label {
                write!(out, "{l}: ").unwrap();
            }
            out.push_str(&format_terms(q, &r.terms));
            out.push('\n');
        }
        if let Some(w) = &self.potential {
            writeln!(out, "potential {}", format_terms(q, w)).unwrap();
        }
        out
    }
}
