//! The line-oriented algebra definition format.
//!
//! ```text
//! algebra P2 dimension 2
//! basis one:0 h:1 h2:2
//! product h * h = h2
//! integral h2 = 1
//! cone ray (1)
//! canonical (-3)
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Products with the
//! identity are implicit, products whose codimensions add up past the socle
//! degree are implicitly zero, and every other product must be listed.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::GradedAlgebra;
use crate::degrees::{CanonicalClass, ConeGenerators, ConeSpec};
use crate::linalg::Q;

const KEYWORDS: &[&str] = &["algebra", "dimension", "basis", "product", "integral", "cone", "canonical"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConeKind {
    #[default]
    Ray,
    Ineq,
}

/// Parsed definition, kept close to the text so it can be printed back.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Definition {
    pub name: String,
    pub n: u32,
    pub basis: Vec<(String, u32)>,
    /// `(a, b, terms)` in file order; `terms` are `(coefficient, label)`.
    pub products: Vec<(String, String, Vec<(Q, String)>)>,
    pub integrals: Vec<(String, Q)>,
    pub cone_kind: ConeKind,
    pub cone: Vec<Vec<i64>>,
    pub canonical: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    End,
}

impl Tok {
    fn width(&self) -> usize {
        match self {
            Tok::Ident(s) => s.chars().count(),
            Tok::Int(i) => i.to_string().len(),
            Tok::Sym(_) => 1,
            Tok::End => 0,
        }
    }

    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&x| x != '\n') {
                chars.next();
                column += 1;
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&x) = chars.peek() {
                if x.is_ascii_alphanumeric() || x == '_' {
                    s.push(x);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&x) = chars.peek() {
                if x.is_ascii_digit() {
                    s.push(x);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: l, column: col });
        } else if ":*=+-/(),".contains(c) {
            chars.next();
            column += 1;
            out.push(Token { tok: Tok::Sym(c), line: l, column: col });
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                expected: vec![],
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: format!("unexpected {}", t.tok.describe()),
        }
    }

    fn error_at(t: &Token, message: String) -> ParseError {
        ParseError { line: t.line, column: t.column, expected: vec![], message }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => Err(self.error(&[&format!("`{kw}`")])),
        }
    }

    fn ident(&mut self) -> PResult<(String, Token)> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                Ok((s, self.bump()))
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    /// An identifier, possibly continued by `-piece` with no intervening space.
    fn name(&mut self) -> PResult<String> {
        let (mut s, mut last) = self.ident()?;
        loop {
            let dash = self.peek().clone();
            let adjacent = |a: &Token, b: &Token| a.line == b.line && a.column + a.tok.width() == b.column;
            let next = &self.toks[(self.pos + 1).min(self.toks.len() - 1)];
            if dash.tok != Tok::Sym('-') || !adjacent(&last, &dash) || !adjacent(&dash, next) {
                return Ok(s);
            }
            let piece = match &next.tok {
                Tok::Ident(x) => x.clone(),
                Tok::Int(i) => i.to_string(),
                _ => return Ok(s),
            };
            self.bump();
            last = self.bump();
            s.push('-');
            s.push_str(&piece);
        }
    }

    fn sym(&mut self, c: char) -> PResult<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn uint(&mut self) -> PResult<BigInt> {
        match &self.peek().tok {
            Tok::Int(i) => {
                let i = i.clone();
                self.bump();
                Ok(i)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn small_uint(&mut self) -> PResult<u32> {
        let t = self.peek().clone();
        let i = self.uint()?;
        u32::try_from(i).map_err(|_| Self::error_at(&t, "integer out of range".into()))
    }

    fn int(&mut self) -> PResult<i64> {
        let t = self.peek().clone();
        let neg = if self.peek().tok == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let i = self.uint()?;
        let i = if neg { -i } else { i };
        i64::try_from(i).map_err(|_| Self::error_at(&t, "integer out of range".into()))
    }

    fn rat(&mut self) -> PResult<Q> {
        let neg = if self.peek().tok == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let num = self.uint()?;
        let den = if self.peek().tok == Tok::Sym('/') {
            self.bump();
            let t = self.peek().clone();
            let d = self.uint()?;
            if d.is_zero() {
                return Err(Self::error_at(&t, "zero denominator".into()));
            }
            d
        } else {
            BigInt::one()
        };
        let q = Q::new(num, den);
        Ok(if neg { -q } else { q })
    }

    fn starts_rat(&self) -> bool {
        matches!(self.peek().tok, Tok::Int(_)) || (self.peek().tok == Tok::Sym('-') && matches!(self.peek_at(1), Tok::Int(_)))
    }

    fn term(&mut self) -> PResult<(Q, String, Token)> {
        let coef = if self.starts_rat() { self.rat()? } else { Q::one() };
        let (label, t) = self.ident()?;
        Ok((coef, label, t))
    }

    fn lincomb(&mut self) -> PResult<Vec<(Q, String, Token)>> {
        // The bare `0`.
        if self.peek().tok == Tok::Int(BigInt::zero()) && !matches!(self.peek_at(1), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str())) && *self.peek_at(1) != Tok::Sym('/') {
            self.bump();
            return Ok(Vec::new());
        }
        let mut out = vec![self.term()?];
        loop {
            let sign = match self.peek().tok {
                Tok::Sym('+') => Q::one(),
                Tok::Sym('-') => -Q::one(),
                _ => break,
            };
            self.bump();
            let (c, l, t) = self.term()?;
            out.push((c * sign, l, t));
        }
        Ok(out)
    }

    fn vector(&mut self) -> PResult<Vec<i64>> {
        self.sym('(')?;
        let mut out = vec![self.int()?];
        while self.peek().tok == Tok::Sym(',') {
            self.bump();
            out.push(self.int()?);
        }
        self.sym(')')?;
        Ok(out)
    }
}

/// Parses a definition file. Unknown labels, duplicate or missing products and
/// conflicting cone forms are reported with positions; algebraic consistency is
/// left to the validator.
pub fn parse_definition(text: &str) -> Result<Definition, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut def = Definition::default();
    p.keyword("algebra")?;
    def.name = p.name()?;
    p.keyword("dimension")?;
    def.n = p.small_uint()?;
    let mut known: Vec<String> = Vec::new();
    let mut cone_seen: Option<ConeKind> = None;
    let check_label = |known: &[String], label: &str, t: &Token| -> PResult<()> {
        if known.iter().any(|k| k == label) {
            Ok(())
        } else {
            Err(Parser::error_at(t, format!("unknown basis label `{label}`")))
        }
    };
    let mut listed: BTreeSet<(String, String)> = BTreeSet::new();
    loop {
        let start = p.peek().clone();
        let kw = match &start.tok {
            Tok::End => break,
            Tok::Ident(s) if KEYWORDS[2..].contains(&s.as_str()) => s.clone(),
            _ => return Err(p.error(&["`basis`", "`product`", "`integral`", "`cone`", "`canonical`", "end of input"])),
        };
        p.bump();
        match kw.as_str() {
            "basis" => {
                let mut any = false;
                while matches!(&p.peek().tok, Tok::Ident(s) if !KEYWORDS.contains(&s.as_str())) {
                    let (label, t) = p.ident()?;
                    p.sym(':')?;
                    let c = p.small_uint()?;
                    if known.contains(&label) {
                        return Err(Parser::error_at(&t, format!("duplicate basis label `{label}`")));
                    }
                    known.push(label.clone());
                    def.basis.push((label, c));
                    any = true;
                }
                if !any {
                    return Err(p.error(&["identifier"]));
                }
            }
            "product" => {
                let (a, ta) = p.ident()?;
                check_label(&known, &a, &ta)?;
                p.sym('*')?;
                let (b, tb) = p.ident()?;
                check_label(&known, &b, &tb)?;
                p.sym('=')?;
                let terms = p.lincomb()?;
                for (_, l, t) in &terms {
                    check_label(&known, l, t)?;
                }
                let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                if !listed.insert(key) {
                    return Err(Parser::error_at(&start, format!("product {a} * {b} listed twice")));
                }
                def.products.push((a, b, terms.into_iter().map(|(c, l, _)| (c, l)).collect()));
            }
            "integral" => {
                let (a, ta) = p.ident()?;
                check_label(&known, &a, &ta)?;
                p.sym('=')?;
                let v = p.rat()?;
                def.integrals.push((a, v));
            }
            "cone" => {
                let kind = match &p.peek().tok {
                    Tok::Ident(s) if s == "ray" => ConeKind::Ray,
                    Tok::Ident(s) if s == "ineq" => ConeKind::Ineq,
                    _ => return Err(p.error(&["`ray`", "`ineq`"])),
                };
                p.bump();
                if cone_seen.is_some_and(|k| k != kind) {
                    return Err(Parser::error_at(&start, "cannot mix `cone ray` and `cone ineq`".into()));
                }
                cone_seen = Some(kind);
                def.cone_kind = kind;
                def.cone.push(p.vector()?);
            }
            "canonical" => {
                if def.canonical.is_some() {
                    return Err(Parser::error_at(&start, "canonical class given twice".into()));
                }
                def.canonical = Some(p.vector()?);
            }
            _ => unreachable!(),
        }
    }
    let end = p.peek().clone();
    if def.basis.is_empty() {
        return Err(Parser::error_at(&end, "missing `basis`".into()));
    }
    if def.cone.is_empty() {
        return Err(Parser::error_at(&end, "missing `cone`".into()));
    }
    for (x, (a, ca)) in def.basis.iter().enumerate() {
        for (b, cb) in &def.basis[x..] {
            if *ca == 0 || *cb == 0 || ca + cb > def.n {
                continue;
            }
            let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            if !listed.contains(&key) {
                return Err(Parser::error_at(&end, format!("product {a} * {b} is not listed")));
            }
        }
    }
    Ok(def)
}

fn write_rat(out: &mut String, q: &Q) {
    out.push_str(&q.to_string());
}

fn write_lincomb(out: &mut String, terms: &[(Q, String)]) {
    if terms.is_empty() {
        out.push('0');
        return;
    }
    for (i, (c, l)) in terms.iter().enumerate() {
        if i == 0 {
            if !c.is_one() {
                write_rat(out, c);
                out.push(' ');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            let a = c.abs();
            if !a.is_one() {
                write_rat(out, &a);
                out.push(' ');
            }
        }
        out.push_str(l);
    }
}

fn write_vector(out: &mut String, v: &[i64]) {
    out.push('(');
    out.push_str(&v.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    out.push(')');
}

/// Prints in the canonical layout. `parse_definition(print_definition(d)) == d`.
pub fn print_definition(def: &Definition) -> String {
    let mut out = String::new();
    out.push_str(&format!("algebra {} dimension {}\n", def.name, def.n));
    out.push_str("basis");
    for (l, c) in &def.basis {
        out.push_str(&format!(" {l}:{c}"));
    }
    out.push('\n');
    for (a, b, terms) in &def.products {
        out.push_str(&format!("product {a} * {b} = "));
        write_lincomb(&mut out, terms);
        out.push('\n');
    }
    for (a, v) in &def.integrals {
        out.push_str(&format!("integral {a} = "));
        write_rat(&mut out, v);
        out.push('\n');
    }
    for v in &def.cone {
        out.push_str(match def.cone_kind {
            ConeKind::Ray => "cone ray ",
            ConeKind::Ineq => "cone ineq ",
        });
        write_vector(&mut out, v);
        out.push('\n');
    }
    if let Some(k) = &def.canonical {
        out.push_str("canonical ");
        write_vector(&mut out, k);
        out.push('\n');
    }
    out
}

impl Definition {
    /// The raw multiplication table.
    pub fn algebra(&self) -> GradedAlgebra {
        let basis: Vec<(&str, u32)> = self.basis.iter().map(|(l, c)| (l.as_str(), *c)).collect();
        let mut raw = GradedAlgebra::new(self.name.clone(), self.n, &basis);
        for (a, b, terms) in &self.products {
            let t: Vec<(Q, &str)> = terms.iter().map(|(c, l)| (c.clone(), l.as_str())).collect();
            raw.set_product_terms(a, b, &t);
        }
        for (a, v) in &self.integrals {
            let i = raw.index_of(a).expect("checked label");
            raw.set_integral(i, v.clone());
        }
        raw
    }

    pub fn cone_spec(&self) -> ConeSpec {
        match self.cone_kind {
            ConeKind::Ray => ConeSpec { generators: ConeGenerators::Rays(self.cone.clone()), omega: None },
            ConeKind::Ineq => ConeSpec { generators: ConeGenerators::Inequalities(self.cone.clone()), omega: None },
        }
    }

    pub fn canonical_class(&self) -> Option<CanonicalClass> {
        self.canonical.as_ref().map(|k| CanonicalClass::from_ints(k))
    }

    /// Definition text for an existing algebra. Canonical coordinates must be integral.
    pub fn from_parts(raw: &GradedAlgebra, cone: &ConeSpec, k: Option<&CanonicalClass>) -> Definition {
        let label = |i: usize| raw.labels[i].clone();
        let products = raw
            .listed_products()
            .map(|(&(a, b), v)| {
                let terms = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(x, c)| (c.clone(), label(x))).collect();
                (label(a), label(b), terms)
            })
            .collect();
        let integrals = raw
            .integral
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (label(i), v.clone()))
            .collect();
        let (cone_kind, gens) = match &cone.generators {
            ConeGenerators::Rays(r) => (ConeKind::Ray, r.clone()),
            ConeGenerators::Inequalities(h) => (ConeKind::Ineq, h.clone()),
        };
        let canonical = k.map(|k| {
            k.k.iter()
                .map(|x| {
                    assert!(x.is_integer(), "canonical class must be integral to print");
                    i64::try_from(x.to_integer()).expect("small")
                })
                .collect()
        });
        Definition {
            name: raw.name.clone(),
            n: raw.n,
            basis: raw.labels.iter().cloned().zip(raw.codims.iter().copied()).collect(),
            products,
            integrals,
            cone_kind,
            cone: gens,
            canonical,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, q_frac};

    const P2: &str = "algebra P2 dimension 2\nbasis one:0 h:1 h2:2\nproduct h * h = h2\nintegral h2 = 1\ncone ray (1)\ncanonical (-3)\n";

    #[test]
    fn parses_p2() {
        let d = parse_definition(P2).unwrap();
        assert_eq!(d.name, "P2");
        assert_eq!(d.products, vec![("h".to_string(), "h".to_string(), vec![(q(1), "h2".to_string())])]);
        assert_eq!(d.canonical, Some(vec![-3]));
        assert_eq!(print_definition(&d), P2);
    }

    #[test]
    fn dashed_names() {
        let text = P2.replace("algebra P2", "algebra toric-ex2");
        let d = parse_definition(&text).unwrap();
        assert_eq!(d.name, "toric-ex2");
        assert_eq!(print_definition(&d), text);
        assert!(parse_definition(&P2.replace("algebra P2", "algebra toric -ex2")).is_err());
    }

    #[test]
    fn unknown_label_is_named() {
        let text = "algebra X dimension 2\nbasis one:0 h:1\nproduct h * h = h2\n";
        let e = parse_definition(text).unwrap_err();
        assert!(e.message.contains("h2"), "{e}");
        assert_eq!((e.line, e.column), (3, 17));
    }

    #[test]
    fn rational_terms() {
        let text = "algebra G dimension 4\nbasis one:0 a:2 b:2 t6:4 t7:4\n\
                    product a * a = t6 - 11/3 t7 # comment\nproduct a * b = -2 t6 + t7\nproduct b * b = 0\n\
                    integral t6 = 1\ncone ineq (1)\n";
        let d = parse_definition(text).unwrap();
        assert_eq!(d.products[0].2, vec![(q(1), "t6".into()), (q_frac(-11, 3), "t7".into())]);
        assert_eq!(d.products[1].2, vec![(q(-2), "t6".into()), (q(1), "t7".into())]);
        assert!(d.products[2].2.is_empty());
        assert_eq!(parse_definition(&print_definition(&d)).unwrap(), d);
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse_definition("algebra P2 dimension\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.expected, vec!["integer".to_string()]);
        let e = parse_definition("algebra P2 dimension 2\nbasis one:0 h:1 h2:2\nintegral h2 = 1\ncone ray (1)\n").unwrap_err();
        assert!(e.message.contains("h * h"));
        let e = parse_definition("algebra P2 dimension 2\nbasis one:0 h:1\ncone ray (1)\ncone ineq (1)\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_definition("algebra P2 dimension 2\nbasis one:0 h:1 h2:2\nproduct h * h = h2\nproduct h * h = 0\ncone ray (1)\n")
            .unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_definition("algebra P2 dimension 2 $").unwrap_err();
        assert_eq!(e.column, 24);
    }
}
