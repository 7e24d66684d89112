//! Text front end: r-matrix documents, algebra elements, gauge words and
//! fixtures, with a canonical printer.
//!
//! ```text
//! document := header term (('+'|'-') term)* ;
//! header   := 'algebra' 'sl' '(' INT ')' ';' ;
//! term     := [coeff '*'] factor ;
//! factor   := 'Omega' | basis '(x)' basis ;
//! basis    := 'E' '(' INT ',' INT ')' | 'H' '(' INT ')' | 'e' | 'f' | 'h' ;
//! ```

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::cybe::calibrated_casimir;
use crate::doubles::{case4_model, ModelSubspace, Window};
use crate::frobenius::TwoCocycle;
use crate::gauge::PolyGroupElement;
use crate::lie::{make_sl, BasisLabel, GElement, GPoly, GSubspace, LieTable};
use crate::linalg::Row;
use crate::ratfun::{RatFun, Var, Q};
use crate::tensor::Tensor2;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Bar,
    Equals,
    Tensor,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::LBracket => f.write_str("["),
            Tok::RBracket => f.write_str("]"),
            Tok::Comma => f.write_str(","),
            Tok::Semi => f.write_str(";"),
            Tok::Colon => f.write_str(":"),
            Tok::Bar => f.write_str("|"),
            Tok::Equals => f.write_str("="),
            Tok::Tensor => f.write_str("(x)"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
    start: usize,
    end: usize,
}

fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let mut len = 1;
        let tok = if c.is_ascii_digit() {
            while i + len < chars.len() && chars[i + len].1.is_ascii_digit() {
                len += 1;
            }
            let end = chars.get(i + len).map_or(src.len(), |x| x.0);
            Tok::Int(src[off..end].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i + len < chars.len()
                && (chars[i + len].1.is_ascii_alphanumeric() || chars[i + len].1 == '_')
            {
                len += 1;
            }
            let end = chars.get(i + len).map_or(src.len(), |x| x.0);
            Tok::Ident(src[off..end].to_string())
        } else if src[off..].starts_with("(x)") {
            len = 3;
            Tok::Tensor
        } else {
            match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '|' => Tok::Bar,
                '=' => Tok::Equals,
                other => return Err(parse_error(pos, format!("unexpected character '{other}'"))),
            }
        };
        let end = chars.get(i + len).map_or(src.len(), |x| x.0);
        out.push(Token {
            tok,
            pos,
            start: off,
            end,
        });
        i += len;
        column += len;
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}

/// Right-hand side of a document term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Omega,
    Pair(BasisLabel, BasisLabel),
}

/// One signed term as written in the source.
#[derive(Debug, Clone, PartialEq)]
pub struct DocTerm {
    pub negated: bool,
    /// Coefficient as written, `"1"` when omitted.
    pub coeff_text: String,
    /// Signed value of the coefficient.
    pub coeff: RatFun,
    pub factor: Factor,
    pub pos: Pos,
}

#[derive(Debug, Clone)]
pub struct RMatrixDocument {
    pub n: usize,
    pub terms: Vec<DocTerm>,
    tensor: Tensor2,
}

impl RMatrixDocument {
    pub fn table(&self) -> &Arc<LieTable> {
        self.tensor.table()
    }

    pub fn tensor(&self) -> &Tensor2 {
        &self.tensor
    }

    pub fn into_tensor(self) -> Tensor2 {
        self.tensor
    }

    pub fn canonical(&self) -> String {
        print_rmatrix(&self.tensor)
    }
}

struct Term<F> {
    negated: bool,
    coeff: RatFun,
    text: String,
    factor: F,
    pos: Pos,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    i: usize,
    table: Option<Arc<LieTable>>,
}

const BASIS_WORDS: [&str; 5] = ["E", "H", "e", "f", "h"];

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            i: 0,
            table: None,
        })
    }

    fn with_table(src: &'a str, table: &Arc<LieTable>) -> Result<Self> {
        let mut p = Parser::new(src)?;
        p.table = Some(table.clone());
        Ok(p)
    }

    fn peek(&self) -> &Tok {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        parse_error(self.pos(), msg)
    }

    fn expect(&mut self, tok: Tok) -> Result<Token> {
        if *self.peek() == tok {
            Ok(self.next())
        } else {
            Err(self.error(format!("expected '{tok}', found '{}'", self.peek())))
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.next();
                Ok(())
            }
            other => Err(self.error(format!("expected '{word}', found '{other}'"))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            other => Err(self.error(format!("unexpected '{other}'"))),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            other => Err(self.error(format!("expected an integer, found '{other}'"))),
        }
    }

    fn small_int(&mut self, what: &str) -> Result<i64> {
        let pos = self.pos();
        let neg = self.eat(&Tok::Minus);
        let n = self.int()?;
        let n = n
            .to_i64()
            .ok_or_else(|| parse_error(pos, format!("{what} is too large")))?;
        Ok(if neg { -n } else { n })
    }

    fn table(&self) -> &Arc<LieTable> {
        self.table.as_ref().expect("algebra declared")
    }

    fn header(&mut self) -> Result<Arc<LieTable>> {
        self.expect_word("algebra")?;
        self.expect_word("sl")?;
        self.expect(Tok::LParen)?;
        let pos = self.pos();
        let n = self.int()?;
        let n = n
            .to_usize()
            .filter(|n| (2..=8).contains(n))
            .ok_or_else(|| parse_error(pos, "rank must be between 2 and 8"))?;
        self.expect(Tok::RParen)?;
        self.expect(Tok::Semi)?;
        let t = make_sl(n)?;
        self.table = Some(t.clone());
        Ok(t)
    }

    // coefficient grammar

    fn expr(&mut self) -> Result<RatFun> {
        let neg = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let mut acc = self.product()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.product()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<RatFun> {
        let mut acc = self.power()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.power()?;
            } else if *self.peek() == Tok::Slash {
                acc = self.divide(acc)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&mut self, acc: RatFun) -> Result<RatFun> {
        self.expect(Tok::Slash)?;
        let pos = self.pos();
        let d = self.power()?;
        acc.div(&d)
            .map_err(|_| parse_error(pos, "division by zero"))
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let pos = self.pos();
        let e = self.int()?;
        let e = e
            .to_u32()
            .filter(|e| *e <= 256)
            .ok_or_else(|| parse_error(pos, "exponent must be a non-negative integer up to 256"))?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<RatFun> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(RatFun::constant(Q::from_integer(n)))
            }
            Tok::Ident(s) if s == "u" || s == "v" => {
                self.next();
                Ok(RatFun::var(Var::named(&s)))
            }
            Tok::Ident(s) => Err(parse_error(
                pos,
                format!("unknown symbol '{s}' in coefficient"),
            )),
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(parse_error(pos, format!("unexpected '{other}'"))),
        }
    }

    fn constant(&mut self) -> Result<Q> {
        let pos = self.pos();
        self.expr()?
            .constant_value()
            .ok_or_else(|| parse_error(pos, "expected a rational constant"))
    }

    // terms

    fn at_word(&self, k: usize, words: &[&str]) -> bool {
        matches!(self.peek_at(k), Tok::Ident(s) if words.contains(&s.as_str()))
    }

    fn basis(&mut self) -> Result<BasisLabel> {
        let pos = self.pos();
        let n = self.table().n();
        let word = match self.next().tok {
            Tok::Ident(s) => s,
            other => {
                return Err(parse_error(
                    pos,
                    format!("expected a basis element, found '{other}'"),
                ))
            }
        };
        let label = match word.as_str() {
            "e" | "f" | "h" if n != 2 => {
                return Err(parse_error(
                    pos,
                    format!("alias '{word}' is only valid in sl(2), not sl({n})"),
                ))
            }
            "e" => BasisLabel::E(1, 2),
            "f" => BasisLabel::E(2, 1),
            "h" => BasisLabel::H(1),
            "E" => {
                self.expect(Tok::LParen)?;
                let i = self.small_int("index")?;
                self.expect(Tok::Comma)?;
                let j = self.small_int("index")?;
                self.expect(Tok::RParen)?;
                if i < 1 || j < 1 || i == j || i as usize > n || j as usize > n {
                    return Err(parse_error(
                        pos,
                        format!("E({i},{j}) is not a basis element of sl({n})"),
                    ));
                }
                BasisLabel::E(i as usize, j as usize)
            }
            "H" => {
                self.expect(Tok::LParen)?;
                let i = self.small_int("index")?;
                self.expect(Tok::RParen)?;
                if i < 1 || i as usize >= n {
                    return Err(parse_error(
                        pos,
                        format!("H({i}) is not a basis element of sl({n})"),
                    ));
                }
                BasisLabel::H(i as usize)
            }
            other => return Err(parse_error(pos, format!("unknown basis symbol '{other}'"))),
        };
        Ok(label)
    }

    /// `[coeff '*'] factor` where the coefficient is a product of powers.
    fn term<F>(
        &mut self,
        words: &[&str],
        factor: &mut impl FnMut(&mut Self) -> Result<F>,
    ) -> Result<(RatFun, String, F, Pos)> {
        let pos = self.pos();
        if self.at_word(0, words) {
            return Ok((RatFun::one(), "1".into(), factor(self)?, pos));
        }
        let start = self.toks[self.i].start;
        let mut c = self.power()?;
        loop {
            match self.peek() {
                Tok::Star if self.at_word(1, words) => break,
                Tok::Star => {
                    self.next();
                    c = &c * &self.power()?;
                }
                Tok::Slash => c = self.divide(c)?,
                other => {
                    return Err(self.error(format!("expected '*' and a factor, found '{other}'")))
                }
            }
        }
        let end = self.toks[self.i - 1].end;
        self.next();
        let text = self.src[start..end].trim().to_string();
        Ok((c, text, factor(self)?, pos))
    }

    fn signed_terms<F>(
        &mut self,
        words: &[&str],
        mut factor: impl FnMut(&mut Self) -> Result<F>,
    ) -> Result<Vec<Term<F>>> {
        let mut out = Vec::new();
        let mut negated = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let (c, text, f, pos) = self.term(words, &mut factor)?;
            out.push(Term {
                negated,
                coeff: if negated { -&c } else { c },
                text,
                factor: f,
                pos,
            });
            if self.eat(&Tok::Plus) {
                negated = false;
            } else if self.eat(&Tok::Minus) {
                negated = true;
            } else {
                return Ok(out);
            }
        }
    }

    fn doc_factor(&mut self) -> Result<Factor> {
        if self.at_word(0, &["Omega"]) {
            self.next();
            return Ok(Factor::Omega);
        }
        let a = self.basis()?;
        self.expect(Tok::Tensor)?;
        let b = self.basis()?;
        Ok(Factor::Pair(a, b))
    }

    fn is_zero_literal(&self) -> bool {
        matches!(self.peek(), Tok::Int(n) if n.is_zero())
            && !matches!(self.peek_at(1), Tok::Star | Tok::Slash)
    }

    fn element(&mut self) -> Result<GElement> {
        let table = self.table().clone();
        let mut x = GElement::zero_in(&table);
        if self.is_zero_literal() {
            self.next();
            return Ok(x);
        }
        for t in self.signed_terms(&BASIS_WORDS, |p| p.basis())? {
            let c = t
                .coeff
                .constant_value()
                .ok_or_else(|| parse_error(t.pos, "element coefficients must be constants"))?;
            x.add_scaled(table.index_of(t.factor).expect("validated label"), &c);
        }
        Ok(x)
    }

    fn gpoly(&mut self) -> Result<GPoly> {
        let table = self.table().clone();
        let mut out = GPoly::zero_in(&table);
        if self.is_zero_literal() {
            self.next();
            return Ok(out);
        }
        let terms = self.signed_terms(&BASIS_WORDS, |p| {
            let b = p.basis()?;
            if !p.eat(&Tok::Colon) {
                return Ok((b, 0));
            }
            p.expect_word("u")?;
            let d = if p.eat(&Tok::Caret) {
                p.small_int("degree")?
            } else {
                1
            };
            Ok((b, d))
        })?;
        for t in terms {
            let c = t
                .coeff
                .constant_value()
                .ok_or_else(|| parse_error(t.pos, "element coefficients must be constants"))?;
            let (b, d) = t.factor;
            let x = table
                .basis(table.index_of(b).expect("validated label"))
                .scale(&c);
            out.add_term(d, &x);
        }
        Ok(out)
    }

    fn unip_word(&mut self) -> Result<PolyGroupElement> {
        let n = self.table().n();
        if matches!(self.peek(), Tok::Int(k) if k.is_one()) {
            self.next();
            return Ok(PolyGroupElement::identity(n));
        }
        let mut p: Option<PolyGroupElement> = None;
        loop {
            let pos = self.pos();
            self.expect_word("unip")?;
            self.expect(Tok::LParen)?;
            let root = self.basis()?;
            self.expect(Tok::Comma)?;
            let dpos = self.pos();
            let d = self.small_int("degree")?;
            let d =
                u32::try_from(d).map_err(|_| parse_error(dpos, "degree must be non-negative"))?;
            self.expect(Tok::Comma)?;
            let c = self.constant()?;
            self.expect(Tok::RParen)?;
            let f = PolyGroupElement::unip(n, root, d, c)
                .map_err(|e| parse_error(pos, e.to_string()))?;
            p = Some(match p {
                None => f,
                Some(acc) => acc.mul(&f),
            });
            if !self.eat(&Tok::Star) {
                return Ok(p.expect("at least one factor"));
            }
        }
    }
}

/// Parses a full document; `Omega` expands to the calibrated Casimir.
pub fn parse_rmatrix(text: &str) -> Result<RMatrixDocument> {
    let mut p = Parser::new(text)?;
    let table = p.header()?;
    let words = ["Omega", "E", "H", "e", "f", "h"];
    let raw = p.signed_terms(&words, |p| p.doc_factor())?;
    p.finish()?;
    let mut tensor = Tensor2::zero(&table);
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        match t.factor {
            Factor::Omega => {
                let om = calibrated_casimir(&table)?;
                tensor = tensor.add(&om.tensor().mul_fn(&t.coeff));
            }
            Factor::Pair(a, b) => {
                let ia = table.index_of(a).expect("validated label");
                let ib = table.index_of(b).expect("validated label");
                tensor.add_term(ia, ib, &t.coeff);
            }
        }
        terms.push(DocTerm {
            negated: t.negated,
            coeff_text: t.text,
            coeff: t.coeff,
            factor: t.factor,
            pos: t.pos,
        });
    }
    Ok(RMatrixDocument {
        n: table.n(),
        terms,
        tensor,
    })
}

/// Canonical text: the header followed by every nonzero coefficient in
/// basis-index order. `Omega` is always expanded.
pub fn print_rmatrix(r: &Tensor2) -> String {
    let table = r.table();
    let n = table.n();
    let mut out = format!("algebra sl({n});\n");
    if r.is_zero() {
        let x = table.label(0).display(n);
        out.push_str(&format!("0*{x}(x){x}\n"));
        return out;
    }
    for (k, ((a, b), c)) in r.terms().enumerate() {
        if k > 0 {
            out.push_str("+ ");
        }
        out.push_str(&format!(
            "({c})*{}(x){}\n",
            table.label(*a).display(n),
            table.label(*b).display(n)
        ));
    }
    out
}

/// A coefficient expression in `u`, `v`.
pub fn parse_ratfun(text: &str) -> Result<RatFun> {
    let mut p = Parser::new(text)?;
    let r = p.expr()?;
    p.finish()?;
    Ok(r)
}

/// A linear combination of basis elements, e.g. `2*e - 1/2*h`.
pub fn parse_element(table: &Arc<LieTable>, text: &str) -> Result<GElement> {
    let mut p = Parser::with_table(text, table)?;
    let x = p.element()?;
    p.finish()?;
    Ok(x)
}

/// A Laurent polynomial in `u` with values in `g`, written as terms
/// `[c*]BASIS[:u^D]`, e.g. `e:u^0 - 3*h:u^-2`.
pub fn parse_gpoly(table: &Arc<LieTable>, text: &str) -> Result<GPoly> {
    let mut p = Parser::with_table(text, table)?;
    let x = p.gpoly()?;
    p.finish()?;
    Ok(x)
}

/// A product of `unip(root, degree, scalar)` factors, or `1`.
pub fn parse_gauge(table: &Arc<LieTable>, text: &str) -> Result<PolyGroupElement> {
    let mut p = Parser::with_table(text, table)?;
    let g = p.unip_word()?;
    p.finish()?;
    Ok(g)
}

/// Reads a subalgebra with a 2-form:
///
/// ```text
/// algebra sl(2);
/// L = [e, h];
/// B = [[0, 1], [-1, 0]];
/// ```
pub fn parse_frobenius(text: &str) -> Result<TwoCocycle> {
    let mut p = Parser::new(text)?;
    let table = p.header()?;
    p.expect_word("L")?;
    p.expect(Tok::Equals)?;
    p.expect(Tok::LBracket)?;
    let lpos = p.pos();
    let mut elements = Vec::new();
    if *p.peek() != Tok::RBracket {
        loop {
            elements.push(p.element()?);
            if !p.eat(&Tok::Comma) {
                break;
            }
        }
    }
    p.expect(Tok::RBracket)?;
    p.expect(Tok::Semi)?;
    p.expect_word("B")?;
    p.expect(Tok::Equals)?;
    let bpos = p.pos();
    p.expect(Tok::LBracket)?;
    let mut matrix: Vec<Row> = Vec::new();
    if *p.peek() != Tok::RBracket {
        loop {
            p.expect(Tok::LBracket)?;
            let mut row = Vec::new();
            if *p.peek() != Tok::RBracket {
                loop {
                    row.push(p.constant()?);
                    if !p.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            p.expect(Tok::RBracket)?;
            matrix.push(row);
            if !p.eat(&Tok::Comma) {
                break;
            }
        }
    }
    p.expect(Tok::RBracket)?;
    p.eat(&Tok::Semi);
    p.finish()?;
    let sub = GSubspace::new(&table, elements).map_err(|e| parse_error(lpos, e.to_string()))?;
    TwoCocycle::new(sub, matrix).map_err(|e| match e {
        Error::InvalidInput(m) => parse_error(bpos, m),
        other => other,
    })
}

/// Reads a subspace of the truncated `D₄` model:
///
/// ```text
/// algebra sl(2);
/// window [-2, 1];
/// e:u^-1 | 0 | 0;
/// 0 | h | 0;
/// ```
///
/// Each line gives the loop part and the two `g[ε]` components.
pub fn parse_d4_subspace(text: &str) -> Result<ModelSubspace> {
    let mut p = Parser::new(text)?;
    let table = p.header()?;
    p.expect_word("window")?;
    p.expect(Tok::LBracket)?;
    let wpos = p.pos();
    let lo = p.small_int("window bound")?;
    p.expect(Tok::Comma)?;
    let hi = p.small_int("window bound")?;
    p.expect(Tok::RBracket)?;
    p.expect(Tok::Semi)?;
    let window = Window::new(lo, hi).map_err(|e| parse_error(wpos, e.to_string()))?;
    let model = case4_model(&table, window);
    let mut rows = Vec::new();
    while *p.peek() != Tok::Eof {
        let pos = p.pos();
        let lp = p.gpoly()?;
        p.expect(Tok::Bar)?;
        let a0 = p.element()?;
        p.expect(Tok::Bar)?;
        let a1 = p.element()?;
        p.expect(Tok::Semi)?;
        rows.push(
            model
                .row(&lp, &[&a0, &a1])
                .map_err(|e| parse_error(pos, e.to_string()))?,
        );
    }
    Ok(ModelSubspace::spanned_by(&model, &rows))
}

fn random_coeff<R: Rng>(rng: &mut R, depth: u32) -> String {
    let leaf = |rng: &mut R| match rng.gen_range(0..4) {
        0 => "u".to_string(),
        1 => "v".to_string(),
        _ => rng.gen_range(1..=5).to_string(),
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..6) {
        0 => format!(
            "({} + {})",
            random_coeff(rng, depth - 1),
            random_coeff(rng, depth - 1)
        ),
        1 => format!(
            "({} - {})",
            random_coeff(rng, depth - 1),
            random_coeff(rng, depth - 1)
        ),
        2 => format!(
            "{}*{}",
            random_coeff(rng, depth - 1),
            random_coeff(rng, depth - 1)
        ),
        3 => format!(
            "{}/(u - v + {})",
            random_coeff(rng, depth - 1),
            rng.gen_range(0..3)
        ),
        4 => format!("{}^{}", leaf(rng), rng.gen_range(0..3)),
        _ => leaf(rng),
    }
}

fn random_basis<R: Rng>(rng: &mut R, table: &LieTable) -> String {
    let n = table.n();
    let label = table.label(rng.gen_range(0..table.dim()));
    if n == 2 && rng.gen_bool(0.5) {
        label.display(2)
    } else {
        match label {
            BasisLabel::E(i, j) => format!("E({i},{j})"),
            BasisLabel::H(i) => format!("H({i})"),
        }
    }
}

/// A syntactically valid random document, used for round-trip sweeps.
pub fn random_document<R: Rng>(rng: &mut R, n: usize) -> Result<String> {
    let table = make_sl(n)?;
    let mut out = format!("algebra sl({n});");
    let terms = rng.gen_range(1..=4);
    for k in 0..terms {
        let sep = if rng.gen_bool(0.3) { " - " } else { " + " };
        if k > 0 {
            out.push_str(sep);
        } else {
            out.push(' ');
        }
        if rng.gen_bool(0.8) {
            out.push_str(&format!("({})*", random_coeff(rng, 2)));
        }
        if rng.gen_bool(0.2) {
            out.push_str("Omega");
        } else {
            out.push_str(&format!(
                "{}(x){}",
                random_basis(rng, &table),
                random_basis(rng, &table)
            ));
        }
    }
    Ok(out)
}
