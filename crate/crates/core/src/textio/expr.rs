//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' factor) | ('/' integer))*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := integer | 'I' | symbol | name | '(' expr ')'
//! symbol := phi<k> | l<k> | c<k> | cb<k>
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken {
        found: String,
        expected: &'static str,
    },
    UnexpectedEnd {
        expected: &'static str,
    },
    /// An anticommuting generator raised to a power of at least two.
    OddPower(String),
    DivisionByZero,
    BadExponent(String),
    /// Workspace-level syntax problem.
    Syntax(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found `{found}`")
            }
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::OddPower(s) => write!(f, "odd generator `{s}` raised to a power >= 2"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::BadExponent(s) => write!(f, "invalid exponent `{s}`"),
            ParseErrorKind::Syntax(s) => write!(f, "{s}"),
        }
    }
}

/// Syntax error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    Phi(usize),
    Lambda(usize),
    C(usize),
    Cbar(usize),
}

impl Symbol {
    fn parse(s: &str) -> Option<Symbol> {
        let split = s.find(|c: char| c.is_ascii_digit())?;
        let (head, digits) = s.split_at(split);
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let k: usize = digits.parse().ok()?;
        match head {
            "phi" => Some(Symbol::Phi(k)),
            "l" => Some(Symbol::Lambda(k)),
            "c" => Some(Symbol::C(k)),
            "cb" => Some(Symbol::Cbar(k)),
            _ => None,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Symbol::C(_) | Symbol::Cbar(_))
    }

    pub fn poly(self, dim: usize) -> Result<SuperPoly> {
        match self {
            Symbol::Phi(k) => SuperPoly::phi(dim, k),
            Symbol::Lambda(k) => SuperPoly::lambda(dim, k),
            Symbol::C(k) => SuperPoly::c(dim, k),
            Symbol::Cbar(k) => SuperPoly::cbar(dim, k),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Phi(k) => write!(f, "phi{k}"),
            Symbol::Lambda(k) => write!(f, "l{k}"),
            Symbol::C(k) => write!(f, "c{k}"),
            Symbol::Cbar(k) => write!(f, "cb{k}"),
        }
    }
}

/// True if `s` is spelled like a generator or the imaginary unit, and so
/// cannot be used as a binding name.
pub fn is_reserved(s: &str) -> bool {
    s == "I" || Symbol::parse(s).is_some()
}

/// Parsed expression. Products keep their written operand order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    ImaginaryUnit,
    Sym(Symbol),
    Name(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a nonzero integer literal.
    Div(Box<Expr>, BigInt),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
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
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexed, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = col0 + i;
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            toks.push((t, col));
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Int(s.parse().expect("digits")), col));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else {
            return Err(ParseError { line, column: col, kind: ParseErrorKind::UnexpectedChar(ch) });
        }
    }
    Ok(Lexed { toks, end_col: col0 + chars.len() })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn err_here(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, col)) => ParseError {
                line: self.line,
                column: *col,
                kind: ParseErrorKind::UnexpectedToken { found: t.to_string(), expected },
            },
            None => {
                ParseError { line: self.line, column: self.end_col, kind: ParseErrorKind::UnexpectedEnd { expected } }
            }
        }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    match self.peek().cloned() {
                        Some(Tok::Int(n)) => {
                            if n.is_zero() {
                                return Err(ParseError {
                                    line: self.line,
                                    column: col,
                                    kind: ParseErrorKind::DivisionByZero,
                                });
                            }
                            self.pos += 1;
                            lhs = Expr::Div(Box::new(lhs), n);
                        }
                        _ => return Err(self.err_here("an integer divisor")),
                    }
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base_col = self.col();
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let col = self.col();
            let e = match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    u32::try_from(&n).map_err(|_| ParseError {
                        line: self.line,
                        column: col,
                        kind: ParseErrorKind::BadExponent(n.to_string()),
                    })?
                }
                _ => return Err(self.err_here("an integer exponent")),
            };
            if let Expr::Sym(s) = &base {
                if s.is_odd() && e >= 2 {
                    return Err(ParseError {
                        line: self.line,
                        column: base_col,
                        kind: ParseErrorKind::OddPower(s.to_string()),
                    });
                }
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                if s == "I" {
                    Ok(Expr::ImaginaryUnit)
                } else if let Some(sym) = Symbol::parse(&s) {
                    Ok(Expr::Sym(sym))
                } else {
                    Ok(Expr::Name(s))
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err_here("`)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err_here("a number, symbol, name or `(`")),
        }
    }
}

/// Parses `text` reporting positions as if it started at `line:column`.
pub fn parse_expr_at(text: &str, line: usize, column: usize) -> Result<Expr, ParseError> {
    let Lexed { toks, end_col } = lex(text, line, column)?;
    let mut p = Parser { toks, pos: 0, line, end_col };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here("an operator or end of input"));
    }
    Ok(e)
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    parse_expr_at(text, 1, 1)
}

/// Evaluates an expression over `dim` coordinates; `names` resolves bound
/// names to polynomials.
pub fn lower(expr: &Expr, dim: usize, names: &dyn Fn(&str) -> Option<SuperPoly>) -> Result<SuperPoly> {
    Ok(match expr {
        Expr::Int(n) => SuperPoly::constant(dim, Scalar::real(BigRational::from_integer(n.clone()))),
        Expr::ImaginaryUnit => SuperPoly::constant(dim, Scalar::i()),
        Expr::Sym(s) => s.poly(dim)?,
        Expr::Name(n) => {
            let p = names(n).ok_or_else(|| Error::UnknownName(n.clone()))?;
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: p.dim() });
            }
            p
        }
        Expr::Add(a, b) => &lower(a, dim, names)? + &lower(b, dim, names)?,
        Expr::Sub(a, b) => &lower(a, dim, names)? - &lower(b, dim, names)?,
        Expr::Mul(a, b) => &lower(a, dim, names)? * &lower(b, dim, names)?,
        Expr::Div(a, n) => {
            let inv = Scalar::real(BigRational::new(BigInt::from(1), n.clone()));
            lower(a, dim, names)?.scale(&inv)
        }
        Expr::Pow(a, e) => lower(a, dim, names)?.pow(*e),
        Expr::Neg(a) => -lower(a, dim, names)?,
    })
}

/// Parses and lowers an expression with no bound names.
pub fn parse_poly(text: &str, dim: usize) -> Result<SuperPoly> {
    lower(&parse_expr(text)?, dim, &|_| None)
}
