//! Recursive-descent parser for polynomial and vector-field expressions.
//!
//! ```text
//! expr   := term { ("+"|"-") term }
//! term   := factor { ("*"|"/") factor }
//! factor := "-" factor | atom [ "^" nat ]
//! atom   := nat | ident | "d" ident | "(" expr ")"
//! ```
//!
//! `d<var>` (or `d <var>`) denotes the coordinate field of a chart variable.
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;

use super::{Chart, VectorField, VfError};
use crate::exactalg::{Poly, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, VfError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let s: String = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            i += s.len();
            col += s.len();
            Tok::Nat(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() {
            let s: String = chars[i..]
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .collect();
            i += s.len();
            col += s.len();
            Tok::Ident(s)
        } else {
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(VfError::Syntax {
                        line,
                        col,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            };
            i += 1;
            col += 1;
            t
        };
        out.push(Token {
            tok,
            line: start.0,
            col: start.1,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

/// A partially evaluated expression. `d` counts differential factors in a
/// product; `None` marks a sum that mixes functions and fields.
#[derive(Debug, Clone)]
struct Val {
    d: Option<u8>,
    s: RatFunc,
    v: Vec<RatFunc>,
}

impl Val {
    fn scalar(s: RatFunc) -> Val {
        let n = s.nvars();
        Val {
            d: Some(0),
            s,
            v: vec![RatFunc::zero(n); n],
        }
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    chart: &'a Chart,
}

impl<'a> Parser<'a> {
    fn n(&self) -> usize {
        self.chart.dim()
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T, VfError> {
        Err(VfError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Val, VfError> {
        let mut acc = self.term()?;
        loop {
            let neg = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.term()?;
            acc = add(acc, rhs, neg);
        }
    }

    fn term(&mut self) -> Result<Val, VfError> {
        let mut acc = self.factor()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.mul(acc, rhs, &t)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    if rhs.d != Some(0) {
                        return self.err(&t, "division by a vector field");
                    }
                    let inv = match rhs.s.recip() {
                        Ok(inv) => inv,
                        Err(_) => return self.err(&t, "division by zero"),
                    };
                    acc = self.mul(acc, Val::scalar(inv), &t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn mul(&self, a: Val, b: Val, at: &Token) -> Result<Val, VfError> {
        let (Some(da), Some(db)) = (a.d, b.d) else {
            return self.err(at, "product of a mixed function/field sum");
        };
        match (da, db) {
            (0, 0) => Ok(Val::scalar(&a.s * &b.s)),
            (0, 1) => Ok(Val {
                d: Some(1),
                s: b.s,
                v: b.v.iter().map(|c| &a.s * c).collect(),
            }),
            (1, 0) => Ok(Val {
                d: Some(1),
                s: a.s,
                v: a.v.iter().map(|c| &b.s * c).collect(),
            }),
            _ => self.err(at, "product of two differentials"),
        }
    }

    fn factor(&mut self) -> Result<Val, VfError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            let v = self.factor()?;
            return Ok(neg(v));
        }
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let t = self.bump();
        let Tok::Nat(e) = &t.tok else {
            return self.err(&t, "expected a natural-number exponent");
        };
        let Ok(e) = u32::try_from(e.clone()) else {
            return self.err(&t, "exponent too large");
        };
        match (base.d, e) {
            (_, 0) => Ok(Val::scalar(RatFunc::one(self.n()))),
            (_, 1) => Ok(base),
            (Some(0), _) => Ok(Val::scalar(base.s.pow(e))),
            _ => self.err(&caret, "power of a vector field"),
        }
    }

    fn atom(&mut self) -> Result<Val, VfError> {
        let t = self.bump();
        match &t.tok {
            Tok::Nat(k) => Ok(Val::scalar(RatFunc::constant(
                self.n(),
                Rational::from_integer(k.clone()),
            ))),
            Tok::LParen => {
                let v = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.err(&close, "expected `)`");
                }
                Ok(v)
            }
            Tok::Ident(name) => {
                if let Some(i) = self.chart.index_of(name) {
                    return Ok(Val::scalar(RatFunc::from_poly(Poly::var(self.n(), i))));
                }
                let target =
                    if name == "d" {
                        let next = self.bump();
                        match &next.tok {
                            Tok::Ident(v) => self.chart.index_of(v).ok_or_else(|| {
                                VfError::UnknownIdentifier {
                                    line: next.line,
                                    col: next.col,
                                    name: v.clone(),
                                }
                            })?,
                            _ => return self.err(&next, "expected a variable after `d`"),
                        }
                    } else {
                        name.strip_prefix('d')
                            .and_then(|v| self.chart.index_of(v))
                            .ok_or_else(|| VfError::UnknownIdentifier {
                                line: t.line,
                                col: t.col,
                                name: name.clone(),
                            })?
                    };
                let n = self.n();
                let mut v = vec![RatFunc::zero(n); n];
                v[target] = RatFunc::one(n);
                Ok(Val {
                    d: Some(1),
                    s: RatFunc::zero(n),
                    v,
                })
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            _ => self.err(&t, "expected a number, variable or `(`"),
        }
    }
}

fn neg(v: Val) -> Val {
    Val {
        d: v.d,
        s: -v.s,
        v: v.v.into_iter().map(|c| -c).collect(),
    }
}

fn add(a: Val, b: Val, negate: bool) -> Val {
    let b = if negate { neg(b) } else { b };
    let d = if a.d == b.d { a.d } else { None };
    Val {
        d,
        s: &a.s + &b.s,
        v: a.v.iter().zip(&b.v).map(|(x, y)| x + y).collect(),
    }
}

fn parse_val(src: &str, chart: &Chart) -> Result<(Val, Token), VfError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        chart,
    };
    let first = p.peek().clone();
    let v = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok((v, first))
}

/// Parses a rational function of the chart variables.
pub fn parse_function(src: &str, chart: &Chart) -> Result<RatFunc, VfError> {
    let (v, at) = parse_val(src, chart)?;
    if v.d != Some(0) {
        return Err(VfError::Syntax {
            line: at.line,
            col: at.col,
            msg: "expected a function, found a vector field".into(),
        });
    }
    Ok(v.s)
}

/// Parses a polynomial; rational functions with nonconstant denominators are
/// rejected.
pub fn parse_poly(src: &str, chart: &Chart) -> Result<Poly, VfError> {
    let f = parse_function(src, chart)?;
    f.into_poly().ok_or_else(|| VfError::Syntax {
        line: 1,
        col: 1,
        msg: "expected a polynomial".into(),
    })
}

/// Parses a vector field `sum f_a * d<x_a>`. The literal `0` is the zero field.
pub fn parse_vf(src: &str, chart: &Chart) -> Result<VectorField, VfError> {
    let (v, at) = parse_val(src, chart)?;
    match v.d {
        Some(1) => Ok(VectorField::new(v.v)),
        Some(0) if v.s.is_zero() => Ok(VectorField::zero(chart.dim())),
        _ => Err(VfError::Syntax {
            line: at.line,
            col: at.col,
            msg: "every term of a vector field needs exactly one differential".into(),
        }),
    }
}
