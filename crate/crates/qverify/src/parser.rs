//! Lexer and recursive-descent parser for the identity language.
//!
//! Grammar (arguments may be separated by `,` or `;`):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" rexp)?          -- rational rexp only on base q
//! atom   := int | sym | "q" | "inf" | name "(" args ")" | "(" expr ")"
//! rexp   := ["-"] int | "(" ["-"] int ["/" int] ")"
//! ```
//!
//! Rational literals like `(1/2)` come out of the `"(" expr ")"` branch as a
//! division of integers, which evaluates exactly.

use crate::ast::Expr;
use qseries::{exp_frac, Exp};
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

#[derive(Clone, Debug)]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(i64),
    Ident(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    EqEq,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            ',' | ';' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '=' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'=' {
                    toks.push((i, Tok::EqEq));
                    i += 2;
                } else {
                    return err(i, "single '=' (did you mean '=='?)");
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s = &text[start..i];
                match s.parse::<i64>() {
                    Ok(n) => toks.push((start, Tok::Int(n))),
                    Err(_) => return err(start, format!("integer literal {s} overflows")),
                }
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character {c:?}")),
        }
    }
    Ok(toks)
}

/// Names callable in expressions: the built-in function set plus every
/// catalog entry.
fn known_calls() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| {
        let mut s: HashSet<&'static str> = [
            "pfin", "pinf", "pinf2", "j", "J", "Jb", "m", "delta", "A", "f", "g", "theta_np", "sub",
        ]
        .into_iter()
        .collect();
        for e in qseries::catalog::entries() {
            s.insert(e.name);
        }
        s
    })
}

const SYMBOLS: [&str; 3] = ["x", "y", "z"];

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            err(self.here(), format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            let inner = self.unary()?;
            Ok(Expr::Neg(Box::new(inner)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        let caret_pos = self.here();
        self.pos += 1;
        let (num, den) = self.rexp()?;
        if base == Expr::QPow(qseries::exp(1)) {
            return Ok(Expr::QPow(exp_frac(num, den)));
        }
        if den != 1 {
            return err(caret_pos, "fractional exponents are only allowed on q");
        }
        Ok(Expr::Pow(Box::new(base), num))
    }

    /// Exponent: `3`, `-3`, `(3)`, `(-3)`, `(1/2)`, `(-1/2)`.
    fn rexp(&mut self) -> Result<(i64, i64), ParseError> {
        let parens = self.peek() == Some(&Tok::LParen);
        if parens {
            self.pos += 1;
        }
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let num = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => return err(self.here(), "expected an integer exponent"),
        };
        let mut den = 1;
        if parens && self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            den = match self.bump() {
                Some(Tok::Int(n)) if n > 0 => n,
                _ => return err(self.here(), "expected a positive denominator"),
            };
        }
        if parens {
            self.eat(&Tok::RParen, "')' after exponent")?;
        }
        Ok((if negative { -num } else { num }, den))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.eat(&Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    if !known_calls().contains(name.as_str()) {
                        return err(pos, format!("unknown function {name}"));
                    }
                    self.pos += 1;
                    let mut args = Vec::new();
                    if self.peek() == Some(&Tok::RParen) {
                        self.pos += 1;
                        return Ok(Expr::Call(name, args));
                    }
                    loop {
                        args.push(self.expr()?);
                        match self.bump() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RParen) => break,
                            _ => return err(self.here(), "expected ',' or ')' in argument list"),
                        }
                    }
                    Ok(Expr::Call(name, args))
                } else if name == "q" {
                    Ok(Expr::QPow(qseries::exp(1)))
                } else if name == "inf" {
                    Ok(Expr::Inf)
                } else if SYMBOLS.contains(&name.as_str()) {
                    Ok(Expr::Sym(name))
                } else {
                    err(pos, format!("undeclared symbol {name}"))
                }
            }
            _ => err(pos, "expected a value"),
        }
    }
}

/// Parse a single expression; the whole text must be consumed.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return err(p.here(), "trailing input after expression");
    }
    Ok(e)
}

/// Parse `lhs == rhs`.
pub fn parse_equation(text: &str) -> Result<(Expr, Expr), ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
    };
    let lhs = p.expr()?;
    p.eat(&Tok::EqEq, "'=='")?;
    let rhs = p.expr()?;
    if p.pos != toks.len() {
        return err(p.here(), "trailing input after equation");
    }
    Ok((lhs, rhs))
}

/// The exponent `e` of a `q^e` literal, rendered canonically.
pub fn exp_to_string(e: Exp) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}
