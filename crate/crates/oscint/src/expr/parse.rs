//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := ("-")? atom ("^" integer)?
//! atom   := number | ident | "(" expr ")" | func "(" expr ")"
//! func   := sqrt | exp | sin | cos | step | step_<k>
//! ident  := x1..xn | t1..ts
//! ```
//!
//! Whitespace-insensitive. Numbers are decimal literals or exact rationals
//! `p/q` (folded at construction). The unary minus applies after the power,
//! so `-x1^2` parses as `-(x1^2)`.

use super::{Axis, Dims, Expr};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum ParseError {
    Syntax { pos: usize, expected: String, found: String },
    UnknownVariable { name: String, dims: Dims },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, expected, found } => {
                write!(f, "syntax error at byte {pos}: expected {expected}, found {found}")
            }
            ParseError::UnknownVariable { name, dims } => write!(
                f,
                "unknown variable `{name}` (declared dims: n = {}, s = {})",
                dims.n, dims.s
            ),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64, Option<i64>), // value, exact integer if representable
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

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> Result<(usize, Tok), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((start, Tok::End));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' | b'.' => {
                let mut end = self.pos;
                let mut seen_dot = false;
                let mut seen_exp = false;
                while end < self.src.len() {
                    let b = self.src[end];
                    match b {
                        b'0'..=b'9' => end += 1,
                        b'.' if !seen_dot && !seen_exp => {
                            seen_dot = true;
                            end += 1;
                        }
                        b'e' | b'E' if !seen_exp && end > self.pos => {
                            // lookahead: exponent must be digits (with sign)
                            let mut k = end + 1;
                            if k < self.src.len() && (self.src[k] == b'+' || self.src[k] == b'-') {
                                k += 1;
                            }
                            if k < self.src.len() && self.src[k].is_ascii_digit() {
                                seen_exp = true;
                                end = k;
                            } else {
                                break;
                            }
                        }
                        _ => break,
                    }
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    expected: "number".into(),
                    found: text.into(),
                })?;
                let exact = if !seen_dot && !seen_exp { text.parse::<i64>().ok() } else { None };
                self.pos = end;
                Tok::Num(value, exact)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(name)
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    expected: "expression".into(),
                    found: format!("{:?}", other as char),
                })
            }
        };
        Ok((start, tok))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    dims: Dims,
}

pub fn parse(text: &str, dims: Dims) -> Result<Expr, ParseError> {
    let mut lexer = Lexer { src: text.as_bytes(), pos: 0 };
    let mut toks = Vec::new();
    loop {
        let t = lexer.next_token()?;
        let end = matches!(t.1, Tok::End);
        toks.push(t);
        if end {
            break;
        }
    }
    let mut p = Parser { toks, idx: 0, dims };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].1.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: format!("{:?}", self.peek()),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if matches!(self.peek(), Tok::End) {
            Ok(())
        } else {
            Err(self.err("end of input or operator"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Expr::add(acc, rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = Expr::sub(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = Expr::mul(acc, rhs);
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = Expr::div(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let negate = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let base = self.atom()?;
        let powed = if matches!(self.peek(), Tok::Caret) {
            self.bump();
            let neg_exp = if matches!(self.peek(), Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            match self.peek().clone() {
                Tok::Num(_, Some(k)) => {
                    self.bump();
                    let k = if neg_exp { -k } else { k };
                    if k.abs() > i32::MAX as i64 {
                        return Err(self.err("integer exponent in i32 range"));
                    }
                    Expr::pow(base, k as i32)
                }
                _ => return Err(self.err("integer exponent")),
            }
        } else {
            base
        };
        Ok(if negate { Expr::neg(powed) } else { powed })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(v, exact) => {
                self.bump();
                Ok(match exact {
                    Some(k) => Expr::int(k),
                    None => Expr::real(v),
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Tok::RParen) {
                    return Err(self.err("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                self.ident(&name)
            }
            Tok::Minus => {
                // nested unary minus, e.g. "--x1" or "-(−…)"
                self.factor()
            }
            _ => Err(self.err("number, variable, function, or `(`")),
        }
    }

    fn ident(&mut self, name: &str) -> Result<Expr, ParseError> {
        // function call?
        if matches!(self.peek(), Tok::LParen) {
            let func: Option<fn(Expr) -> Expr> = match name {
                "sqrt" => Some(Expr::sqrt),
                "exp" => Some(Expr::exp),
                "sin" => Some(Expr::sin),
                "cos" => Some(Expr::cos),
                _ => None,
            };
            let step_order: Option<u32> = if name == "step" {
                Some(0)
            } else {
                name.strip_prefix("step_").and_then(|rest| rest.parse::<u32>().ok())
            };
            if func.is_some() || step_order.is_some() {
                self.bump(); // (
                let arg = self.expr()?;
                if !matches!(self.peek(), Tok::RParen) {
                    return Err(self.err("`)`"));
                }
                self.bump();
                return Ok(match (func, step_order) {
                    (Some(f), _) => f(arg),
                    (None, Some(k)) => Expr::step(k, arg),
                    _ => unreachable!(),
                });
            }
            return Err(ParseError::Syntax {
                pos: self.pos(),
                expected: "one of sqrt, exp, sin, cos".into(),
                found: format!("function `{name}`"),
            });
        }
        // variable
        let axis = parse_var(name);
        match axis {
            Some(axis) if self.dims.contains(axis) => Ok(Expr::var(axis)),
            _ => Err(ParseError::UnknownVariable { name: name.to_string(), dims: self.dims }),
        }
    }
}

fn parse_var(name: &str) -> Option<Axis> {
    let (kind, rest) = name.split_at(1);
    let idx: usize = rest.parse().ok()?;
    if idx == 0 {
        return None;
    }
    match kind {
        "x" => Some(Axis::X(idx - 1)),
        "t" => Some(Axis::Theta(idx - 1)),
        _ => None,
    }
}
