//! Text format for polynomials.
//!
//! Two forms are accepted:
//! - an ascending coefficient list `c0,c1,...,cd` (any input containing a comma);
//! - an expression in a single variable built from integer literals,
//!   `+ - * ^` and parentheses, e.g. `(2*x + 1)^3 - 5`.
//!
//! Expressions are parsed by precedence climbing. `^` binds tightest and is
//! right associative; unary minus sits between `^` and `*`, so `-x^2` is
//! `-(x^2)`. Exponents must be constant and nonnegative.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::IntPoly;
use crate::{Error, Result};

const MAX_EXPONENT: u32 = 4096;

/// Parses either text form into an [`IntPoly`].
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    if text.contains(',') {
        return parse_coeff_list(text);
    }
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        var: None,
        end: text.len(),
    };
    let poly = parser.expr(0)?;
    if let Some((tok, at)) = parser.tokens.get(parser.pos) {
        return Err(Error::Parse {
            pos: *at,
            msg: format!("unexpected {tok:?}"),
        });
    }
    Ok(poly)
}

fn parse_coeff_list(text: &str) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let trimmed = field.trim();
        let c: BigInt = trimmed.parse().map_err(|_| Error::Parse {
            pos: offset,
            msg: format!("coefficient {trimmed:?} is not an integer"),
        })?;
        coeffs.push(c);
        offset += field.len() + 1;
    }
    Ok(IntPoly::new(coeffs))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Int(digits.parse().expect("digits")), at));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((Tok::Var(name), at));
                continue;
            }
            '+' => out.push((Tok::Plus, at)),
            '-' | '\u{2212}' => out.push((Tok::Minus, at)),
            '*' | '\u{b7}' => out.push((Tok::Star, at)),
            '^' => out.push((Tok::Caret, at)),
            '(' => out.push((Tok::LParen, at)),
            ')' => out.push((Tok::RParen, at)),
            other => {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    var: Option<String>,
    end: usize,
}

// binding powers
const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, at)| *at)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self, min_bp: u8) -> Result<IntPoly> {
        let mut lhs = self.atom()?;
        loop {
            let (bp, right_assoc) = match self.peek() {
                Some(Tok::Plus) | Some(Tok::Minus) => (ADD, false),
                Some(Tok::Star) => (MUL, false),
                Some(Tok::Caret) => (POW, true),
                _ => break,
            };
            if bp < min_bp {
                break;
            }
            let op = self.tokens[self.pos].0.clone();
            let op_at = self.here();
            self.pos += 1;
            let next_min = if right_assoc { bp } else { bp + 1 };
            let rhs = self.expr(next_min)?;
            lhs = match op {
                Tok::Plus => &lhs + &rhs,
                Tok::Minus => &lhs - &rhs,
                Tok::Star => &lhs * &rhs,
                Tok::Caret => {
                    let e = exponent(&rhs).ok_or_else(|| Error::Parse {
                        pos: op_at,
                        msg: format!("exponent must be a constant integer in 0..={MAX_EXPONENT}"),
                    })?;
                    lhs.pow(e)
                }
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<IntPoly> {
        let Some((tok, _)) = self.tokens.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(IntPoly::constant(v)),
            Tok::Var(name) => {
                match &self.var {
                    Some(seen) if *seen != name => {
                        self.pos -= 1;
                        return self.err(format!(
                            "second variable {name:?}; only {seen:?} may appear"
                        ));
                    }
                    _ => self.var = Some(name),
                }
                Ok(IntPoly::var())
            }
            Tok::Minus => Ok(-self.expr(NEG)?),
            Tok::Plus => self.expr(NEG),
            Tok::LParen => {
                let inner = self.expr(0)?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                self.err(format!("unexpected {other:?}"))
            }
        }
    }
}

fn exponent(p: &IntPoly) -> Option<u32> {
    if !p.is_constant() {
        return None;
    }
    let v = if p.is_zero() {
        BigInt::zero()
    } else {
        p.coeff(0)
    };
    v.to_u32().filter(|&e| e <= MAX_EXPONENT)
}
