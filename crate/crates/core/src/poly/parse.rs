//! Text syntax for polynomials: `3/2*x^2*y - z + 1`, parentheses allowed,
//! `%a` names the generator of GF(p^k).

use num_bigint::BigInt;

use super::{MonomialOrder, Polynomial};
use crate::error::{Error, Result};
use crate::field::ScalarField;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1
            }
            '-' => {
                out.push((Tok::Minus, col));
                i += 1
            }
            '*' => {
                out.push((Tok::Star, col));
                i += 1
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1
            }
            '%' => {
                if chars.get(i + 1) == Some(&'a') {
                    out.push((Tok::Gen, col));
                    i += 2;
                } else {
                    return Err(Error::Parse { column: col, message: "expected `%a`".into() });
                }
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Num(s.parse().unwrap()), col));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(Error::Parse { column: col, message: format!("unexpected character `{other}`") })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    field: &'a ScalarField,
    vars: &'a [String],
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { column: self.col(), message: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.unary()?;
                    let c = match d.constant_value() {
                        Some(c) if !self.field.is_zero(&c) => c,
                        _ => {
                            return Err(Error::Parse {
                                column: col,
                                message: "division only by nonzero constants".into(),
                            })
                        }
                    };
                    acc = acc.scale(&self.field.inv(&c)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        column: self.col(),
                        message: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.field, n, self.field.from_bigint(&v)))
            }
            Some(Tok::Ident(name)) => {
                let col = self.col();
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(self.field, n, i)),
                    None => Err(Error::Parse { column: col, message: format!("unknown variable `{name}`") }),
                }
            }
            Some(Tok::Gen) => {
                self.pos += 1;
                match self.field.generator() {
                    Some(g) => Ok(Polynomial::constant(self.field, n, g)),
                    None => self.err("`%a` only exists in GF(p^k)"),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `text` as a polynomial in the given variables. Error columns are
/// 1-based character offsets into `text`.
pub fn parse_polynomial(text: &str, field: &ScalarField, vars: &[String]) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, field, vars, end_col: text.chars().count() + 1 };
    if p.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Deterministic printing, terms in descending grevlex order. The output
/// parses back to the same polynomial.
pub fn format_polynomial(f: &Polynomial, vars: &[String]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let field = f.field();
    let mut out = String::new();
    for (i, (m, c)) in f.sorted_terms(MonomialOrder::GRevLex).into_iter().enumerate() {
        let negative = field.is_negative(c);
        let c_abs = if negative { field.neg(c) } else { c.clone() };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(v, e)| if *e == 1 { vars[v].clone() } else { format!("{}^{}", vars[v], e) })
            .collect();
        let coef = field.format_scalar(&c_abs);
        let coef = if field.is_prime_subfield(&c_abs) { coef } else { format!("({coef})") };
        if mono.is_empty() {
            out.push_str(&coef);
        } else if field.is_one(&c_abs) {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&coef);
            out.push('*');
            out.push_str(&mono.join("*"));
        }
    }
    out
}
