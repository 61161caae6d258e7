//! The line-oriented session language.
//!
//! ```text
//! ring R = QQ[x,y,z] mod (x*y, x*z)
//! ideal I = (y + z) in R
//! prime Q = (y, z) in R
//! prime M = (x - 1, y, z) in R cert=point(1,0,0)
//! family F = V((x)) loc (y) in R
//! avoid I against (Q, M)
//! ```
//!
//! `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use primavoid::class_groups::{CurvePoint, DdSetting, EllipticCurve};
use primavoid::families::LocalizedClosedFamily;
use primavoid::{Error, IdealHandle, PolyRing, Polynomial, PrimeCertificate, PrimeIdeal, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SessionError {}

#[derive(Debug, Clone)]
pub enum Command {
    Avoid { ideal: String, primes: Vec<String> },
    Witness { ideal: String, primes: Vec<String> },
    LambdaMax { primes: Vec<String> },
    InCl { prime: String, primes: Vec<String> },
    UnionMember { poly: Polynomial, text: String, family: String },
    FamilyWitness { ideal: String, family: String },
    Ara1 { prime: String, degree: u32 },
    ClassGroup { disc: BigInt },
    DdVerdict(DdSetting),
    Verify { example: String, f: Option<String> },
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub line: usize,
    pub text: String,
    pub command: Command,
}

#[derive(Debug, Default)]
pub struct Session {
    pub rings: BTreeMap<String, Arc<PolyRing>>,
    pub ideals: BTreeMap<String, IdealHandle>,
    pub primes: BTreeMap<String, PrimeIdeal>,
    pub families: BTreeMap<String, LocalizedClosedFamily>,
    pub commands: Vec<Entry>,
}

/// A cursor over one line; columns are 1-based character positions.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line }
    }

    fn err(&self, column: usize, message: impl Into<String>) -> SessionError {
        SessionError { line: self.line, column, message: message.into() }
    }

    fn here(&self, message: impl Into<String>) -> SessionError {
        self.err(self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), SessionError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.here(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<String, SessionError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '-' || *c == '\'') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.here("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SessionError> {
        let col = {
            self.skip_ws();
            self.pos + 1
        };
        let w = self.word()?;
        if w == kw {
            Ok(())
        } else {
            Err(self.err(col, format!("expected `{kw}`, found `{w}`")))
        }
    }

    fn try_keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        if self.keyword(kw).is_ok() {
            true
        } else {
            self.pos = save;
            false
        }
    }

    /// Contents of a balanced group opened by `open`, with the column of its
    /// first character.
    fn group(&mut self, open: char, close: char) -> Result<(String, usize), SessionError> {
        self.expect(open)?;
        let start = self.pos;
        let mut depth = 1;
        while let Some(&c) = self.chars.get(self.pos) {
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    let inner = self.chars[start..self.pos].iter().collect();
                    self.pos += 1;
                    return Ok((inner, start + 1));
                }
            }
            self.pos += 1;
        }
        Err(self.err(start, format!("unclosed `{open}`")))
    }

    fn rest(&mut self) -> (String, usize) {
        self.skip_ws();
        let start = self.pos;
        self.pos = self.chars.len();
        (self.chars[start..].iter().collect::<String>().trim_end().to_string(), start + 1)
    }

    fn finish(&mut self) -> Result<(), SessionError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.here("unexpected trailing input"))
        }
    }
}

/// Split at top-level commas, keeping each piece's starting column.
fn split_top(text: &str, col: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let chars: Vec<char> = text.chars().collect();
    for (i, c) in chars.iter().enumerate() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((chars[start..i].iter().collect(), col + start));
                start = i + 1;
            }
            _ => {}
        }
    }
    let last: String = chars[start..].iter().collect();
    if !last.trim().is_empty() || !out.is_empty() {
        out.push((last, col + start));
    }
    out
}

fn lift(line: usize, col: usize, e: Error) -> SessionError {
    match e {
        Error::Parse { column, message } => SessionError { line, column: col + column.saturating_sub(1), message },
        other => SessionError { line, column: col, message: other.to_string() },
    }
}

fn parse_field(c: &mut Cursor) -> Result<ScalarField, SessionError> {
    let col = {
        c.skip_ws();
        c.pos + 1
    };
    let tag = c.word()?;
    match tag.as_str() {
        "QQ" => Ok(ScalarField::Rationals),
        "GF" => {
            let (inner, icol) = c.group('(', ')')?;
            let bad = || SessionError { line: c.line, column: icol, message: format!("bad field size `{inner}`") };
            let (p, k) = match inner.split_once('^') {
                Some((p, k)) => (p.trim().parse::<u64>().map_err(|_| bad())?, k.trim().parse::<usize>().map_err(|_| bad())?),
                None => (inner.trim().parse::<u64>().map_err(|_| bad())?, 1),
            };
            let field = if k == 1 { ScalarField::prime(p) } else { ScalarField::extension(p, k) };
            field.map_err(|e| lift(c.line, icol, e))
        }
        other => Err(c.err(col, format!("unknown field `{other}` (expected QQ, GF(p) or GF(p^k))"))),
    }
}

fn parse_polys(ring: &PolyRing, text: &str, col: usize, line: usize) -> Result<Vec<Polynomial>, SessionError> {
    split_top(text, col)
        .into_iter()
        .map(|(t, c)| ring.poly(&t).map_err(|e| lift(line, c, e)))
        .collect()
}

fn names(text: &str, col: usize, line: usize) -> Result<Vec<String>, SessionError> {
    split_top(text, col)
        .into_iter()
        .map(|(t, c)| {
            let n = t.trim();
            if n.is_empty() {
                Err(SessionError { line, column: c, message: "empty name".into() })
            } else {
                Ok(n.to_string())
            }
        })
        .collect()
}

fn rat(text: &str, line: usize, col: usize) -> Result<BigRational, SessionError> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|_| SessionError { line, column: col, message: format!("bad rational `{}`", text.trim()) })
}

impl Session {
    fn ring(&self, c: &mut Cursor) -> Result<Arc<PolyRing>, SessionError> {
        c.keyword("in")?;
        let col = {
            c.skip_ws();
            c.pos + 1
        };
        let name = c.word()?;
        self.rings.get(&name).cloned().ok_or_else(|| c.err(col, format!("unknown ring `{name}`")))
    }

    fn check_unique<T>(map: &BTreeMap<String, T>, name: &str, kind: &str, c: &Cursor, col: usize) -> Result<(), SessionError> {
        if map.contains_key(name) {
            Err(c.err(col, format!("{kind} `{name}` is already defined")))
        } else {
            Ok(())
        }
    }

    fn require<'s, T>(map: &'s BTreeMap<String, T>, name: &str, kind: &str, line: usize) -> Result<&'s T, SessionError> {
        map.get(name).ok_or_else(|| SessionError { line, column: 1, message: format!("unknown {kind} `{name}`") })
    }

    fn parse_line(&mut self, raw: &str, line: usize) -> Result<(), SessionError> {
        let text = raw.split('#').next().unwrap_or("");
        let mut c = Cursor::new(text, line);
        if c.at_end() {
            return Ok(());
        }
        let head = c.word()?;
        match head.as_str() {
            "ring" | "ideal" | "prime" | "family" => {
                let col = {
                    c.skip_ws();
                    c.pos + 1
                };
                let name = c.word()?;
                c.expect('=')?;
                match head.as_str() {
                    "ring" => self.parse_ring(&mut c, name, col),
                    "ideal" => self.parse_ideal(&mut c, name, col),
                    "prime" => self.parse_prime(&mut c, name, col),
                    _ => self.parse_family(&mut c, name, col),
                }
            }
            _ => {
                let command = self.parse_command(&head, &mut c)?;
                self.commands.push(Entry { line, text: text.trim().to_string(), command });
                Ok(())
            }
        }
    }

    fn parse_ring(&mut self, c: &mut Cursor, name: String, col: usize) -> Result<(), SessionError> {
        Self::check_unique(&self.rings, &name, "ring", c, col)?;
        let field = parse_field(c)?;
        let (vars, vcol) = c.group('[', ']')?;
        let vars = names(&vars, vcol, c.line)?;
        let ring = PolyRing::new(field.clone(), vars.clone()).map_err(|e| lift(c.line, vcol, e))?;
        let ring = if c.try_keyword("mod") {
            let (rels, rcol) = c.group('(', ')')?;
            let rels = parse_polys(&ring, &rels, rcol, c.line)?;
            PolyRing::with_relations(field, vars, rels).map_err(|e| lift(c.line, rcol, e))?
        } else {
            ring
        };
        c.finish()?;
        self.rings.insert(name, ring);
        Ok(())
    }

    fn parse_ideal(&mut self, c: &mut Cursor, name: String, col: usize) -> Result<(), SessionError> {
        Self::check_unique(&self.ideals, &name, "ideal", c, col)?;
        let (gens, gcol) = c.group('(', ')')?;
        let ring = self.ring(c)?;
        c.finish()?;
        let gens = parse_polys(&ring, &gens, gcol, c.line)?;
        let ideal = IdealHandle::new(&ring, gens).map_err(|e| lift(c.line, gcol, e))?;
        self.ideals.insert(name, ideal);
        Ok(())
    }

    fn parse_prime(&mut self, c: &mut Cursor, name: String, col: usize) -> Result<(), SessionError> {
        Self::check_unique(&self.primes, &name, "prime", c, col)?;
        let (gens, gcol) = c.group('(', ')')?;
        let ring = self.ring(c)?;
        let gens = parse_polys(&ring, &gens, gcol, c.line)?;
        let ideal = IdealHandle::new(&ring, gens).map_err(|e| lift(c.line, gcol, e))?;
        let ccol = {
            c.skip_ws();
            c.pos + 1
        };
        let prime = if c.try_keyword("cert") {
            c.expect('=')?;
            let kind = c.word()?;
            let cert = match kind.as_str() {
                "monomial" => PrimeCertificate::Monomial,
                "asserted" => PrimeCertificate::Asserted,
                "point" => {
                    let (coords, pcol) = c.group('(', ')')?;
                    let mut point = Vec::new();
                    for (t, tc) in split_top(&coords, pcol) {
                        let q = rat(&t, c.line, tc)?;
                        point.push(ring.field().from_rational(&q).map_err(|e| lift(c.line, tc, e))?);
                    }
                    PrimeCertificate::PointKernel(point)
                }
                other => return Err(c.err(ccol, format!("unknown certificate `{other}`"))),
            };
            PrimeIdeal::with_certificate(ideal, cert).map_err(|e| lift(c.line, ccol, e))?
        } else {
            PrimeIdeal::certify(ideal).map_err(|e| lift(c.line, gcol, e))?
        };
        c.finish()?;
        self.primes.insert(name, prime);
        Ok(())
    }

    fn parse_family(&mut self, c: &mut Cursor, name: String, col: usize) -> Result<(), SessionError> {
        Self::check_unique(&self.families, &name, "family", c, col)?;
        c.keyword("V")?;
        let (outer, ocol) = c.group('(', ')')?;
        let mut inner = Cursor::new(&outer, c.line);
        let (igens, icol) = inner.group('(', ')')?;
        inner.finish().map_err(|e| SessionError { column: e.column + ocol - 1, ..e })?;
        c.keyword("loc")?;
        let (ugens, ucol) = c.group('(', ')')?;
        let ring = self.ring(c)?;
        c.finish()?;
        let igens = parse_polys(&ring, &igens, icol + ocol - 1, c.line)?;
        let ugens = parse_polys(&ring, &ugens, ucol, c.line)?;
        let ideal = IdealHandle::new(&ring, igens).map_err(|e| lift(c.line, ocol, e))?;
        let fam = LocalizedClosedFamily::new(ideal, ugens).map_err(|e| lift(c.line, ucol, e))?;
        self.families.insert(name, fam);
        Ok(())
    }

    fn parse_command(&self, head: &str, c: &mut Cursor) -> Result<Command, SessionError> {
        let line = c.line;
        let command = match head {
            "avoid" | "witness" => {
                let ideal = c.word()?;
                Self::require(&self.ideals, &ideal, "ideal", line)?;
                c.keyword("against")?;
                let (list, lcol) = c.group('(', ')')?;
                let primes = names(&list, lcol, line)?;
                for p in &primes {
                    Self::require(&self.primes, p, "prime", line)?;
                }
                if head == "avoid" {
                    Command::Avoid { ideal, primes }
                } else {
                    Command::Witness { ideal, primes }
                }
            }
            "lambda-max" => {
                let (list, lcol) = c.group('(', ')')?;
                let primes = names(&list, lcol, line)?;
                for p in &primes {
                    Self::require(&self.primes, p, "prime", line)?;
                }
                Command::LambdaMax { primes }
            }
            "in-cl" => {
                let prime = c.word()?;
                Self::require(&self.primes, &prime, "prime", line)?;
                c.keyword("in")?;
                let (list, lcol) = c.group('(', ')')?;
                let primes = names(&list, lcol, line)?;
                for p in &primes {
                    Self::require(&self.primes, p, "prime", line)?;
                }
                Command::InCl { prime, primes }
            }
            "union-member" => {
                // union-member <poly> in <family>
                let (rest, rcol) = c.rest();
                let (text, family) = rest
                    .rsplit_once(" in ")
                    .ok_or_else(|| SessionError { line, column: rcol, message: "expected `<poly> in <family>`".into() })?;
                let family = family.trim().to_string();
                let fam = Self::require(&self.families, &family, "family", line)?;
                let poly = fam.ring().poly(text).map_err(|e| lift(line, rcol, e))?;
                Command::UnionMember { poly, text: text.trim().to_string(), family }
            }
            "family-witness" => {
                let ideal = c.word()?;
                Self::require(&self.ideals, &ideal, "ideal", line)?;
                c.keyword("in")?;
                let family = c.word()?;
                Self::require(&self.families, &family, "family", line)?;
                Command::FamilyWitness { ideal, family }
            }
            "ara1" => {
                let prime = c.word()?;
                Self::require(&self.primes, &prime, "prime", line)?;
                let degree = if c.try_keyword("degree") {
                    let col = c.pos + 1;
                    c.word()?.parse().map_err(|_| c.err(col, "expected a degree"))?
                } else {
                    4
                };
                Command::Ara1 { prime, degree }
            }
            "classgroup" => {
                let (d, col) = c.rest();
                let disc = d.parse().map_err(|_| SessionError { line, column: col, message: format!("bad discriminant `{d}`") })?;
                return Ok(Command::ClassGroup { disc });
            }
            "ddverdict" => {
                let kind = c.word()?;
                match kind.as_str() {
                    "quadratic" => {
                        let (rest, col) = c.rest();
                        let parts: Vec<&str> = rest.split_whitespace().collect();
                        let bad = || SessionError { line, column: col, message: "expected `quadratic <D> <p>`".into() };
                        match parts.as_slice() {
                            [d, p] => Command::DdVerdict(DdSetting::Quadratic {
                                disc: d.parse().map_err(|_| bad())?,
                                p: p.parse().map_err(|_| bad())?,
                            }),
                            _ => return Err(bad()),
                        }
                    }
                    "curve" => {
                        let (rest, col) = c.rest();
                        let (curve, point) = rest
                            .split_once(" point ")
                            .ok_or_else(|| SessionError { line, column: col, message: "expected `curve <eq> point <x,y>`".into() })?;
                        let curve = EllipticCurve::parse(curve.trim().trim_matches('"')).map_err(|e| lift(line, col, e))?;
                        let point = CurvePoint::parse(point.trim().trim_matches('"')).map_err(|e| lift(line, col, e))?;
                        Command::DdVerdict(DdSetting::Elliptic { curve, point })
                    }
                    other => return Err(c.here(format!("unknown setting `{other}`"))),
                }
            }
            "verify" => {
                let example = c.word()?;
                let f = if c.try_keyword("f") {
                    let (t, _) = c.rest();
                    Some(t.trim_matches('"').to_string())
                } else {
                    None
                };
                Command::Verify { example, f }
            }
            other => return Err(SessionError { line, column: 1, message: format!("unknown command `{other}`") }),
        };
        c.finish()?;
        Ok(command)
    }
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut s = Session::default();
    for (i, raw) in text.lines().enumerate() {
        s.parse_line(raw, i + 1)?;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declarations() {
        let s = parse_session(
            "ring R = QQ[x,y,z] mod (x*y, x*z)\nprime Q = (y, z) in R\nfamily F = V((x)) loc (y) in R\n",
        )
        .unwrap();
        assert_eq!(s.rings["R"].relations().len(), 2);
        assert_eq!(s.primes["Q"].certificate(), &PrimeCertificate::Monomial);
        assert_eq!(s.families["F"].u_gens().len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_session("ring R = QQ[x,y]\nideal I = (x + w) in R").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.column >= 12, "{e}");
        let e = parse_session("ring R = ZZ[x]").unwrap_err();
        assert_eq!((e.line, e.column), (1, 10));
        let e = parse_session("ring R = QQ[x]\nring R = QQ[y]").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_session("ring R = QQ[x]\navoid I against (P)").is_err());
    }
}
