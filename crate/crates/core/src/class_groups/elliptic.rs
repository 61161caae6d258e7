use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Scalar, ScalarField};
use crate::poly::{parse_polynomial, Monomial};

/// `y^2 = x^3 + A x + B` over QQ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticCurve {
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvePoint {
    Infinity,
    Affine(BigRational, BigRational),
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl CurvePoint {
    pub fn affine(x: i64, y: i64) -> Self {
        CurvePoint::Affine(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// `"x,y"` with rational coordinates, or `"O"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "O" {
            return Ok(CurvePoint::Infinity);
        }
        let text = text.trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let coord = |s: &str| -> Result<BigRational> {
            s.parse::<BigRational>()
                .map_err(|_| Error::Parse { column: 0, message: format!("bad coordinate `{s}`") })
        };
        match parts.as_slice() {
            [x, y] => Ok(CurvePoint::Affine(coord(x)?, coord(y)?)),
            _ => Err(Error::Parse { column: 0, message: format!("expected `x,y`, got `{text}`") }),
        }
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3")?;
        if !self.a.is_zero() {
            let sign = if self.a < BigInt::zero() { "-" } else { "+" };
            match self.a.magnitude() {
                m if m.is_one() => write!(f, " {sign} x")?,
                m => write!(f, " {sign} {m}*x")?,
            }
        }
        if !self.b.is_zero() {
            write!(f, " {} {}", if self.b < BigInt::zero() { "-" } else { "+" }, self.b.magnitude())?;
        }
        Ok(())
    }
}

impl EllipticCurve {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let e = EllipticCurve { a: a.into(), b: b.into() };
        if e.discriminant().is_zero() {
            return Err(Error::Invalid(format!("{e} is singular")));
        }
        Ok(e)
    }

    /// `-16 (4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> BigInt {
        BigInt::from(-16) * (BigInt::from(4) * &self.a * &self.a * &self.a + BigInt::from(27) * &self.b * &self.b)
    }

    /// `"y^2 = x^3 + A*x + B"`; the right side must be a monic cubic without
    /// an `x^2` term and integer coefficients.
    pub fn parse(text: &str) -> Result<Self> {
        let (lhs, rhs) = text
            .split_once('=')
            .ok_or_else(|| Error::Parse { column: 0, message: "expected `y^2 = ...`".into() })?;
        if lhs.split_whitespace().collect::<String>() != "y^2" {
            return Err(Error::Parse { column: 0, message: "left side must be y^2".into() });
        }
        let vars = ["x".to_string()];
        let f = parse_polynomial(rhs, &ScalarField::Rationals, &vars)?;
        let coef = |e: u32| -> Result<BigInt> {
            match f.coefficient(&Monomial::from_exponents(vec![e])) {
                Scalar::Rational(q) if q.is_integer() => Ok(q.to_integer()),
                _ => Err(Error::Invalid("curve coefficients must be integers".into())),
            }
        };
        if f.total_degree() != Some(3) || !coef(3)?.is_one() || !coef(2)?.is_zero() {
            return Err(Error::Invalid("expected x^3 + A*x + B".into()));
        }
        EllipticCurve::new(coef(1)?, coef(0)?)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                let a = BigRational::from_integer(self.a.clone());
                let b = BigRational::from_integer(self.b.clone());
                y * y == x * x * x + a * x + b
            }
        }
    }

    fn check(&self, p: &CurvePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{p} is not on {self}")))
        }
    }
}

/// Chord and tangent.
pub fn ec_add(p: &CurvePoint, q: &CurvePoint, e: &EllipticCurve) -> Result<CurvePoint> {
    e.check(p)?;
    e.check(q)?;
    let (x1, y1, x2, y2) = match (p, q) {
        (CurvePoint::Infinity, _) => return Ok(q.clone()),
        (_, CurvePoint::Infinity) => return Ok(p.clone()),
        (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let lambda = if x1 != x2 {
        (y2 - y1) / (x2 - x1)
    } else if y1 == y2 && !y1.is_zero() {
        let three = BigRational::from_integer(3.into());
        let two = BigRational::from_integer(2.into());
        (three * x1 * x1 + BigRational::from_integer(e.a.clone())) / (two * y1)
    } else {
        return Ok(CurvePoint::Infinity);
    };
    let x3 = &lambda * &lambda - x1 - x2;
    let y3 = lambda * (x1 - &x3) - y1;
    Ok(CurvePoint::Affine(x3, y3))
}

pub fn ec_neg(p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y),
    }
}

/// `n P` by double and add; negative `n` negates.
pub fn ec_mul(n: i64, p: &CurvePoint, e: &EllipticCurve) -> Result<CurvePoint> {
    e.check(p)?;
    let mut acc = CurvePoint::Infinity;
    let mut base = if n < 0 { ec_neg(p) } else { p.clone() };
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = ec_add(&acc, &base, e)?;
        }
        base = ec_add(&base, &base, e)?;
        k >>= 1;
    }
    Ok(acc)
}

/// Multiples `P, 2P, ...` up to the first `O` or to `12P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub curve: EllipticCurve,
    pub ladder: Vec<CurvePoint>,
    /// Least `n <= 12` with `nP = O`.
    pub order: Option<u64>,
}

/// Largest possible order of a rational torsion point (Mazur).
pub const MAZUR_BOUND: u64 = 12;

impl TorsionCertificate {
    /// Each rung is on the curve and equals the previous rung plus `P`.
    pub fn verify(&self) -> bool {
        let Some(p) = self.ladder.first() else { return false };
        let mut prev = CurvePoint::Infinity;
        for (i, r) in self.ladder.iter().enumerate() {
            match ec_add(&prev, p, &self.curve) {
                Ok(next) if next == *r && self.curve.contains(r) => {}
                _ => return false,
            }
            let is_o = *r == CurvePoint::Infinity;
            let last = i + 1 == self.ladder.len();
            if is_o != (last && self.order.is_some()) {
                return false;
            }
            prev = r.clone();
        }
        match self.order {
            Some(n) => n as usize == self.ladder.len(),
            None => self.ladder.len() as u64 == MAZUR_BOUND,
        }
    }
}

pub fn ec_torsion_order(p: &CurvePoint, e: &EllipticCurve) -> Result<TorsionCertificate> {
    e.check(p)?;
    if *p == CurvePoint::Infinity {
        return Err(Error::Precondition("the point must not be O".into()));
    }
    let mut ladder = vec![p.clone()];
    let mut cur = p.clone();
    for n in 2..=MAZUR_BOUND {
        cur = ec_add(&cur, p, e)?;
        ladder.push(cur.clone());
        if cur == CurvePoint::Infinity {
            return Ok(TorsionCertificate { curve: e.clone(), ladder, order: Some(n) });
        }
    }
    Ok(TorsionCertificate { curve: e.clone(), ladder, order: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law() {
        let e = EllipticCurve::parse("y^2 = x^3 + 1").unwrap();
        let p = CurvePoint::affine(2, 3);
        assert_eq!(ec_add(&p, &CurvePoint::Infinity, &e).unwrap(), p);
        assert_eq!(ec_mul(2, &p, &e).unwrap(), CurvePoint::affine(0, 1));
        assert_eq!(ec_mul(3, &CurvePoint::affine(0, 1), &e).unwrap(), CurvePoint::Infinity);
        assert_eq!(ec_add(&p, &ec_neg(&p), &e).unwrap(), CurvePoint::Infinity);
        assert!(ec_add(&CurvePoint::affine(1, 1), &p, &e).is_err());
    }

    #[test]
    fn torsion() {
        let e = EllipticCurve::new(0, 1).unwrap();
        let c = ec_torsion_order(&CurvePoint::affine(2, 3), &e).unwrap();
        assert_eq!(c.order, Some(6));
        assert!(c.verify());
        assert_eq!(ec_torsion_order(&CurvePoint::affine(-1, 0), &e).unwrap().order, Some(2));
        let e2 = EllipticCurve::parse("y^2=x^3-2").unwrap();
        let c = ec_torsion_order(&CurvePoint::parse("3,5").unwrap(), &e2).unwrap();
        assert_eq!(c.order, None);
        assert!(c.verify());
    }

    #[test]
    fn parsing() {
        assert_eq!(EllipticCurve::parse("y^2 = x^3 - 2").unwrap(), EllipticCurve::new(0, -2).unwrap());
        assert!(EllipticCurve::parse("y^2 = x^3").is_err());
        assert!(EllipticCurve::parse("y^2 = x^3 + x^2 + 1").is_err());
        assert_eq!(CurvePoint::parse("(1/2, -3)").unwrap().to_string(), "(1/2, -3)");
        assert_eq!(EllipticCurve::new(-1, 2).unwrap().to_string(), "y^2 = x^3 - x + 2");
    }
}
