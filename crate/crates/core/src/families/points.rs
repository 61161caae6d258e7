use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Scalar, ScalarField};
use crate::poly::Polynomial;

/// A closed point of the plane over a finite extension of the prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint {
    pub field: ScalarField,
    pub degree: usize,
    pub coords: [Scalar; 2],
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) over {}",
            self.field.format_scalar(&self.coords[0]),
            self.field.format_scalar(&self.coords[1]),
            self.field
        )
    }
}

/// A zero of `f ∈ (x, y) ⊆ F_p[x, y]` other than the origin, scanning
/// `GF(p^k)` for `k = 1..=k_max` and points in index order with the first
/// coordinate outermost.
pub fn other_max_point(f: &Polynomial, p: u64, k_max: usize) -> Result<ClosedPoint> {
    let base = ScalarField::prime(p)?;
    if f.field() != &base || f.nvars() != 2 {
        return Err(Error::RingMismatch(format!("expected a polynomial in GF({p})[x, y]")));
    }
    if f.is_zero() {
        return Err(Error::Precondition("f is zero".into()));
    }
    let origin = [base.zero(), base.zero()];
    if !base.is_zero(&f.evaluate(&origin)?) {
        return Err(Error::Precondition("f does not vanish at the origin".into()));
    }
    for k in 1..=k_max {
        let field = ScalarField::extension(p, k)?;
        let q = field.order().expect("finite field");
        for a in 0..q {
            for b in 0..q {
                if a == 0 && b == 0 {
                    continue;
                }
                let pt = [field.element(a).unwrap(), field.element(b).unwrap()];
                if field.is_zero(&f.evaluate_in(&field, &pt)?) {
                    return Ok(ClosedPoint { field, degree: k, coords: pt });
                }
            }
        }
    }
    Err(Error::NotFound(format!("no zero other than the origin over GF({p}^k), k <= {k_max}")))
}

/// A line through `p`: `y - p.1 = slope * (x - p.0)`, or vertical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub through: (BigRational, BigRational),
    pub slope: Option<BigRational>,
}

impl Line {
    pub fn contains(&self, q: &(BigRational, BigRational)) -> bool {
        match &self.slope {
            Some(s) => &q.1 - &self.through.1 == s * (&q.0 - &self.through.0),
            None => q.0 == self.through.0,
        }
    }

    /// Coefficients `(a, b, c)` of `a x + b y + c = 0`.
    pub fn coefficients(&self) -> (BigRational, BigRational, BigRational) {
        let (px, py) = &self.through;
        match &self.slope {
            Some(s) => (s.clone(), -BigRational::one(), py - s * px),
            None => (BigRational::one(), BigRational::zero(), -px.clone()),
        }
    }
}

/// `v - a`, written `v + |a|` for negative `a` and `v` for zero.
pub(crate) fn shifted(v: &str, a: &BigRational) -> String {
    if a.is_zero() {
        v.to_string()
    } else if a < &BigRational::zero() {
        format!("{v} + {}", -a)
    } else {
        format!("{v} - {a}")
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (px, py) = &self.through;
        match &self.slope {
            Some(s) => write!(f, "{} = {s}*({})", shifted("y", py), shifted("x", px)),
            None => write!(f, "x = {px}"),
        }
    }
}

/// A line through `p` meeting none of `points`: slopes 0, 1, 2, ... and
/// finally the vertical line. Each point blocks at most one candidate.
pub fn line_avoiding(p: &(BigRational, BigRational), points: &[(BigRational, BigRational)]) -> Result<Line> {
    if points.contains(p) {
        return Err(Error::Precondition("the point lies in the avoided set".into()));
    }
    for s in 0..=points.len() as i64 {
        let line = Line { through: p.clone(), slope: Some(BigRational::from_integer(s.into())) };
        if !points.iter().any(|q| line.contains(q)) {
            return Ok(line);
        }
    }
    Ok(Line { through: p.clone(), slope: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn q(a: i64, b: i64) -> (BigRational, BigRational) {
        (BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    #[test]
    fn point_examples() {
        let r5 = PolyRing::parse(ScalarField::prime(5).unwrap(), &["x", "y"], &[]).unwrap();
        let pt = other_max_point(&r5.poly("x").unwrap(), 5, 3).unwrap();
        assert_eq!(pt.coords, [Scalar::Residue(0), Scalar::Residue(1)]);
        let r3 = PolyRing::parse(ScalarField::prime(3).unwrap(), &["x", "y"], &[]).unwrap();
        let pt = other_max_point(&r3.poly("x + y").unwrap(), 3, 3).unwrap();
        assert_eq!(pt.coords, [Scalar::Residue(1), Scalar::Residue(2)]);
        let r2 = PolyRing::parse(ScalarField::prime(2).unwrap(), &["x", "y"], &[]).unwrap();
        let f = r2.poly("x^2 + x*y + y^2").unwrap();
        let pt = other_max_point(&f, 2, 3).unwrap();
        assert_eq!(pt.degree, 2);
        assert!(pt.field.is_zero(&f.evaluate_in(&pt.field, &pt.coords).unwrap()));
        assert!(other_max_point(&f, 2, 1).is_err());
    }

    #[test]
    fn line_examples() {
        assert_eq!(line_avoiding(&q(0, 0), &[q(1, 1)]).unwrap().slope, Some(BigRational::zero()));
        let l = line_avoiding(&q(0, 0), &[q(1, 0), q(1, 1)]).unwrap();
        assert_eq!(l.slope, Some(BigRational::from_integer(2.into())));
        let l = line_avoiding(&q(2, 3), &[]).unwrap();
        assert_eq!(l.to_string(), "y - 3 = 0*(x - 2)");
        assert!(line_avoiding(&q(0, 0), &[q(0, 0)]).is_err());
        let l = line_avoiding(&q(0, 0), &[q(1, 0), q(2, 2), q(1, 2), q(0, 5)]).unwrap();
        assert_eq!(l.slope, Some(BigRational::from_integer(3.into())));
    }
}
