//! Given integer polynomials `f, g` with no common root in the naturals,
//! find `c, n` such that `h = g + c f^n` has no root in the naturals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn eval(a: &[BigInt], m: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * m + c)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    trim(out)
}

fn pow(a: &[BigInt], n: u32) -> Vec<BigInt> {
    (0..n).fold(vec![BigInt::one()], |acc, _| mul(&acc, a))
}

/// `1 + ceil(max |a_i| / |a_d|)`: every real root has absolute value below
/// this. 1 for constants.
pub fn cauchy_bound(a: &[BigInt]) -> BigInt {
    let a = trim(a.to_vec());
    if a.len() <= 1 {
        return BigInt::one();
    }
    let lead = a.last().unwrap().abs();
    let top = a[..a.len() - 1].iter().map(|c| c.abs()).max().unwrap();
    BigInt::one() + top.div_ceil(&lead)
}

/// Everything needed to re-verify that `h = g + c f^n` has no natural root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitsCertificate {
    pub f: Vec<BigInt>,
    pub g: Vec<BigInt>,
    pub c: BigInt,
    pub n: u32,
    pub h: Vec<BigInt>,
    /// Crossover point: past it `|c f(m)^n| > |g(m)|` by the tail bounds.
    pub crossover: BigInt,
    /// `h(0), ..., h(range)`, all nonzero.
    pub values: Vec<BigInt>,
    /// Smallest `c` forced by the tail inequality
    /// `c (|lc f| / 2)^n M^(n deg f - deg g) > 2 |lc g|`.
    pub tail_c: BigInt,
}

impl UnitsCertificate {
    pub fn verify(&self) -> bool {
        let f = trim(self.f.clone());
        let g = trim(self.g.clone());
        if f.len() < 2 {
            return false;
        }
        let h = add(&g, &mul(std::slice::from_ref(&self.c), &pow(&f, self.n)));
        if h != self.h {
            return false;
        }
        // Values on the scanned range.
        for (m, v) in self.values.iter().enumerate() {
            let mm = BigInt::from(m);
            if v.is_zero() || eval(&h, &mm) != *v {
                return false;
            }
        }
        let range = BigInt::from(self.values.len()) - 1;
        // No root beyond the scanned range: by the root bound of h, or by the
        // tail inequality once past the crossover.
        if range >= cauchy_bound(&h) - BigInt::one() {
            return self.tail_holds(&f, &g);
        }
        range >= self.crossover && self.tail_holds(&f, &g)
    }

    fn tail_holds(&self, f: &[BigInt], g: &[BigInt]) -> bool {
        let df = f.len() - 1;
        let dg = g.len().saturating_sub(1);
        let n = self.n as usize;
        if n * df <= dg && !g.is_empty() {
            return false;
        }
        let m = &self.crossover;
        if *m < cauchy_bound(f) * 2 || (!g.is_empty() && *m < cauchy_bound(g) * 2) {
            return false;
        }
        // c * |lc f|^n * M^(n df - dg) > 2 * |lc g| * 2^n
        let lcf = f.last().unwrap().abs();
        let lcg = g.last().map(|c| c.abs()).unwrap_or_default();
        let lhs = &self.c * num_traits::pow(lcf, n) * num_traits::pow(m.clone(), n * df - dg);
        let rhs = BigInt::from(2) * lcg * num_traits::pow(BigInt::from(2), n);
        self.c >= self.tail_c && lhs > rhs
    }
}

/// Coefficients are listed from the constant term up.
pub fn units_lift(f: &[BigInt], g: &[BigInt]) -> Result<UnitsCertificate> {
    let f = trim(f.to_vec());
    let g = trim(g.to_vec());
    if f.len() < 2 {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    let cf = cauchy_bound(&f);
    let cg = cauchy_bound(&g);
    let scan = cf.clone().max(cg.clone());
    let mut m = BigInt::zero();
    while m <= scan {
        if eval(&f, &m).is_zero() && eval(&g, &m).is_zero() {
            return Err(Error::Precondition(format!("f and g share the natural root {m}")));
        }
        m += 1;
    }
    let df = f.len() - 1;
    let dg = g.len().saturating_sub(1);
    let n = (dg / df + 1) as u32;
    let crossover: BigInt = (&cf * 2u32).max(&cg * 2u32);
    let mut maxg = BigInt::zero();
    let mut m = BigInt::zero();
    while m <= crossover {
        maxg = maxg.max(eval(&g, &m).abs());
        m += 1;
    }
    let lcf = f.last().unwrap().abs();
    let lcg = g.last().map(|c| c.abs()).unwrap_or_default();
    let nu = n as usize;
    let num = BigInt::from(2) * lcg * num_traits::pow(BigInt::from(2), nu);
    let den = num_traits::pow(lcf, nu) * num_traits::pow(crossover.clone(), nu * df - dg);
    let tail_c: BigInt = num.div_floor(&den) + 1u32;
    let c: BigInt = (maxg + 1u32).max(tail_c.clone());
    let h = add(&g, &mul(std::slice::from_ref(&c), &pow(&f, n)));
    let range = crossover.clone().max(cauchy_bound(&h));
    let mut values = Vec::new();
    let mut m = BigInt::zero();
    while m <= range {
        values.push(eval(&h, &m));
        m += 1;
    }
    let cert = UnitsCertificate { f, g, c, n, h, crossover, values, tail_c };
    if !cert.verify() {
        return Err(Error::Invalid("units certificate failed to verify".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn examples() {
        let c = units_lift(&ints(&[0, 1]), &ints(&[-1, 1])).unwrap();
        assert_eq!(c.n, 2);
        assert!(c.verify());
        let c = units_lift(&ints(&[-1, 1]), &ints(&[-2, 1])).unwrap();
        assert_eq!(c.n, 2);
        assert!(c.verify());
        assert!(units_lift(&ints(&[0, 1]), &ints(&[0, 1])).is_err());
        assert!(units_lift(&ints(&[3]), &ints(&[0, 1])).is_err());
    }

    #[test]
    fn tampering_is_detected() {
        let mut c = units_lift(&ints(&[0, 1]), &ints(&[-1, 1])).unwrap();
        c.c = BigInt::zero();
        assert!(!c.verify());
    }

    #[test]
    fn cauchy_bounds() {
        assert_eq!(cauchy_bound(&ints(&[-6, 1, 1])), BigInt::from(7));
        assert_eq!(cauchy_bound(&ints(&[5])), BigInt::one());
    }
}
