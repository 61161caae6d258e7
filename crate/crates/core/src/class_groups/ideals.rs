//! Ideals of the imaginary quadratic order `Z[w]` of discriminant `D`, where
//! `w = sqrt(D/4)` for `D = 0 mod 4` and `w = (1 + sqrt(D))/2` otherwise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::forms::{check_discriminant, class_group, reduce_form, QuadForm};
use crate::error::{Error, Result};

/// `u + v w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadElement {
    pub u: BigInt,
    pub v: BigInt,
}

/// `w^2 = t w - n`.
fn omega_poly(d: &BigInt) -> (BigInt, BigInt) {
    let t = d.mod_floor(&BigInt::from(4));
    let n = (&t - d) / BigInt::from(4);
    (t, n)
}

impl QuadElement {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        QuadElement { u: u.into(), v: v.into() }
    }

    pub fn mul(&self, other: &QuadElement, d: &BigInt) -> QuadElement {
        let (t, n) = omega_poly(d);
        let vv = &self.v * &other.v;
        QuadElement {
            u: &self.u * &other.u - &vv * &n,
            v: &self.u * &other.v + &self.v * &other.u + &vv * &t,
        }
    }

    pub fn norm(&self, d: &BigInt) -> BigInt {
        let (t, n) = omega_poly(d);
        &self.u * &self.u + &t * &self.u * &self.v + &n * &self.v * &self.v
    }

    pub fn format(&self, d: &BigInt) -> String {
        let w = if d.mod_floor(&BigInt::from(4)).is_zero() {
            format!("sqrt({})", d / BigInt::from(4))
        } else {
            format!("(1 + sqrt({d}))/2")
        };
        let wt = |v: &BigInt| if v.abs().is_one() { w.clone() } else { format!("{}*{w}", v.abs()) };
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => self.u.to_string(),
            (true, false) => format!("{}{}", if self.v.is_negative() { "-" } else { "" }, wt(&self.v)),
            (false, false) => format!("{} {} {}", self.u, if self.v.is_negative() { "-" } else { "+" }, wt(&self.v)),
        }
    }
}

/// The lattice `Z a + Z (b + c w)` in Hermite normal form:
/// `a, c > 0`, `0 <= b < a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadIdeal {
    pub disc: BigInt,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let second = QuadElement { u: self.b.clone(), v: self.c.clone() };
        write!(f, "({}, {})", self.a, second.format(&self.disc))
    }
}

/// HNF of the Z-span of `vectors`; `None` if the span has rank < 2.
fn hnf(mut vectors: Vec<QuadElement>) -> Option<(BigInt, BigInt, BigInt)> {
    vectors.retain(|e| !(e.u.is_zero() && e.v.is_zero()));
    loop {
        let nonzero: Vec<usize> = (0..vectors.len()).filter(|&i| !vectors[i].v.is_zero()).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| vectors[i].v.abs()).unwrap();
        let pivot = vectors[p].clone();
        for &i in &nonzero {
            if i != p {
                let q = vectors[i].v.div_floor(&pivot.v);
                vectors[i].u -= &q * &pivot.u;
                vectors[i].v -= &q * &pivot.v;
            }
        }
    }
    let p = vectors.iter().position(|e| !e.v.is_zero())?;
    let mut pivot = vectors.remove(p);
    if pivot.v.is_negative() {
        pivot.u = -pivot.u;
        pivot.v = -pivot.v;
    }
    let a = vectors.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.u));
    if a.is_zero() {
        return None;
    }
    Some((a.clone(), pivot.u.mod_floor(&a), pivot.v))
}

impl QuadIdeal {
    /// The ideal generated by `gens` as a module over the order.
    pub fn generated_by(d: &BigInt, gens: &[QuadElement]) -> Result<Self> {
        check_discriminant(d)?;
        let w = QuadElement::new(0, 1);
        let mut span = Vec::new();
        for g in gens {
            span.push(g.clone());
            span.push(g.mul(&w, d));
        }
        let (a, b, c) = hnf(span).ok_or_else(|| Error::Invalid("the zero ideal".into()))?;
        Ok(QuadIdeal { disc: d.clone(), a, b, c })
    }

    pub fn principal(d: &BigInt, x: &QuadElement) -> Result<Self> {
        Self::generated_by(d, std::slice::from_ref(x))
    }

    pub fn unit(d: &BigInt) -> Result<Self> {
        Self::principal(d, &QuadElement::new(1, 0))
    }

    pub fn basis(&self) -> [QuadElement; 2] {
        [QuadElement::new(self.a.clone(), 0), QuadElement::new(self.b.clone(), self.c.clone())]
    }

    /// Index in the order.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn mul(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        if self.disc != other.disc {
            return Err(Error::Invalid("ideals of different orders".into()));
        }
        let mut gens = Vec::new();
        for x in self.basis() {
            for y in other.basis() {
                gens.push(x.mul(&y, &self.disc));
            }
        }
        Self::generated_by(&self.disc, &gens)
    }

    pub fn pow(&self, n: u32) -> Result<QuadIdeal> {
        let mut out = QuadIdeal::unit(&self.disc)?;
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The reduced form of the primitive part `(a/c, b/c + w)`.
    pub fn to_form(&self) -> Result<QuadForm> {
        let a = &self.a / &self.c;
        let b = &self.b / &self.c;
        let t = self.disc.mod_floor(&BigInt::from(4));
        // b + w = (-B + sqrt(D))/2 with B = -(2b + t).
        let bb = -(BigInt::from(2) * &b + &t);
        let cc = (&bb * &bb - &self.disc) / (BigInt::from(4) * &a);
        reduce_form(&QuadForm { a, b: bb, c: cc })
    }

    /// A generator, if principal: the first element of norm `N(I)` in the
    /// scan `v = 0, 1, -1, 2, ...`, `u = 0, 1, -1, ...`, sign-normalized.
    pub fn principal_generator(&self) -> Result<Option<QuadElement>> {
        let n = self.norm();
        let d = &self.disc;
        let dabs = d.abs();
        // N(u + v w) = ((2u + t v)^2 + |D| v^2) / 4.
        let vmax = (BigInt::from(4) * &n / &dabs).sqrt();
        let umax = (BigInt::from(4) * &n).sqrt() + &vmax + 1;
        let mut v = BigInt::zero();
        while v.abs() <= vmax {
            let mut u = BigInt::zero();
            while u.abs() <= umax {
                let x = QuadElement { u: u.clone(), v: v.clone() };
                if x.norm(d) == n && QuadIdeal::principal(d, &x)? == *self {
                    return Ok(Some(normalize_sign(x)));
                }
                u = if u.is_positive() { -u } else { -u + 1 };
            }
            v = if v.is_positive() { -v } else { -v + 1 };
        }
        Ok(None)
    }
}

fn normalize_sign(x: QuadElement) -> QuadElement {
    if x.u.is_negative() || (x.u.is_zero() && x.v.is_negative()) {
        QuadElement { u: -x.u, v: -x.v }
    } else {
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Splitting {
    Split,
    Ramified,
    Inert,
}

/// Kronecker symbol `(D/p)` for a prime `p`.
fn kronecker(d: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    if (d % &pb).is_zero() {
        return 0;
    }
    if p == 2 {
        return if d.mod_floor(&BigInt::from(8)) == BigInt::one() { 1 } else { -1 };
    }
    let e = d.mod_floor(&pb).modpow(&BigInt::from((p - 1) / 2), &pb);
    if e.is_one() {
        1
    } else {
        -1
    }
}

/// A prime of the order above `p`: the one with the smallest HNF `b`. Inert
/// primes return `None`; the prime is `(p)` itself.
pub fn prime_above(p: u64, d: &BigInt) -> Result<(Splitting, Option<QuadIdeal>)> {
    check_discriminant(d)?;
    if p < 2 || !(2..p).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k)) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let kind = match kronecker(d, p) {
        0 => Splitting::Ramified,
        1 => Splitting::Split,
        _ => return Ok((Splitting::Inert, None)),
    };
    let (t, n) = omega_poly(d);
    let pb = BigInt::from(p);
    let mut best: Option<QuadIdeal> = None;
    for r in 0..p {
        let r = BigInt::from(r);
        if (&r * &r - &t * &r + &n).mod_floor(&pb).is_zero() {
            let m = QuadIdeal::generated_by(d, &[QuadElement::new(pb.clone(), 0), QuadElement::new(-&r, 1)])?;
            if best.as_ref().is_none_or(|b| m.b < b.b) {
                best = Some(m);
            }
        }
    }
    let m = best.ok_or_else(|| Error::Invalid("no root of the minimal polynomial".into()))?;
    Ok((kind, Some(m)))
}

/// `(x) = m^n` with `n` the order of `[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ara1Certificate {
    pub ideal: QuadIdeal,
    pub n: u32,
    pub x: QuadElement,
    /// HNF of `m^n`, which must equal that of `(x)`.
    pub power: QuadIdeal,
}

impl Ara1Certificate {
    pub fn verify(&self) -> Result<bool> {
        let d = &self.ideal.disc;
        let power = self.ideal.pow(self.n)?;
        let mut smaller_principal = false;
        for k in 1..self.n {
            smaller_principal |= self.ideal.pow(k)?.principal_generator()?.is_some();
        }
        Ok(power == self.power
            && QuadIdeal::principal(d, &self.x)? == power
            && self.x.norm(d) == num_traits::pow(self.ideal.norm(), self.n as usize)
            && !smaller_principal)
    }
}

pub fn ara1_witness_quadratic(m: &QuadIdeal) -> Result<Ara1Certificate> {
    let h = class_group(&m.disc)?.h() as u32;
    let mut power = QuadIdeal::unit(&m.disc)?;
    for n in 1..=h.max(1) {
        power = power.mul(m)?;
        if let Some(x) = power.principal_generator()? {
            return Ok(Ara1Certificate { ideal: m.clone(), n, x, power });
        }
    }
    Err(Error::Invalid(format!("no power of {m} up to the class number is principal")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class_groups::forms::compose;

    fn d20() -> BigInt {
        BigInt::from(-20)
    }

    #[test]
    fn primes_above() {
        let (k, m) = prime_above(2, &d20()).unwrap();
        assert_eq!(k, Splitting::Ramified);
        assert_eq!(m.unwrap().to_string(), "(2, 1 + sqrt(-5))");
        let (k, m) = prime_above(3, &d20()).unwrap();
        assert_eq!(k, Splitting::Split);
        assert_eq!(m.unwrap().to_string(), "(3, 1 + sqrt(-5))");
        assert_eq!(prime_above(11, &d20()).unwrap(), (Splitting::Inert, None));
    }

    #[test]
    fn witnesses() {
        let m2 = prime_above(2, &d20()).unwrap().1.unwrap();
        let c = ara1_witness_quadratic(&m2).unwrap();
        assert_eq!((c.n, c.x.clone()), (2, QuadElement::new(2, 0)));
        assert!(c.verify().unwrap());
        let m3 = prime_above(3, &d20()).unwrap().1.unwrap();
        let c = ara1_witness_quadratic(&m3).unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.x.norm(&d20()), BigInt::from(9));
        assert!(c.verify().unwrap());
        let inert = QuadIdeal::principal(&d20(), &QuadElement::new(11, 0)).unwrap();
        let c = ara1_witness_quadratic(&inert).unwrap();
        assert_eq!((c.n, c.x), (1, QuadElement::new(11, 0)));
    }

    #[test]
    fn ideal_products_match_form_composition() {
        for d in [-20i64, -23, -56, -71] {
            let d = BigInt::from(d);
            let primes: Vec<QuadIdeal> = [2u64, 3, 5, 7, 11, 13]
                .iter()
                .filter_map(|p| prime_above(*p, &d).unwrap().1)
                .collect();
            for i in &primes {
                for j in &primes {
                    let lhs = i.mul(j).unwrap().to_form().unwrap();
                    let rhs = compose(&i.to_form().unwrap(), &j.to_form().unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{i} * {j}");
                }
            }
        }
    }
}
