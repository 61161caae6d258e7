//! Scalar fields: the rationals, prime fields and simple extensions of prime
//! fields presented as `F_p[t]/(m(t))`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `F_p[t]/(modulus)` with a monic irreducible modulus of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    /// Monic, coefficients from `t^0` upwards.
    modulus: Vec<u64>,
}

impl ExtensionField {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn reduce(&self, mut c: Vec<u64>) -> Vec<u64> {
        let k = self.degree();
        let p = self.p;
        while c.len() > k {
            let lead = c.pop().unwrap();
            if lead != 0 {
                let shift = c.len() - k;
                for (i, &m) in self.modulus[..k].iter().enumerate() {
                    c[shift + i] = sub_mod(c[shift + i], mul_mod(lead, m, p), p);
                }
            }
        }
        c.resize(k, 0);
        c
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        self.reduce(out)
    }

    fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }
}

/// The coefficient field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Rationals,
    Prime(u64),
    Extension(Arc<ExtensionField>),
}

/// A field element. The variant always matches the owning [`ScalarField`]:
/// `Rational` for QQ, `Residue` in `[0, p)` for GF(p), `Ext` (length `k`
/// coefficient vector in the power basis of `t`) for GF(p^k).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Ext(Vec<u64>),
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

impl ScalarField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(ScalarField::Prime(p))
    }

    /// GF(p^k) using the modulus chosen by [`find_irreducible`]. `k = 1`
    /// yields the prime field itself.
    pub fn extension(p: u64, k: usize) -> Result<Self> {
        if k == 1 {
            return Self::prime(p);
        }
        let modulus = find_irreducible(p, k)?;
        Ok(ScalarField::Extension(Arc::new(ExtensionField { p, modulus })))
    }

    pub fn extension_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let m = fp::trim(modulus.iter().map(|c| c % p).collect());
        if m.len() < 3 || *m.last().unwrap() != 1 {
            return Err(Error::Invalid("extension modulus must be monic of degree >= 2".into()));
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::Invalid("extension modulus is reducible".into()));
        }
        Ok(ScalarField::Extension(Arc::new(ExtensionField { p, modulus: m })))
    }

    /// 0 for QQ.
    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarField::Rationals => 0,
            ScalarField::Prime(p) => *p,
            ScalarField::Extension(e) => e.p,
        }
    }

    /// Number of elements, `None` for QQ.
    pub fn order(&self) -> Option<u64> {
        match self {
            ScalarField::Rationals => None,
            ScalarField::Prime(p) => Some(*p),
            ScalarField::Extension(e) => Some(e.order()),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, ScalarField::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Rational(BigRational::zero()),
            ScalarField::Prime(_) => Scalar::Residue(0),
            ScalarField::Extension(e) => Scalar::Ext(vec![0; e.degree()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            ScalarField::Prime(p) => Scalar::Residue(bigint_mod(n, *p)),
            ScalarField::Extension(e) => {
                let mut v = vec![0; e.degree()];
                v[0] = bigint_mod(n, e.p);
                Scalar::Ext(v)
            }
        }
    }

    /// Fails in characteristic p when p divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            ScalarField::Rationals => Ok(Scalar::Rational(q.clone())),
            _ => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = self
                    .inv(&den)
                    .map_err(|_| Error::ScalarOutsideField(format!("{q} has no image in {self}")))?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    /// The class of `t` in GF(p^k).
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            ScalarField::Extension(e) => {
                let mut v = vec![0; e.degree()];
                v[1] = 1;
                Some(Scalar::Ext(v))
            }
            _ => None,
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (ScalarField::Rationals, Scalar::Rational(_)) => true,
            (ScalarField::Prime(p), Scalar::Residue(v)) => v < p,
            (ScalarField::Extension(e), Scalar::Ext(v)) => {
                v.len() == e.degree() && v.iter().all(|c| *c < e.p)
            }
            _ => false,
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::ScalarOutsideField(format!("{s:?} is not an element of {self}")))
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(v) => *v == 0,
            Scalar::Ext(v) => v.iter().all(|c| *c == 0),
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue(v) => *v == 1,
            Scalar::Ext(v) => v[0] == 1 && v[1..].iter().all(|c| *c == 0),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (ScalarField::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(add_mod(*x, *y, *p))
            }
            (ScalarField::Extension(e), Scalar::Ext(x), Scalar::Ext(y)) => {
                Scalar::Ext(x.iter().zip(y).map(|(u, v)| add_mod(*u, *v, e.p)).collect())
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (ScalarField::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (ScalarField::Prime(p), Scalar::Residue(x)) => Scalar::Residue(sub_mod(0, *x, *p)),
            (ScalarField::Extension(e), Scalar::Ext(x)) => {
                Scalar::Ext(x.iter().map(|u| sub_mod(0, *u, e.p)).collect())
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (ScalarField::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(mul_mod(*x, *y, *p))
            }
            (ScalarField::Extension(e), Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(e.mul(x, y)),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::Invalid("division by zero".into()));
        }
        Ok(match (self, a) {
            (ScalarField::Rationals, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (ScalarField::Prime(p), Scalar::Residue(x)) => Scalar::Residue(pow_mod(*x, p - 2, *p)),
            (ScalarField::Extension(e), _) => self.pow(a, e.order() - 2),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The `index`-th element of a finite field in scan order: the base-`p`
    /// digits of `index`, least significant first, are the power-basis
    /// coefficients.
    pub fn element(&self, index: u64) -> Option<Scalar> {
        match self {
            ScalarField::Rationals => None,
            ScalarField::Prime(p) => (index < *p).then_some(Scalar::Residue(index)),
            ScalarField::Extension(e) => {
                if index >= e.order() {
                    return None;
                }
                let mut v = Vec::with_capacity(e.degree());
                let mut n = index;
                for _ in 0..e.degree() {
                    v.push(n % e.p);
                    n /= e.p;
                }
                Some(Scalar::Ext(v))
            }
        }
    }

    /// All elements of a finite field in scan order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let q = self.order()?;
        Some((0..q).map(|i| self.element(i).unwrap()).collect())
    }

    /// Embed an element of `from` into `self`. Supported: identity and
    /// GF(p) into GF(p^k).
    pub fn embed(&self, from: &ScalarField, s: &Scalar) -> Result<Scalar> {
        if from == self {
            return Ok(s.clone());
        }
        match (from, self, s) {
            (ScalarField::Prime(p), ScalarField::Extension(e), Scalar::Residue(v)) if *p == e.p => {
                let mut out = vec![0; e.degree()];
                out[0] = *v;
                Ok(Scalar::Ext(out))
            }
            _ => Err(Error::ScalarOutsideField(format!("cannot embed {from} into {self}"))),
        }
    }

    /// Exact rational value, if this is QQ.
    pub fn as_rational<'a>(&self, s: &'a Scalar) -> Option<&'a BigRational> {
        match s {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn format_scalar(&self, s: &Scalar) -> String {
        match s {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue(v) => v.to_string(),
            Scalar::Ext(v) => {
                let mut parts = Vec::new();
                for (i, c) in v.iter().enumerate().rev() {
                    if *c == 0 {
                        continue;
                    }
                    let mono = match i {
                        0 => String::new(),
                        1 => "%a".to_string(),
                        _ => format!("%a^{i}"),
                    };
                    parts.push(match (i, *c) {
                        (0, c) => c.to_string(),
                        (_, 1) => mono,
                        (_, c) => format!("{c}*{mono}"),
                    });
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }

    /// Whether the element is a non-negative integer below `p` in the prime
    /// subfield (used by the printer to decide on parentheses).
    pub(crate) fn is_prime_subfield(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Ext(v) => v[1..].iter().all(|c| *c == 0),
            _ => true,
        }
    }

    pub(crate) fn is_negative(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Rational(q) => q.is_negative(),
            _ => false,
        }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "QQ"),
            ScalarField::Prime(p) => write!(f, "GF({p})"),
            ScalarField::Extension(e) => write!(f, "GF({}^{})", e.p, e.degree()),
        }
    }
}

/// Smallest monic irreducible polynomial of degree `k` over GF(p), where
/// candidates are ordered by their coefficient vector read from `t^(k-1)`
/// down to `t^0`. Coefficients are returned from `t^0` upwards.
pub fn find_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    if !is_prime_u64(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if k < 2 {
        return Err(Error::Invalid("extension degree must be at least 2".into()));
    }
    let count = (p as u128).pow(k as u32);
    for n in 0..count {
        let mut coeffs = vec![0u64; k + 1];
        coeffs[k] = 1;
        let mut m = n;
        for c in coeffs.iter_mut().take(k) {
            *c = (m % p as u128) as u64;
            m /= p as u128;
        }
        if fp::is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Dense univariate polynomials over GF(p), coefficients from `t^0` upwards,
/// no trailing zeros (the zero polynomial is empty).
pub mod fp {
    use super::{add_mod, mul_mod, pow_mod, sub_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| add_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
                .collect(),
        )
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
                .collect(),
        )
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        trim(out)
    }

    /// Panics on a zero divisor.
    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let inv_lead = pow_mod(b[db], p - 2, p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), inv_lead, p);
            q[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bc, p), p);
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        div_rem(a, b, p).1
    }

    /// Monic gcd.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let inv = pow_mod(lead, p - 2, p);
            x.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
        }
        x
    }

    pub fn pow_rem(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], modulus, p);
        let mut b = rem(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), modulus, p);
            }
            b = rem(&mul(&b, &b, p), modulus, p);
            e >>= 1;
        }
        acc
    }

    /// `t^(p^i) mod f` for `i = 1..=count`, by repeated p-th powers.
    pub fn frobenius_orbit(f: &[u64], p: u64, count: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::with_capacity(count);
        let mut cur = rem(&[0, 1], f, p);
        for _ in 0..count {
            cur = pow_rem(&cur, p, f, p);
            out.push(cur.clone());
        }
        out
    }

    /// Ben-Or test: `f` of degree `k >= 1` is irreducible iff
    /// `gcd(f, t^(p^i) - t) = 1` for all `1 <= i <= k/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        if f.len() < 2 {
            return false;
        }
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        for h in frobenius_orbit(&f, p, k / 2) {
            let g = gcd(&f, &sub(&h, &[0, 1], p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        // Oracle: no monic factor of degree 1..=k/2 divides f.
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let count = p.pow(d as u32);
            for n in 0..count {
                let mut g = vec![0u64; d + 1];
                g[d] = 1;
                let mut m = n;
                for c in g.iter_mut().take(d) {
                    *c = m % p;
                    m /= p;
                }
                if fp::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn find_irreducible_matches_enumeration() {
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(5, 2).unwrap(), vec![2, 0, 1]);
        for (p, k) in [(2, 3), (2, 4), (3, 3), (5, 3), (7, 2), (3, 4)] {
            let f = find_irreducible(p, k).unwrap();
            assert!(brute_irreducible(&f, p), "p={p} k={k}");
            for i in 1..k {
                let h = fp::frobenius_orbit(&f, p, i).pop().unwrap();
                assert_eq!(fp::gcd(&f, &fp::sub(&h, &[0, 1], p), p), vec![1]);
            }
            for x in 0..p {
                assert_ne!(fp::eval(&f, x, p), 0);
            }
        }
    }

    #[test]
    fn ben_or_agrees_with_brute_force() {
        for p in [2u64, 3, 5] {
            for k in 2..=4usize {
                let count = p.pow(k as u32);
                for n in 0..count {
                    let mut f = vec![0u64; k + 1];
                    f[k] = 1;
                    let mut m = n;
                    for c in f.iter_mut().take(k) {
                        *c = m % p;
                        m /= p;
                    }
                    assert_eq!(fp::is_irreducible(&f, p), brute_irreducible(&f, p), "{f:?} mod {p}");
                }
            }
        }
    }

    #[test]
    fn extension_field_axioms() {
        let f = ScalarField::extension(2, 2).unwrap();
        let els = f.elements().unwrap();
        assert_eq!(els.len(), 4);
        for a in &els {
            if !f.is_zero(a) {
                assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
            }
            for b in &els {
                for c in &els {
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                }
            }
        }
        // t is a primitive cube root of unity in GF(4).
        let t = f.generator().unwrap();
        assert!(f.is_one(&f.pow(&t, 3)));
        assert!(!f.is_one(&t));
    }

    #[test]
    fn rational_images_in_prime_fields() {
        let f = ScalarField::prime(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), Scalar::Residue(3));
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(f.from_rational(&fifth).is_err());
        assert!(ScalarField::prime(6).is_err());
    }
}
