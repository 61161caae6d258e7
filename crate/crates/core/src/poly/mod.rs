//! Sparse multivariate polynomials over a [`ScalarField`].

mod factor;
mod parse;
mod ring;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Scalar, ScalarField};

pub use factor::{factor_bivariate, factor_univariate_integer, irreducibility_evidence};
pub use parse::{format_polynomial, parse_polynomial};
pub use ring::PolyRing;

/// Exponent vector, one slot per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect()
    }
}

/// Total multiplicative orders on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GRevLex,
    /// Graded reverse lexicographic on the first `k` variables, ties broken by
    /// graded reverse lexicographic on the rest. Eliminates the first block.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GRevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.0.len());
                grevlex(&a.0[..k], &b.0[..k]).then_with(|| grevlex(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

/// A polynomial as a sparse map from exponent vectors to nonzero scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: ScalarField,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: &ScalarField, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &ScalarField, nvars: usize, c: Scalar) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(field: &ScalarField, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn from_i64(field: &ScalarField, nvars: usize, n: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(n))
    }

    pub fn var(field: &ScalarField, nvars: usize, i: usize) -> Self {
        Self::from_terms(field, nvars, [(Monomial::var(nvars, i), field.one())])
    }

    pub fn monomial(field: &ScalarField, m: Monomial, c: Scalar) -> Self {
        let n = m.nvars();
        Self::from_terms(field, n, [(m, c)])
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        field: &ScalarField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.get_mut(&m) {
                Some(old) => *old = field.add(old, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !field.is_zero(c));
        Polynomial { field: field.clone(), nvars, terms: map }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Same field and same number of variables.
    pub fn same_ring(&self, other: &Polynomial) -> bool {
        self.field == other.field && self.nvars == other.nvars
    }

    pub(crate) fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{}[{} vars] vs {}[{} vars]",
                self.field, self.nvars, other.field, other.nvars
            )))
        }
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(&self.field, self.nvars);
        }
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), self.field.mul(a, c))).collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(|| self.field.zero());
            *entry = self.field.add(entry, c);
            if self.field.is_zero(entry) {
                terms.remove(m);
            }
        }
        Ok(Polynomial { field: self.field.clone(), nvars: self.nvars, terms })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = self.field.mul(c1, c2);
                match terms.get_mut(&m) {
                    Some(old) => *old = self.field.add(old, &c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !self.field.is_zero(c));
        Ok(Polynomial { field: self.field.clone(), nvars: self.nvars, terms })
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.field, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at a point whose coordinates lie in the polynomial's field.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        self.evaluate_in(&self.field.clone(), point)
    }

    /// Value at a point with coordinates in `field`, an extension of the
    /// coefficient field (GF(p) inside GF(p^k)).
    pub fn evaluate_in(&self, field: &ScalarField, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: point.len() });
        }
        for s in point {
            field.check(s)?;
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.embed(&self.field, c)?;
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    t = field.mul(&t, &field.pow(x, *e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for variable `i`; images share a target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: images.len() });
        }
        let (tfield, tn) = match images.first() {
            Some(p) => (p.field.clone(), p.nvars),
            None => (self.field.clone(), 0),
        };
        for img in images {
            if img.field != tfield || img.nvars != tn {
                return Err(Error::RingMismatch("substitution images live in different rings".into()));
            }
        }
        if tfield != self.field {
            return Err(Error::RingMismatch("substitution changes the coefficient field".into()));
        }
        let mut acc = Polynomial::zero(&tfield, tn);
        let mut power_cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&tfield, tn, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = power_cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                    t = &t * &pw;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Move variable `i` to slot `map[i]` of a ring with `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial(e), c.clone())
        });
        Polynomial::from_terms(&self.field, nvars, terms)
    }

    /// Restrict to a subring: keep only variables listed in `keep` (in that
    /// order). Fails if another variable occurs.
    pub fn restrict(&self, keep: &[usize]) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 && !keep.contains(&i) {
                    return None;
                }
            }
            terms.push((Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()));
        }
        Some(Polynomial::from_terms(&self.field, keep.len(), terms))
    }

    /// Set the listed variables to zero.
    pub fn kill_variables(&self, vars: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
            .map(|(m, c)| (m.clone(), c.clone()));
        Polynomial::from_terms(&self.field, self.nvars, terms)
    }

    /// Over QQ: the primitive integer polynomial with positive leading
    /// coefficient (grevlex) that is a rational multiple of `self`.
    pub fn primitive_part(&self) -> Result<Polynomial> {
        if self.field != ScalarField::Rationals {
            return Err(Error::Unsupported("content normalization needs QQ coefficients".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut den = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let q = self.field.as_rational(c).unwrap();
            den = den.lcm(q.denom());
        }
        for c in self.terms.values() {
            let q = self.field.as_rational(c).unwrap();
            let n = q.numer() * (&den / q.denom());
            num_gcd = num_gcd.gcd(&n);
        }
        let mut scale = BigRational::new(den, num_gcd);
        let lead = self.leading_term(MonomialOrder::GRevLex).unwrap().1;
        if self.field.as_rational(lead).unwrap().is_negative() {
            scale = -scale;
        }
        Ok(self.scale(&Scalar::Rational(scale)))
    }

    /// Integer coefficients of a QQ polynomial, if all coefficients are
    /// integers.
    pub fn integer_coefficients(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| match c {
                Scalar::Rational(q) if q.is_integer() => Some((m.clone(), q.numer().clone())),
                _ => None,
            })
            .collect()
    }

    /// Exact division by `d` (single-divisor division algorithm, which is
    /// exact whenever `d` divides `self`).
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let order = MonomialOrder::GRevLex;
        let (dm, dc) = d.leading_term(order)?;
        let dm = dm.clone();
        let dinv = self.field.inv(dc).ok()?;
        let mut rest = self.clone();
        let mut q = Polynomial::zero(&self.field, self.nvars);
        while let Some((m, c)) = rest.leading_term(order) {
            let mm = m.div(&dm)?;
            let cc = self.field.mul(c, &dinv);
            let t = Polynomial::monomial(&self.field, mm.clone(), cc.clone());
            rest = &rest - &d.mul_term(&mm, &cc);
            q = &q + &t;
        }
        Some(q)
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics when the operands live in different rings; use the
            /// `checked_*` variants for fallible arithmetic.
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Pow(u32),
}

/// Exact ring arithmetic without reduction modulo relations.
pub fn poly_arith(f: &Polynomial, op: ArithOp<'_>) -> Result<Polynomial> {
    match op {
        ArithOp::Add(g) => f.checked_add(g),
        ArithOp::Sub(g) => f.checked_sub(g),
        ArithOp::Mul(g) => f.checked_mul(g),
        ArithOp::Pow(e) => Ok(f.pow(e)),
    }
}

impl fmt::Display for Polynomial {
    /// Generic variable names `x0, x1, ...`; use [`PolyRing::fmt_poly`] for
    /// declared names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", format_polynomial(self, &names))
    }
}
