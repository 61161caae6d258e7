use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive definite binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

pub fn check_discriminant(d: &BigInt) -> Result<()> {
    let r = d.mod_floor(&BigInt::from(4));
    if !d.is_negative() || !(r.is_zero() || r.is_one()) {
        return Err(Error::Invalid(format!("{d} is not a negative discriminant (D < 0, D = 0 or 1 mod 4)")));
    }
    Ok(())
}

/// Whether `d` is a fundamental discriminant.
pub fn is_fundamental(d: &BigInt) -> bool {
    let four = BigInt::from(4);
    let squarefree = |m: &BigInt| {
        let m = m.abs();
        let mut k = BigInt::from(2);
        while &k * &k <= m {
            if (&m % (&k * &k)).is_zero() {
                return false;
            }
            k += 1;
        }
        true
    };
    match d.mod_floor(&four) {
        r if r.is_one() => squarefree(d),
        r if r.is_zero() => {
            let m = d / &four;
            let mr = m.mod_floor(&four);
            (mr == BigInt::from(2) || mr == BigInt::from(3)) && squarefree(&m)
        }
        _ => false,
    }
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let f = QuadForm { a: a.into(), b: b.into(), c: c.into() };
        if !f.discriminant().is_negative() {
            return Err(Error::Invalid(format!("{f} is not definite")));
        }
        if !f.a.is_positive() {
            return Err(Error::Invalid(format!("{f} is not positive definite")));
        }
        Ok(f)
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The identity class `(1, D mod 2, (D mod 2 - D)/4)`.
    pub fn principal(d: &BigInt) -> Result<Self> {
        check_discriminant(d)?;
        let b = d.mod_floor(&BigInt::from(2));
        let c = (&b - d) / BigInt::from(4);
        QuadForm::new(1, b, c)
    }

    pub fn is_reduced(&self) -> bool {
        let babs = self.b.abs();
        babs <= self.a && self.a <= self.c && (!(babs == self.a || self.a == self.c) || !self.b.is_negative())
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    pub fn inverse(&self) -> QuadForm {
        reduce_form(&QuadForm { a: self.a.clone(), b: -&self.b, c: self.c.clone() }).expect("definite")
    }

    /// Translate `b` into `(-a, a]`.
    fn normalize(&self) -> QuadForm {
        let two_a = BigInt::from(2) * &self.a;
        let r = (&self.a - &self.b).div_floor(&two_a);
        QuadForm {
            a: self.a.clone(),
            b: &self.b + &r * &two_a,
            c: &self.a * &r * &r + &self.b * &r + &self.c,
        }
    }
}

/// Gauss reduction.
pub fn reduce_form(f: &QuadForm) -> Result<QuadForm> {
    QuadForm::new(f.a.clone(), f.b.clone(), f.c.clone())?;
    let mut g = f.normalize();
    while g.a > g.c {
        g = QuadForm { a: g.c.clone(), b: -&g.b, c: g.a.clone() }.normalize();
    }
    if g.a == g.c && g.b.is_negative() {
        g.b = -g.b;
    }
    Ok(g)
}

/// `(d, u, v)` with `u a + v b = d = gcd(a, b)`.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Composition of primitive forms of the same discriminant, reduced.
pub fn compose(f1: &QuadForm, f2: &QuadForm) -> Result<QuadForm> {
    let d = f1.discriminant();
    if d != f2.discriminant() {
        return Err(Error::Invalid(format!("{f1} and {f2} have different discriminants")));
    }
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let s = (&f1.b + &f2.b) / BigInt::from(2);
    let n = &f2.b - &s;
    let (dd, y1) = if (&f2.a % &f1.a).is_zero() {
        (f1.a.clone(), BigInt::zero())
    } else {
        let (g, u, _) = xgcd(&f2.a, &f1.a);
        (g, u)
    };
    let (d1, x2, y2) = if (&s % &dd).is_zero() {
        (dd.clone(), BigInt::zero(), -BigInt::one())
    } else {
        let (g, u, v) = xgcd(&s, &dd);
        (g, u, -v)
    };
    let v1 = &f1.a / &d1;
    let v2 = &f2.a / &d1;
    let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
    let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
    let a3 = &v1 * &v2;
    let c3 = (&b3 * &b3 - &d) / (BigInt::from(4) * &a3);
    reduce_form(&QuadForm { a: a3, b: b3, c: c3 })
}

/// Reduced forms of a negative discriminant with their composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroup {
    pub disc: BigInt,
    pub fundamental: bool,
    pub forms: Vec<QuadForm>,
    /// `table[i][j]` is the index of `forms[i] * forms[j]`.
    pub table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn index_of(&self, f: &QuadForm) -> Option<usize> {
        let g = reduce_form(f).ok()?;
        self.forms.iter().position(|x| *x == g)
    }

    pub fn order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }

    /// The table is closed, the principal form is an identity and every
    /// entry was recomputed by composition.
    pub fn verify(&self) -> Result<bool> {
        if self.forms.first() != Some(&QuadForm::principal(&self.disc)?) {
            return Ok(false);
        }
        for (i, f) in self.forms.iter().enumerate() {
            if !f.is_reduced() || f.discriminant() != self.disc || self.table[0][i] != i {
                return Ok(false);
            }
            for (j, g) in self.forms.iter().enumerate() {
                if self.index_of(&compose(f, g)?) != Some(self.table[i][j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Enumerate primitive reduced forms with `|b| <= a <= sqrt(|D|/3)`.
pub fn class_group(d: &BigInt) -> Result<ClassGroup> {
    check_discriminant(d)?;
    let bound = (d.abs() / BigInt::from(3)).sqrt();
    let mut forms = Vec::new();
    let mut a = BigInt::one();
    while a <= bound {
        let mut b: BigInt = -&a + 1;
        while b <= a {
            let num: BigInt = &b * &b - d;
            let four_a = BigInt::from(4) * &a;
            if (&num % &four_a).is_zero() {
                let c = num / four_a;
                let f = QuadForm { a: a.clone(), b: b.clone(), c };
                if f.is_reduced() && f.is_primitive() {
                    forms.push(f);
                }
            }
            b += 1;
        }
        a += 1;
    }
    forms.sort_by(|x, y| (&x.a, x.b.abs(), -&x.b).cmp(&(&y.a, y.b.abs(), -&y.b)));
    let mut table = vec![vec![0; forms.len()]; forms.len()];
    for i in 0..forms.len() {
        for j in 0..forms.len() {
            let g = compose(&forms[i], &forms[j])?;
            table[i][j] = forms
                .iter()
                .position(|x| *x == g)
                .ok_or_else(|| Error::Invalid(format!("composition {g} escaped the form list")))?;
        }
    }
    Ok(ClassGroup { disc: d.clone(), fundamental: is_fundamental(d), forms, table })
}
