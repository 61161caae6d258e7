//! Independent oracles for the integration tests. None of these call the
//! Gröbner engine except where noted.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use primavoid::{IdealHandle, PolyRing, Polynomial, ScalarField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0ac1e)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Random polynomial text in the named variables: `terms` terms of degree at
/// most `deg`, nonzero coefficients in `-coef..=coef`.
pub fn poly_text(r: &mut impl Rng, vars: &[&str], deg: u32, terms: usize, coef: i64) -> String {
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut c = 0;
        while c == 0 {
            c = r.gen_range(-coef..=coef);
        }
        let d = r.gen_range(0..=deg);
        let mut factors = vec![format!("({c})")];
        for _ in 0..d {
            factors.push(vars[r.gen_range(0..vars.len())].to_string());
        }
        out.push(factors.join("*"));
    }
    out.join(" + ")
}

pub type Dense = BTreeMap<Vec<u32>, BigRational>;

/// Coefficients of a polynomial over QQ keyed by exponent vector.
pub fn dense(f: &Polynomial) -> Dense {
    f.terms()
        .map(|(m, c)| (m.exponents().to_vec(), f.field().as_rational(c).expect("rational").clone()))
        .collect()
}

fn shift(f: &Dense, e: &[u32]) -> Dense {
    f.iter().map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect()
}

fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Row echelon basis over QQ, pivot on the largest key of each row.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Vec<u32>, Dense>,
}

impl Echelon {
    pub fn reduce(&self, f: &Dense) -> Dense {
        let mut f = f.clone();
        loop {
            let piv = f.keys().rev().find(|k| self.rows.contains_key(*k)).cloned();
            let Some(k) = piv else { return f };
            let row = &self.rows[&k];
            let c = f[&k].clone();
            for (m, a) in row {
                let v = f.get(m).cloned().unwrap_or_else(BigRational::zero) - &c * a;
                if v.is_zero() {
                    f.remove(m);
                } else {
                    f.insert(m.clone(), v);
                }
            }
        }
    }

    pub fn insert(&mut self, f: &Dense) {
        let r = self.reduce(f);
        if let Some((k, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let row: Dense = r.into_iter().map(|(m, a)| (m, a / &c)).collect();
            self.rows.insert(k, row);
        }
    }
}

/// Membership of `f` in `(gens)` with cofactors bounded so every product
/// `m g_i` has total degree at most `bound`: plain linear algebra.
pub fn bounded_member(f: &Polynomial, gens: &[Polynomial], bound: u32) -> bool {
    let n = f.nvars();
    let mut ech = Echelon::default();
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        if g.is_zero() || dg > bound {
            continue;
        }
        let gd = dense(g);
        for m in monomials(n, bound - dg) {
            ech.insert(&shift(&gd, &m));
        }
    }
    ech.reduce(&dense(f)).is_empty()
}

/// `u ∈ rad(I)` by Rabinowitsch: `1 ∈ I + (1 - t u)` in one more variable.
/// Uses the Gröbner engine on a fresh ring.
pub fn rabinowitsch(ring: &PolyRing, gens: &[Polynomial], u: &Polynomial) -> bool {
    let mut names: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
    names.push("t_rab");
    let big = PolyRing::parse(ring.field().clone(), &names, &[]).unwrap();
    let lift = |f: &Polynomial| big.poly(&ring.fmt_poly(f)).unwrap();
    let mut all: Vec<Polynomial> = gens.iter().map(lift).collect();
    all.push(&big.one() - &(&big.var("t_rab").unwrap() * &lift(u)));
    IdealHandle::new(&big, all).unwrap().is_unit().unwrap()
}

/// Integer HNF `{a, b + c w}` of the lattice spanned by `(x, y) = x + y w`.
pub fn hnf2(vectors: &[(BigInt, BigInt)]) -> (BigInt, BigInt, BigInt) {
    let mut rows: Vec<(BigInt, BigInt)> = vectors.to_vec();
    // Euclid on the w column.
    loop {
        rows.retain(|r| !(r.0.is_zero() && r.1.is_zero()));
        let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| rows[i].1.abs()).unwrap();
        let (px, py) = rows[p].clone();
        for &i in &nz {
            if i != p {
                let k = rows[i].1.div_floor(&py);
                rows[i] = (&rows[i].0 - &k * &px, &rows[i].1 - &k * &py);
            }
        }
    }
    let piv = rows.iter().find(|r| !r.1.is_zero()).cloned().expect("rank two");
    let a = rows.iter().filter(|r| r.1.is_zero()).fold(BigInt::zero(), |g, r| g.gcd(&r.0));
    let (mut b, mut c) = piv;
    if c.is_negative() {
        b = -b;
        c = -c;
    }
    (a.clone(), b.mod_floor(&a), c)
}

/// Chord and tangent on `y^2 = x^3 + a x + b`; `None` is the point at
/// infinity.
pub type Pt = Option<(BigRational, BigRational)>;

pub fn ec_add(p: &Pt, r: &Pt, a: &BigRational) -> Pt {
    let (Some((x1, y1)), Some((x2, y2))) = (p, r) else {
        return p.clone().or_else(|| r.clone());
    };
    let l = if x1 != x2 {
        (y2 - y1) / (x2 - x1)
    } else if y1 == y2 && !y1.is_zero() {
        (q(3) * x1 * x1 + a) / (q(2) * y1)
    } else {
        return None;
    };
    let x3 = &l * &l - x1 - x2;
    let y3 = l * (x1 - &x3) - y1;
    Some((x3, y3))
}

pub fn ring(field: ScalarField, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::parse(field, vars, &[]).unwrap()
}
