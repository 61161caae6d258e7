//! Buchberger's algorithm over a runtime field.
//!
//! Polynomials are handled internally as term vectors sorted in ascending
//! order, so the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Scalar, ScalarField};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

pub(crate) type Terms = Vec<(Monomial, Scalar)>;

pub(crate) struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    pub(crate) fn new(limit: u64) -> Self {
        Counter { used: 0, limit }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::Budget(self.limit))
        } else {
            Ok(())
        }
    }
}

pub(crate) fn to_terms(f: &Polynomial, order: MonomialOrder) -> Terms {
    let mut t: Terms = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    t
}

pub(crate) fn from_terms(field: &ScalarField, nvars: usize, t: Terms) -> Polynomial {
    Polynomial::from_terms(field, nvars, t)
}

/// `a - c * m * b`, both ascending.
fn axpy(field: &ScalarField, order: MonomialOrder, a: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, b: &[(Monomial, Scalar)]) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted: Vec<(Monomial, Scalar)> = b.iter().map(|(bm, bc)| (bm.mul(m), field.mul(bc, c))).collect();
    while i < a.len() && j < shifted.len() {
        match order.cmp(&a[i].0, &shifted[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((shifted[j].0.clone(), field.neg(&shifted[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.sub(&a[i].1, &shifted[j].1);
                if !field.is_zero(&s) {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (sm, sc) in &shifted[j..] {
        out.push((sm.clone(), field.neg(sc)));
    }
    out
}

/// One recorded division step: `coef * mono * divisor[index]`.
pub(crate) type Step = (usize, Monomial, Scalar);

/// Full reduction of `f` by `divisors`. Returns the remainder (ascending)
/// and, when `record` is set, the list of division steps.
pub(crate) fn reduce_terms(
    field: &ScalarField,
    order: MonomialOrder,
    mut f: Terms,
    divisors: &[Terms],
    record: bool,
    counter: &mut Counter,
) -> Result<(Terms, Vec<Step>)> {
    let mut rem_desc: Terms = Vec::new();
    let mut steps = Vec::new();
    while let Some((lm, lc)) = f.last().cloned() {
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(k, d)| d.last().and_then(|(dm, _)| lm.div(dm).map(|q| (k, q))));
        match hit {
            Some((k, q)) => {
                counter.tick()?;
                let d = &divisors[k];
                let dc = &d.last().unwrap().1;
                let c = field.div(&lc, dc)?;
                f.pop();
                f = axpy(field, order, &f, &c, &q, &d[..d.len() - 1]);
                if record {
                    steps.push((k, q, c));
                }
            }
            None => {
                f.pop();
                rem_desc.push((lm, lc));
            }
        }
    }
    rem_desc.reverse();
    Ok((rem_desc, steps))
}

fn s_poly(field: &ScalarField, order: MonomialOrder, a: &Terms, b: &Terms) -> Result<(Terms, Monomial, Scalar, Monomial, Scalar)> {
    let (am, ac) = a.last().unwrap();
    let (bm, bc) = b.last().unwrap();
    let l = am.lcm(bm);
    let ma = l.div(am).unwrap();
    let mb = l.div(bm).unwrap();
    let ca = field.inv(ac)?;
    let cb = field.inv(bc)?;
    // ca*ma*a - cb*mb*b, with leading terms cancelling.
    let left: Terms = a[..a.len() - 1].iter().map(|(m, c)| (m.mul(&ma), field.mul(c, &ca))).collect();
    let s = axpy(field, order, &left, &cb, &mb, &b[..b.len() - 1]);
    Ok((s, ma, ca, mb, cb))
}

/// Tracked basis element: the polynomial and its cofactors over the input
/// generators.
pub(crate) struct TrackedBasis {
    pub polys: Vec<Terms>,
    pub reps: Vec<Vec<Polynomial>>,
}

pub(crate) struct Engine<'a> {
    pub field: &'a ScalarField,
    pub nvars: usize,
    pub order: MonomialOrder,
    pub counter: Counter,
}

impl Engine<'_> {
    fn combine(&self, reps: &[Vec<Polynomial>], steps: &[Step], ngens: usize) -> Vec<Polynomial> {
        let mut acc = vec![Polynomial::zero(self.field, self.nvars); ngens];
        for (k, m, c) in steps {
            for (j, r) in reps[*k].iter().enumerate() {
                if !r.is_zero() {
                    acc[j] = &acc[j] + &r.mul_term(m, c);
                }
            }
        }
        acc
    }

    /// Buchberger with the product and chain criteria. With `track` set,
    /// every basis element carries its cofactors over `gens`; the result is
    /// then a (not necessarily reduced) Gröbner basis.
    pub(crate) fn buchberger(&mut self, gens: &[Polynomial], track: bool) -> Result<TrackedBasis> {
        let field = self.field;
        let order = self.order;
        let ngens = gens.len();
        let mut polys: Vec<Terms> = Vec::new();
        let mut reps: Vec<Vec<Polynomial>> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            polys.push(to_terms(g, order));
            if track {
                let mut r = vec![Polynomial::zero(field, self.nvars); ngens];
                r[i] = Polynomial::one(field, self.nvars);
                reps.push(r);
            }
        }
        // Constant generator: the unit ideal.
        if let Some(k) = polys.iter().position(|p| p.len() == 1 && p[0].0.is_one()) {
            let p = polys.swap_remove(k);
            let r = if track { vec![reps.swap_remove(k)] } else { Vec::new() };
            return Ok(TrackedBasis { polys: vec![p], reps: r });
        }
        let mut pending: Vec<(usize, usize)> = Vec::new();
        let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
        for j in 0..polys.len() {
            for i in 0..j {
                pending.push((i, j));
                pending_set.insert((i, j));
            }
        }
        while !pending.is_empty() {
            let pick = (0..pending.len())
                .min_by(|&x, &y| {
                    let (a, b) = pending[x];
                    let (c, d) = pending[y];
                    let l1 = polys[a].last().unwrap().0.lcm(&polys[b].last().unwrap().0);
                    let l2 = polys[c].last().unwrap().0.lcm(&polys[d].last().unwrap().0);
                    order.cmp(&l1, &l2).then((b, a).cmp(&(d, c)))
                })
                .unwrap();
            let (i, j) = pending.remove(pick);
            pending_set.remove(&(i, j));
            let lmi = &polys[i].last().unwrap().0;
            let lmj = &polys[j].last().unwrap().0;
            if lmi.is_coprime(lmj) {
                continue;
            }
            let l = lmi.lcm(lmj);
            let chain = (0..polys.len()).any(|k| {
                k != i
                    && k != j
                    && polys[k].last().unwrap().0.divides(&l)
                    && !pending_set.contains(&(i.min(k), i.max(k)))
                    && !pending_set.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            self.counter.tick()?;
            let (s, ma, ca, mb, cb) = s_poly(field, order, &polys[i], &polys[j])?;
            let (rem, steps) = reduce_terms(field, order, s, &polys, track, &mut self.counter)?;
            if rem.is_empty() {
                continue;
            }
            if track {
                // rem = ca*ma*g_i - cb*mb*g_j - sum(steps)
                let mut rep = self.combine(&reps, &steps, ngens);
                for r in rep.iter_mut() {
                    *r = -&*r;
                }
                for (jj, r) in reps[i].iter().enumerate() {
                    rep[jj] = &rep[jj] + &r.mul_term(&ma, &ca);
                }
                for (jj, r) in reps[j].iter().enumerate() {
                    rep[jj] = &rep[jj] - &r.mul_term(&mb, &cb);
                }
                reps.push(rep);
            }
            let is_unit = rem.len() == 1 && rem[0].0.is_one();
            polys.push(rem);
            if is_unit {
                let k = polys.len() - 1;
                let p = polys.swap_remove(k);
                let r = if track { vec![reps.swap_remove(k)] } else { Vec::new() };
                return Ok(TrackedBasis { polys: vec![p], reps: r });
            }
            let n = polys.len() - 1;
            for k in 0..n {
                pending.push((k, n));
                pending_set.insert((k, n));
            }
        }
        Ok(TrackedBasis { polys, reps })
    }

    /// Reduced, monic Gröbner basis sorted by descending leading monomial.
    pub(crate) fn reduced_basis(&mut self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let tb = self.buchberger(gens, false)?;
        let field = self.field;
        let order = self.order;
        let mut polys = tb.polys;
        // Minimize: drop elements whose lead is divisible by another lead.
        let mut keep: Vec<Terms> = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            let lm = &p.last().unwrap().0;
            let redundant = polys.iter().enumerate().any(|(k, q)| {
                let qm = &q.last().unwrap().0;
                k != i && qm.divides(lm) && (qm != lm || k < i)
            });
            if !redundant {
                keep.push(p.clone());
            }
        }
        polys = keep;
        for p in polys.iter_mut() {
            let inv = field.inv(&p.last().unwrap().1)?;
            for t in p.iter_mut() {
                t.1 = field.mul(&t.1, &inv);
            }
        }
        // Interreduce tails.
        for i in 0..polys.len() {
            let others: Vec<Terms> = polys.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p.clone()).collect();
            let mut p = polys[i].clone();
            let lead = p.pop().unwrap();
            let (mut rem, _) = reduce_terms(field, order, p, &others, false, &mut self.counter)?;
            rem.push(lead);
            polys[i] = rem;
        }
        polys.sort_by(|a, b| order.cmp(&b.last().unwrap().0, &a.last().unwrap().0));
        Ok(polys.into_iter().map(|t| from_terms(field, self.nvars, t)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn basis(ring: &PolyRing, gens: &[&str], order: MonomialOrder) -> Vec<String> {
        let gens: Vec<Polynomial> = gens.iter().map(|g| ring.poly(g).unwrap()).collect();
        let mut e = Engine { field: ring.field(), nvars: ring.nvars(), order, counter: Counter::new(DEFAULT_BUDGET) };
        e.reduced_basis(&gens).unwrap().iter().map(|p| ring.fmt_poly(p)).collect()
    }

    #[test]
    fn small_bases() {
        let r = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &[]).unwrap();
        assert_eq!(basis(&r, &["x"], MonomialOrder::Lex), vec!["x"]);
        assert_eq!(basis(&r, &["x*y - 1", "y^2 - 1"], MonomialOrder::Lex), vec!["x - y", "y^2 - 1"]);
        assert_eq!(basis(&r, &["x*y", "x*z"], MonomialOrder::GRevLex), vec!["x*y", "x*z"]);
        assert_eq!(basis(&r, &["x + 1", "x"], MonomialOrder::GRevLex), vec!["1"]);
    }

    #[test]
    fn tracked_cofactors_reproduce_basis() {
        let r = PolyRing::parse(ScalarField::Rationals, &["x", "y"], &[]).unwrap();
        let gens = vec![r.poly("x^2*y - 1").unwrap(), r.poly("x*y^2 - x").unwrap()];
        let mut e = Engine { field: r.field(), nvars: 2, order: MonomialOrder::GRevLex, counter: Counter::new(DEFAULT_BUDGET) };
        let tb = e.buchberger(&gens, true).unwrap();
        for (p, rep) in tb.polys.iter().zip(&tb.reps) {
            let mut acc = r.zero();
            for (c, g) in rep.iter().zip(&gens) {
                acc = &acc + &(c * g);
            }
            assert_eq!(acc, from_terms(r.field(), 2, p.clone()));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let r = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &[]).unwrap();
        let gens: Vec<Polynomial> = ["x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y + 2"].iter().map(|g| r.poly(g).unwrap()).collect();
        let mut e = Engine { field: r.field(), nvars: 3, order: MonomialOrder::Lex, counter: Counter::new(5) };
        assert!(matches!(e.reduced_basis(&gens), Err(Error::Budget(5))));
    }
}
