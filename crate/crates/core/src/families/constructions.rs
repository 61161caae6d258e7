//! Explicit primes from the non-Noetherian and non-domain examples, minimal
//! primes of principal ideals, and the bounded arithmetic-rank search.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::ideal::{IdealHandle, PrimeCertificate, PrimeIdeal};
use crate::poly::{factor_bivariate, irreducibility_evidence, Monomial, PolyRing, Polynomial};

/// `k[x0..x_{2N+1}]/(x0 x1, x2 x3, ..., x_{2N} x_{2N+1})`.
pub fn truncated_pairs_ring(field: ScalarField, n: usize) -> Arc<PolyRing> {
    let vars: Vec<String> = (0..2 * n + 2).map(|i| format!("x{i}")).collect();
    let nv = vars.len();
    let rels = (0..=n)
        .map(|i| {
            let mut e = vec![0; nv];
            e[2 * i] = 1;
            e[2 * i + 1] = 1;
            Polynomial::monomial(&field, Monomial::from_exponents(e), field.one())
        })
        .collect();
    PolyRing::with_relations(field, vars, rels).expect("distinct variable names")
}

/// Truncation level `N` when `ring` is the pairs ring, else `None`.
fn pairs_level(ring: &PolyRing) -> Option<usize> {
    let nv = ring.nvars();
    if nv < 2 || !nv.is_multiple_of(2) {
        return None;
    }
    let n = nv / 2 - 1;
    let expected = truncated_pairs_ring(ring.field().clone(), n);
    (expected.relations() == ring.relations()).then_some(n)
}

/// The prime `(x1, x3, ...)` of odd variables.
pub fn odd_prime(ring: &Arc<PolyRing>) -> Result<PrimeIdeal> {
    let n = pairs_level(ring).ok_or_else(|| Error::Precondition("ring is not a truncated pairs ring".into()))?;
    let odd: Vec<usize> = (0..=n).map(|i| 2 * i + 1).collect();
    PrimeIdeal::monomial(ring, &odd)
}

/// A minimal prime of the pairs ring containing `f ∈ (x1, x3, ...)` other
/// than the odd prime.
///
/// Each term of `f` is charged to its smallest odd variable; if the largest
/// charged index is `2j - 1`, the prime picks `x1, ..., x_{2j-1}` and then
/// the even variables `x_{2j}, ..., x_{2N}`. When that runs past the
/// truncation, the pairs are scanned for one whose even pick still contains
/// `f`.
pub fn truncated_pairs_prime(f: &Polynomial, n: usize) -> Result<PrimeIdeal> {
    let nv = 2 * n + 2;
    if f.nvars() != nv {
        return Err(Error::Arity { expected: nv, got: f.nvars() });
    }
    let ring = truncated_pairs_ring(f.field().clone(), n);
    if f.is_zero() || IdealHandle::zero(&ring).member(f)? {
        return Err(Error::Precondition("f is zero".into()));
    }
    let odd: Vec<usize> = (0..=n).map(|i| 2 * i + 1).collect();
    if !f.kill_variables(&odd).is_zero() {
        return Err(Error::Precondition("f is not in the odd prime".into()));
    }
    let j = f
        .terms()
        .map(|(m, _)| {
            let smallest = odd.iter().find(|&&v| m.exponents()[v] > 0).expect("every term has an odd variable");
            smallest.div_ceil(2)
        })
        .max()
        .unwrap();
    let pick = |even_pairs: &[usize]| -> Vec<usize> {
        let mut vars: Vec<usize> = (0..=n).map(|i| if even_pairs.contains(&i) { 2 * i } else { 2 * i + 1 }).collect();
        vars.sort();
        vars
    };
    let contains = |vars: &[usize]| f.kill_variables(vars).is_zero();
    let vars = if j <= n {
        pick(&(j..=n).collect::<Vec<_>>())
    } else {
        (0..=n)
            .map(|i| pick(&[i]))
            .find(|v| contains(v))
            .ok_or_else(|| Error::NotFound("every minimal prime containing f is the odd prime in this truncation".into()))?
    };
    debug_assert!(contains(&vars));
    PrimeIdeal::monomial(&ring, &vars)
}

/// All minimal primes of the pairs ring: one variable from each pair.
pub fn pairs_min_primes(ring: &Arc<PolyRing>) -> Result<Vec<PrimeIdeal>> {
    crate::ideal::monomial_min_primes(&IdealHandle::zero(ring))
}

fn is_nondomain_ring(ring: &PolyRing) -> bool {
    if ring.nvars() != 3 {
        return false;
    }
    let expected = PolyRing::parse(ring.field().clone(), &["x", "y", "z"], &["x*y", "x*z"]).unwrap();
    expected.relations() == ring.relations()
}

/// In `k[x,y,z]/(xy, xz)`, a height-one prime `(x, f1)` containing
/// `f ∈ (y, z)`, where `f1` is the first irreducible factor of `f(0, y, z)`.
pub fn height_one_cover(f: &Polynomial) -> Result<PrimeIdeal> {
    let ring = PolyRing::parse(f.field().clone(), &["x", "y", "z"], &["x*y", "x*z"])?;
    ring.check(f)?;
    if IdealHandle::zero(&ring).member(f)? {
        return Err(Error::Precondition("f is zero".into()));
    }
    if !f.kill_variables(&[1, 2]).is_zero() {
        return Err(Error::Precondition("f is not in (y, z)".into()));
    }
    let fbar = f.kill_variables(&[0]);
    let factors = factor_bivariate(&fbar, 1, 2)?;
    let f1 = factors.into_iter().next().ok_or_else(|| Error::Invalid("no factor".into()))?;
    let ideal = IdealHandle::new(&ring, vec![ring.var_at(0), f1])?;
    let p = PrimeIdeal::with_certificate(ideal, PrimeCertificate::VariablesPlusIrreducible { vars: vec![0] })?;
    debug_assert!(p.ideal().member(f)?);
    Ok(p)
}

/// `(y, z)` in the non-domain ring.
pub fn nondomain_prime(ring: &Arc<PolyRing>) -> Result<PrimeIdeal> {
    if !is_nondomain_ring(ring) {
        return Err(Error::Precondition("ring is not k[x,y,z]/(xy, xz)".into()));
    }
    PrimeIdeal::monomial(ring, &[1, 2])
}

/// A minimal prime over `(f)`: for a monomial, a variable dividing it; for
/// a supplied factorization, the principal prime of the first factor.
pub fn ht_le1_prime_of(ring: &Arc<PolyRing>, f: &Polynomial, factors: Option<&[Polynomial]>) -> Result<PrimeIdeal> {
    ring.check(f)?;
    if f.is_zero() || f.is_constant() {
        return Err(Error::Precondition("f must be a nonzero nonunit".into()));
    }
    if !ring.is_polynomial_ring() {
        return Err(Error::Unsupported("minimal primes of principal ideals need a polynomial ring".into()));
    }
    if f.is_monomial() {
        let v = f.terms().next().unwrap().0.support()[0];
        return PrimeIdeal::monomial(ring, &[v]);
    }
    let factors = factors.ok_or_else(|| Error::Unsupported("non-monomial f needs an irreducible factor list".into()))?;
    let mut prod = ring.one();
    for g in factors {
        ring.check(g)?;
        if irreducibility_evidence(g).is_none() {
            return Err(Error::Unsupported(format!("cannot certify `{}` irreducible", ring.fmt_poly(g))));
        }
        prod = &prod * g;
    }
    // The product must agree with f up to a nonzero scalar.
    let (_, lc_f) = f.leading_term(crate::poly::MonomialOrder::GRevLex).unwrap();
    let scaled = match prod.leading_term(crate::poly::MonomialOrder::GRevLex) {
        Some((_, lc_p)) => prod.scale(&ring.field().div(lc_f, lc_p)?),
        None => prod.clone(),
    };
    if scaled != *f {
        return Err(Error::Invalid("factors do not multiply to f".into()));
    }
    PrimeIdeal::with_certificate(IdealHandle::new(ring, vec![factors[0].clone()])?, PrimeCertificate::PrincipalIrreducible)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ara1Result {
    /// `√(f) = q`.
    Found(Polynomial),
    /// No candidate of degree at most `degree` works.
    Exhausted { degree: u32, candidates: usize },
}

/// Monomials of total degree at most `d` in `n` variables, by degree and
/// then lexicographically descending.
fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            go(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut layer = Vec::new();
        if n == 0 {
            if deg == 0 {
                layer.push(vec![]);
            }
        } else {
            go(n, deg, &mut Vec::new(), &mut layer);
        }
        out.extend(layer);
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

/// Search for `f ∈ q` with `√(f) = q` among: monomials of degree at most
/// `d` lying in `q`, then `m1 g_i ± m2 g_j` for generators `g_i, g_j` of `q`
/// and monomials `m1, m2` keeping the degree at most `d`.
pub fn ara1_search(q: &PrimeIdeal, d: u32) -> Result<Ara1Result> {
    let ideal = q.ideal();
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let zero = IdealHandle::zero(ring);
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut tested = 0usize;
    let mut test = |f: Polynomial, seen: &mut BTreeSet<String>| -> Result<Option<Polynomial>> {
        if f.is_zero() {
            return Ok(None);
        }
        let nf = zero.normal_form(&f)?;
        if nf.is_zero() || !seen.insert(ring.fmt_poly(&nf.monic(crate::poly::MonomialOrder::GRevLex))) {
            return Ok(None);
        }
        tested += 1;
        if !ideal.member(&nf)? {
            return Ok(None);
        }
        let principal = IdealHandle::new(ring, vec![nf.clone()])?.with_budget(ideal.budget());
        for g in ideal.generators() {
            if !principal.radical_member(g)? {
                return Ok(None);
            }
        }
        Ok(Some(nf))
    };
    let monos = monomials_up_to(n, d);
    for m in &monos {
        if m.is_one() {
            continue;
        }
        let f = Polynomial::monomial(field, m.clone(), field.one());
        if let Some(found) = test(f, &mut seen)? {
            return Ok(Ara1Result::Found(found));
        }
    }
    let gens = ideal.generators();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let (gi, gj) = (&gens[i], &gens[j]);
            let di = gi.total_degree().unwrap_or(0);
            let dj = gj.total_degree().unwrap_or(0);
            if di > d || dj > d {
                continue;
            }
            let left: Vec<&Monomial> = monos.iter().filter(|m| m.degree() + di <= d).collect();
            let right: Vec<&Monomial> = monos.iter().filter(|m| m.degree() + dj <= d).collect();
            for m1 in &left {
                let a = gi.mul_term(m1, &field.one());
                for m2 in &right {
                    let b = gj.mul_term(m2, &field.one());
                    for sign in [1i64, -1] {
                        let f = &a + &b.scale(&field.from_i64(sign));
                        if let Some(found) = test(f, &mut seen)? {
                            return Ok(Ara1Result::Found(found));
                        }
                    }
                }
            }
        }
    }
    Ok(Ara1Result::Exhausted { degree: d, candidates: tested })
}
