//! Monomial-ideal fast paths: prime recognition and minimal primes as
//! minimal vertex covers.

use std::collections::BTreeSet;

use super::{IdealHandle, PrimeCertificate, PrimeIdeal};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Variable index when `f` is a nonzero scalar multiple of a single variable.
pub(crate) fn single_variable(f: &Polynomial) -> Option<usize> {
    if !f.is_monomial() {
        return None;
    }
    let (m, _) = f.terms().next()?;
    (m.degree() == 1).then(|| m.support()[0])
}

/// True when the generators are distinct variables and every ring relation
/// lies in the ideal they span, so the quotient is a polynomial ring.
pub fn is_monomial_prime(ideal: &IdealHandle) -> bool {
    let mut vars = Vec::new();
    for g in ideal.generators() {
        match single_variable(g) {
            Some(v) if !vars.contains(&v) => vars.push(v),
            _ => return false,
        }
    }
    ideal.ring().relations().iter().all(|r| r.kill_variables(&vars).is_zero())
}

/// Minimal primes of an ideal generated (with the relations) by monomials:
/// the minimal vertex covers of the supports, as monomial primes sorted by
/// their variable lists.
pub fn monomial_min_primes(ideal: &IdealHandle) -> Result<Vec<PrimeIdeal>> {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for g in ideal.all_generators() {
        if !g.is_monomial() {
            return Err(Error::Invalid(format!("`{}` is not a monomial", ideal.ring().fmt_poly(&g))));
        }
        let support = g.terms().next().unwrap().0.support();
        if support.is_empty() {
            return Ok(Vec::new());
        }
        edges.push(support);
    }
    let covers = minimal_covers(&edges);
    covers
        .into_iter()
        .map(|c| {
            let gens = c.iter().map(|&v| ideal.ring().var_at(v)).collect();
            let handle = IdealHandle::new(ideal.ring(), gens)?.with_budget(ideal.budget());
            PrimeIdeal::with_certificate(handle, PrimeCertificate::Monomial)
        })
        .collect()
}

/// Minimal transversals of a hypergraph, each sorted, in lexicographic order.
pub(crate) fn minimal_covers(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn go(edges: &[Vec<usize>], chosen: &mut BTreeSet<usize>, out: &mut BTreeSet<Vec<usize>>) {
        match edges.iter().find(|e| e.iter().all(|v| !chosen.contains(v))) {
            None => {
                out.insert(chosen.iter().copied().collect());
            }
            Some(e) => {
                for &v in e {
                    chosen.insert(v);
                    go(edges, chosen, out);
                    chosen.remove(&v);
                }
            }
        }
    }
    let mut all = BTreeSet::new();
    go(edges, &mut BTreeSet::new(), &mut all);
    let all: Vec<Vec<usize>> = all.into_iter().collect();
    all.iter()
        .filter(|c| !all.iter().any(|d| d != *c && d.iter().all(|v| c.contains(v))))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;
    use crate::poly::PolyRing;
    use proptest::prelude::*;

    fn names(primes: &[PrimeIdeal]) -> Vec<String> {
        primes.iter().map(|p| p.ideal().to_string()).collect()
    }

    #[test]
    fn min_prime_examples() {
        let r = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &[]).unwrap();
        let p = monomial_min_primes(&IdealHandle::parse(&r, &["x*y"]).unwrap()).unwrap();
        assert_eq!(names(&p), vec!["(x)", "(y)"]);
        let p = monomial_min_primes(&IdealHandle::parse(&r, &["x*y", "x*z"]).unwrap()).unwrap();
        assert_eq!(names(&p), vec!["(x)", "(y, z)"]);
        let r4 = PolyRing::parse(ScalarField::Rationals, &["x0", "x1", "x2", "x3"], &["x0*x1", "x2*x3"]).unwrap();
        let p = monomial_min_primes(&IdealHandle::zero(&r4)).unwrap();
        assert_eq!(names(&p), vec!["(x0, x2)", "(x0, x3)", "(x1, x2)", "(x1, x3)"]);
        assert!(monomial_min_primes(&IdealHandle::parse(&r, &["x + y"]).unwrap()).is_err());
    }

    #[test]
    fn monomial_prime_recognition() {
        let r = PolyRing::parse(ScalarField::Rationals, &["x", "y", "z"], &["x*y", "x*z"]).unwrap();
        assert!(is_monomial_prime(&IdealHandle::parse(&r, &["y", "z"]).unwrap()));
        assert!(is_monomial_prime(&IdealHandle::parse(&r, &["x"]).unwrap()));
        assert!(!is_monomial_prime(&IdealHandle::parse(&r, &["y"]).unwrap()));
        assert!(!is_monomial_prime(&IdealHandle::parse(&r, &["x*y"]).unwrap()));
    }

    fn brute_force(edges: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
        let covers: Vec<u32> = (0u32..1 << n)
            .filter(|s| edges.iter().all(|e| e.iter().any(|v| s & (1 << v) != 0)))
            .collect();
        let mut out: Vec<Vec<usize>> = covers
            .iter()
            .filter(|&&s| !covers.iter().any(|&t| t != s && t & s == t))
            .map(|&s| (0..n).filter(|v| s & (1 << v) != 0).collect())
            .collect();
        out.sort();
        out
    }

    proptest! {
        #[test]
        fn covers_match_subset_enumeration(raw in proptest::collection::vec(1u32..256, 1..6)) {
            let edges: Vec<Vec<usize>> = raw.iter().map(|m| (0..8).filter(|v| m & (1 << v) != 0).collect()).collect();
            prop_assert_eq!(minimal_covers(&edges), brute_force(&edges, 8));
        }
    }
}
