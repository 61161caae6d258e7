//! Seeded generators for random polynomials and ideal elements.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ideal::IdealHandle;
use crate::poly::{Monomial, PolyRing, Polynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random polynomial with up to `terms` terms of total degree at most
/// `max_degree` in the listed variables, coefficients in `-coef..=coef`.
pub fn random_poly_in(
    rng: &mut impl Rng,
    ring: &PolyRing,
    vars: &[usize],
    max_degree: u32,
    terms: usize,
    coef: i64,
) -> Polynomial {
    let n = ring.nvars();
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            if vars.is_empty() {
                break;
            }
            e[vars[rng.gen_range(0..vars.len())]] += 1;
        }
        let c = rng.gen_range(-coef..=coef);
        out.push((Monomial::from_exponents(e), ring.field().from_i64(c)));
    }
    Polynomial::from_terms(ring.field(), n, out)
}

pub fn random_poly(rng: &mut impl Rng, ring: &PolyRing, max_degree: u32, terms: usize, coef: i64) -> Polynomial {
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    random_poly_in(rng, ring, &vars, max_degree, terms, coef)
}

/// `count` elements `sum r_i g_i` of the ideal, nonzero in the quotient
/// ring, with random multipliers of degree at most 2.
pub fn ideal_elements(ideal: &IdealHandle, count: usize, seed: u64) -> Result<Vec<Polynomial>> {
    let mut rng = rng(seed);
    let ring = ideal.ring();
    let zero = IdealHandle::zero(ring);
    let mut out = Vec::with_capacity(count);
    if ideal.generators().is_empty() {
        return Ok(out);
    }
    let mut attempts = 0;
    while out.len() < count && attempts < 50 * count + 50 {
        attempts += 1;
        let mut f = ring.zero();
        for g in ideal.generators() {
            let r = random_poly(&mut rng, ring, 2, 3, 3);
            f = &f + &(&r * g);
        }
        if !f.is_zero() && !zero.member(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}
