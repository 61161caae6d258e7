use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{IdealHandle, Lift, PrimeIdeal};
use crate::poly::{PolyRing, Polynomial};

/// `V(I) ∩ Spec(U⁻¹R)`: primes containing `I` and missing the monoid
/// generated by `u_gens`.
#[derive(Clone, Debug)]
pub struct LocalizedClosedFamily {
    ideal: IdealHandle,
    u_gens: Vec<Polynomial>,
}

impl LocalizedClosedFamily {
    pub fn new(ideal: IdealHandle, u_gens: Vec<Polynomial>) -> Result<Self> {
        for u in &u_gens {
            ideal.ring().check(u)?;
            if u.is_zero() {
                return Err(Error::Invalid("multiplicative set generators must be nonzero".into()));
            }
        }
        Ok(LocalizedClosedFamily { ideal, u_gens })
    }

    /// `D(f)`: all primes not containing `f`.
    pub fn basic_open(ring: &Arc<PolyRing>, f: Polynomial) -> Result<Self> {
        Self::new(IdealHandle::zero(ring), vec![f])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn u_gens(&self) -> &[Polynomial] {
        &self.u_gens
    }

    fn u_power(&self, exponents: &[u32]) -> Polynomial {
        let mut u = self.ring().one();
        for (g, e) in self.u_gens.iter().zip(exponents) {
            u = &u * &g.pow(*e);
        }
        u
    }

    /// `(I + J) : U^∞`.
    pub fn saturation_with(&self, j: &IdealHandle) -> Result<IdealHandle> {
        self.ideal.sum(j)?.saturate_by(&self.u_gens)
    }

    /// Smallest element `prod u_i^{e_i}` of `J` by total degree in the
    /// exponents, then lexicographically; `J` must meet the monoid.
    fn find_monoid_element(&self, j: &IdealHandle) -> Result<(Vec<u32>, Polynomial, Lift)> {
        let k = self.u_gens.len();
        for total in 0u32.. {
            for e in compositions(total, k) {
                let u = self.u_power(&e);
                if let Some(lift) = j.lift(&u)? {
                    return Ok((e, u, lift));
                }
            }
            if k == 0 {
                break;
            }
        }
        Err(Error::NotFound("no element of the multiplicative set lies in the ideal".into()))
    }
}

/// Exponent vectors of length `k` summing to `total`, lexicographically
/// descending.
fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `p ∈ F`: `I ⊆ p` and no generator of `U` lies in `p`.
pub fn family_member(p: &PrimeIdeal, family: &LocalizedClosedFamily) -> Result<bool> {
    if !p.ideal().contains(family.ideal())? {
        return Ok(false);
    }
    for u in family.u_gens() {
        if p.ideal().member(u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub enum FamilyUnionCertificate {
    /// `((I + (g)) : U^∞)` is proper, so some prime of the family contains `g`.
    InUnion,
    /// `u = prod u_i^{e_i}` lies in `I + (g)`, so no prime of the family
    /// contains `g`.
    NotInUnion { exponents: Vec<u32>, u: Polynomial, lift: Lift },
}

impl FamilyUnionCertificate {
    pub fn is_in_union(&self) -> bool {
        matches!(self, FamilyUnionCertificate::InUnion)
    }

    /// For `NotInUnion`, recompute `u` from the exponents and recombine the
    /// cofactors over `I + (g)`. `InUnion` is rechecked by saturation.
    pub fn verify(&self, g: &Polynomial, family: &LocalizedClosedFamily) -> Result<bool> {
        let j = family.ideal().add_generators(std::slice::from_ref(g))?;
        match self {
            FamilyUnionCertificate::InUnion => Ok(!family.saturation_with(&j)?.is_unit()?),
            FamilyUnionCertificate::NotInUnion { exponents, u, lift } => Ok(exponents.len() == family.u_gens.len()
                && family.u_power(exponents) == *u
                && lift.verify(u, &j)),
        }
    }
}

/// Decide whether `g` lies in some prime of the family.
pub fn union_member(g: &Polynomial, family: &LocalizedClosedFamily) -> Result<FamilyUnionCertificate> {
    family.ring().check(g)?;
    let j = family.ideal().add_generators(std::slice::from_ref(g))?;
    if !j.saturate_by(family.u_gens())?.is_unit()? {
        return Ok(FamilyUnionCertificate::InUnion);
    }
    let (exponents, u, lift) = family.find_monoid_element(&j)?;
    Ok(FamilyUnionCertificate::NotInUnion { exponents, u, lift })
}

/// An element of `q` outside every prime of the family.
#[derive(Clone, Debug)]
pub struct FamilyWitness {
    pub element: Polynomial,
    pub certificate: FamilyUnionCertificate,
}

impl FamilyWitness {
    pub fn verify(&self, q: &IdealHandle, family: &LocalizedClosedFamily) -> Result<bool> {
        Ok(q.member(&self.element)?
            && !self.certificate.is_in_union()
            && self.certificate.verify(&self.element, family)?)
    }
}

/// When no prime of the family contains `q`, write some `u` in the monoid
/// as `(I-part) + (q-part)` and return the `q`-part; otherwise fail with the
/// proper ideal `(I + q) : U^∞`.
pub fn family_avoid_witness(q: &IdealHandle, family: &LocalizedClosedFamily) -> Result<FamilyWitness> {
    let sat = family.saturation_with(q)?;
    if !sat.is_unit()? {
        return Err(Error::FamilyContains(Box::new(sat)));
    }
    let j = family.ideal().sum(q)?;
    let (_, _, lift) = family.find_monoid_element(&j)?;
    let ni = family.ideal().generators().len();
    let mut element = q.ring().zero();
    for (c, g) in lift.generators[ni..].iter().zip(q.generators()) {
        element = &element + &(c * g);
    }
    let certificate = union_member(&element, family)?;
    Ok(FamilyWitness { element, certificate })
}

/// Exponent vector helper exposed for reports.
pub fn monoid_element_text(family: &LocalizedClosedFamily, exponents: &[u32]) -> String {
    let ring = family.ring();
    let parts: Vec<String> = family
        .u_gens()
        .iter()
        .zip(exponents)
        .filter(|(_, e)| **e > 0)
        .map(|(g, e)| if *e == 1 { format!("({})", ring.fmt_poly(g)) } else { format!("({})^{e}", ring.fmt_poly(g)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
