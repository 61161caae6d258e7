use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::single_variable;
use super::{is_monomial_prime, IdealHandle};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::{irreducibility_evidence, Polynomial};

/// Why an ideal is known to be prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeCertificate {
    /// Generated by variables, with the relations inside.
    Monomial,
    /// Kernel of evaluation at a point with coordinates in the ring's field.
    PointKernel(Vec<Scalar>),
    /// `(f)` in a polynomial ring with `f` irreducible.
    PrincipalIrreducible,
    /// `(x_i..., f)` with `f` irreducible in the remaining variables and the
    /// relations inside; the quotient is `k[rest]/(f)`.
    VariablesPlusIrreducible { vars: Vec<usize> },
    /// Trusted without proof.
    Asserted,
}

#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    ideal: IdealHandle,
    certificate: PrimeCertificate,
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ideal.fmt(f)
    }
}

impl PrimeIdeal {
    /// Attach a certificate, checking it.
    pub fn with_certificate(ideal: IdealHandle, certificate: PrimeCertificate) -> Result<Self> {
        let p = PrimeIdeal { ideal, certificate };
        if p.verify()? {
            Ok(p)
        } else {
            Err(Error::Precondition(format!("certificate {:?} does not hold for {}", p.certificate, p.ideal)))
        }
    }

    pub fn asserted(ideal: IdealHandle) -> Self {
        PrimeIdeal { ideal, certificate: PrimeCertificate::Asserted }
    }

    /// Try the checkable certificate classes in turn.
    pub fn certify(ideal: IdealHandle) -> Result<Self> {
        if is_monomial_prime(&ideal) {
            return Ok(PrimeIdeal { ideal, certificate: PrimeCertificate::Monomial });
        }
        if let Some(point) = linear_point(&ideal) {
            if let Ok(p) = Self::with_certificate(ideal.clone(), PrimeCertificate::PointKernel(point)) {
                return Ok(p);
            }
        }
        if ideal.generators().len() == 1 {
            if let Ok(p) = Self::with_certificate(ideal.clone(), PrimeCertificate::PrincipalIrreducible) {
                return Ok(p);
            }
        }
        let vars: Vec<usize> = ideal.generators().iter().filter_map(single_variable).collect();
        if vars.len() + 1 == ideal.generators().len() {
            if let Ok(p) = Self::with_certificate(ideal.clone(), PrimeCertificate::VariablesPlusIrreducible { vars }) {
                return Ok(p);
            }
        }
        Err(Error::Unsupported(format!("cannot certify {ideal} as prime; declare it asserted")))
    }

    /// Kernel of evaluation at `point`: `(x_i - a_i)`.
    pub fn point(ring: &std::sync::Arc<crate::poly::PolyRing>, point: Vec<Scalar>) -> Result<Self> {
        if point.len() != ring.nvars() {
            return Err(Error::Arity { expected: ring.nvars(), got: point.len() });
        }
        let gens = point
            .iter()
            .enumerate()
            .map(|(i, a)| {
                ring.field().check(a)?;
                Ok(&ring.var_at(i) - &Polynomial::constant(ring.field(), ring.nvars(), a.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::with_certificate(IdealHandle::new(ring, gens)?, PrimeCertificate::PointKernel(point))
    }

    pub fn monomial(ring: &std::sync::Arc<crate::poly::PolyRing>, vars: &[usize]) -> Result<Self> {
        let gens = vars.iter().map(|&v| ring.var_at(v)).collect();
        Self::with_certificate(IdealHandle::new(ring, gens)?, PrimeCertificate::Monomial)
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn certificate(&self) -> &PrimeCertificate {
        &self.certificate
    }

    pub fn into_ideal(self) -> IdealHandle {
        self.ideal
    }

    /// Re-check the certificate. `Asserted` always passes.
    pub fn verify(&self) -> Result<bool> {
        let ideal = &self.ideal;
        let ring = ideal.ring();
        match &self.certificate {
            PrimeCertificate::Monomial => Ok(is_monomial_prime(ideal)),
            PrimeCertificate::PointKernel(point) => {
                if point.len() != ring.nvars() || !point.iter().all(|a| ring.field().contains(a)) {
                    return Ok(false);
                }
                if ideal.is_unit()? {
                    return Ok(false);
                }
                // Every relation vanishes at the point, every generator
                // vanishes at the point, and each x_i - a_i is a member.
                for r in ring.relations() {
                    if !ring.field().is_zero(&r.evaluate(point)?) {
                        return Ok(false);
                    }
                }
                for g in ideal.generators() {
                    if !ring.field().is_zero(&g.evaluate(point)?) {
                        return Ok(false);
                    }
                }
                for (i, a) in point.iter().enumerate() {
                    let lin = &ring.var_at(i) - &Polynomial::constant(ring.field(), ring.nvars(), a.clone());
                    if !ideal.member(&lin)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            PrimeCertificate::PrincipalIrreducible => Ok(ring.is_polynomial_ring()
                && ideal.generators().len() == 1
                && irreducibility_evidence(&ideal.generators()[0]).is_some()),
            PrimeCertificate::VariablesPlusIrreducible { vars } => {
                let gens = ideal.generators();
                let mut seen = Vec::new();
                let mut rest = Vec::new();
                for g in gens {
                    match single_variable(g) {
                        Some(v) if vars.contains(&v) && !seen.contains(&v) => seen.push(v),
                        _ => rest.push(g),
                    }
                }
                if seen.len() != vars.len() || rest.len() != 1 {
                    return Ok(false);
                }
                let f = rest[0].kill_variables(vars);
                if f.variables().iter().any(|v| vars.contains(v)) || irreducibility_evidence(&f).is_none() {
                    return Ok(false);
                }
                // Relations must lie in (vars, f) upstairs.
                let upstairs = IdealHandle::new(&ring.ambient(), gens.to_vec())?;
                for r in ring.relations() {
                    if !upstairs.member(r)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            PrimeCertificate::Asserted => Ok(true),
        }
    }
}

/// The point `a` when the generators are exactly `x_i - a_i`, one per
/// variable.
fn linear_point(ideal: &IdealHandle) -> Option<Vec<Scalar>> {
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let mut point: Vec<Option<Scalar>> = vec![None; n];
    for g in ideal.generators() {
        if g.total_degree() != Some(1) {
            return None;
        }
        let vars = g.variables();
        if vars.len() != 1 {
            return None;
        }
        let v = vars[0];
        let lead = g.coefficient(&crate::poly::Monomial::var(n, v));
        let c = g.coefficient(&crate::poly::Monomial::one(n));
        let a = field.neg(&field.div(&c, &lead).ok()?);
        if point[v].is_some() {
            return None;
        }
        point[v] = Some(a);
    }
    point.into_iter().collect()
}
