//! Class groups of imaginary quadratic orders and rational points on
//! elliptic curves, used to decide when a single maximal ideal is the radical
//! of a principal ideal.
//!
//! The elliptic verdict relies on `Cl(k[E]) ≅ E(QQ)` via `[m_P] ↦ P` for the
//! affine coordinate ring, and on Mazur's list of torsion orders; neither is
//! re-proved here.

mod elliptic;
mod forms;
mod ideals;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use elliptic::{ec_add, ec_mul, ec_neg, ec_torsion_order, CurvePoint, EllipticCurve, TorsionCertificate, MAZUR_BOUND};
pub use forms::{class_group, compose, is_fundamental, reduce_form, ClassGroup, QuadForm};
pub use ideals::{ara1_witness_quadratic, prime_above, Ara1Certificate, QuadElement, QuadIdeal, Splitting};

use crate::error::Result;

#[derive(Clone, Debug)]
pub enum DdSetting {
    /// The prime above `p` in the order of discriminant `disc`.
    Quadratic { disc: BigInt, p: u64 },
    /// The maximal ideal of a rational point on the affine curve.
    Elliptic { curve: EllipticCurve, point: CurvePoint },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DdEvidence {
    Quadratic { splitting: Splitting, certificate: Ara1Certificate },
    Elliptic(TorsionCertificate),
}

/// Whether the maximal spectrum minus `m` satisfies prime avoidance, i.e.
/// whether `[m]` is torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdVerdict {
    pub holds: bool,
    pub order: Option<u64>,
    pub evidence: DdEvidence,
}

impl DdVerdict {
    pub fn verify(&self) -> Result<bool> {
        Ok(match &self.evidence {
            DdEvidence::Quadratic { certificate, .. } => {
                self.holds && self.order == Some(certificate.n as u64) && certificate.verify()?
            }
            DdEvidence::Elliptic(t) => t.verify() && self.holds == t.order.is_some() && self.order == t.order,
        })
    }
}

pub fn dd_verdict(setting: &DdSetting) -> Result<DdVerdict> {
    match setting {
        DdSetting::Quadratic { disc, p } => {
            let (splitting, m) = prime_above(*p, disc)?;
            let m = match m {
                Some(m) => m,
                None => QuadIdeal::principal(disc, &QuadElement::new(*p, 0))?,
            };
            let certificate = ara1_witness_quadratic(&m)?;
            Ok(DdVerdict {
                holds: true,
                order: Some(certificate.n as u64),
                evidence: DdEvidence::Quadratic { splitting, certificate },
            })
        }
        DdSetting::Elliptic { curve, point } => {
            let t = ec_torsion_order(point, curve)?;
            Ok(DdVerdict { holds: t.order.is_some(), order: t.order, evidence: DdEvidence::Elliptic(t) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let v = dd_verdict(&DdSetting::Quadratic { disc: BigInt::from(-20), p: 2 }).unwrap();
        assert!(v.holds && v.order == Some(2) && v.verify().unwrap());
        let v = dd_verdict(&DdSetting::Quadratic { disc: BigInt::from(-20), p: 11 }).unwrap();
        assert_eq!(v.order, Some(1));
        let e = EllipticCurve::new(0, 1).unwrap();
        let v = dd_verdict(&DdSetting::Elliptic { curve: e, point: CurvePoint::affine(2, 3) }).unwrap();
        assert!(v.holds && v.order == Some(6) && v.verify().unwrap());
        let e = EllipticCurve::new(0, -2).unwrap();
        let v = dd_verdict(&DdSetting::Elliptic { curve: e, point: CurvePoint::affine(3, 5) }).unwrap();
        assert!(!v.holds && v.verify().unwrap());
    }
}
