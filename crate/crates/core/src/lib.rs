//! Prime avoidance made executable: exact polynomial arithmetic, a
//! Gröbner-basis ideal engine, avoidance witnesses for finite and localized
//! closed families of primes, and class-group tests for when a maximal ideal
//! is the radical of a principal ideal.

pub mod avoidance;
pub mod class_groups;
pub mod error;
pub mod families;
pub mod field;
pub mod ideal;
pub mod poly;
pub mod report;
pub mod sampling;

pub use avoidance::{
    check_condition8, decide_union_finite, in_lambda_cl, lambda_max, lemma_witness, pullback_primes, AvoidVerdict,
    Condition8Config, FinitePrimeSet, PrimeSet, Pullback, WitnessCertificate,
};
pub use error::{Error, Result};
pub use families::{FamilyUnionCertificate, LocalizedClosedFamily};
pub use field::{Scalar, ScalarField};
pub use ideal::{IdealHandle, PrimeCertificate, PrimeIdeal, RingMap};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial};
pub use report::Report;
