//! Infinite prime families given as `V(I) ∩ Spec(U⁻¹R)`, and the explicit
//! constructions behind the worked examples.

mod constructions;
mod family;
mod points;
mod units;
mod verify;

pub use constructions::{
    ara1_search, height_one_cover, ht_le1_prime_of, nondomain_prime, odd_prime, pairs_min_primes,
    truncated_pairs_prime, truncated_pairs_ring, Ara1Result,
};
pub use family::{
    family_avoid_witness, family_member, monoid_element_text, union_member, FamilyUnionCertificate, FamilyWitness,
    LocalizedClosedFamily,
};
pub use points::{line_avoiding, other_max_point, ClosedPoint, Line};
pub use units::{cauchy_bound, units_lift, UnitsCertificate};
pub use verify::{
    closed_pts_verify, epi_counterexample_verify, epi_kernel, epi_ring_map, is_valid_pairs_prime,
    non_domain_verify, sample_odd_element, set_ops_verify, verify_example, ExampleOptions, EXAMPLES,
};
