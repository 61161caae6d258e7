//! Ideals of presented rings `k[x]/J`, always computed upstairs with the
//! relations of `J` adjoined to the generators.

mod groebner;
mod map;
mod monomial;
mod prime;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

use groebner::{Counter, Engine, TrackedBasis};

pub use groebner::DEFAULT_BUDGET;
pub use map::{contract_map, RingMap};
pub use monomial::{is_monomial_prime, monomial_min_primes};
pub use prime::{PrimeCertificate, PrimeIdeal};

/// `f = sum(quotients[i] * divisors[i]) + remainder`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cofactors {
    pub quotients: Vec<String>,
    pub remainder: String,
}

/// Division of `f` by a list of divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl Division {
    /// Re-check `f = sum q_i g_i + r`.
    pub fn verify(&self, f: &Polynomial, divisors: &[Polynomial]) -> bool {
        if self.quotients.len() != divisors.len() {
            return false;
        }
        let mut acc = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(divisors) {
            acc = &acc + &(q * g);
        }
        acc == *f
    }
}

/// Multivariate division of `f` by `divisors` under `order`. The remainder
/// is unique when the divisors form a Gröbner basis for `order`.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Result<Division> {
    for d in divisors {
        f.check_same_ring(d)?;
    }
    let field = f.field();
    let n = f.nvars();
    let nonzero: Vec<usize> = (0..divisors.len()).filter(|&i| !divisors[i].is_zero()).collect();
    let terms: Vec<_> = nonzero.iter().map(|&i| groebner::to_terms(&divisors[i], order)).collect();
    let mut counter = Counter::new(u64::MAX);
    let (rem, steps) = groebner::reduce_terms(field, order, groebner::to_terms(f, order), &terms, true, &mut counter)?;
    let mut quotients = vec![Polynomial::zero(field, n); divisors.len()];
    for (k, m, c) in steps {
        let i = nonzero[k];
        quotients[i] = &quotients[i] + &Polynomial::monomial(field, m, c);
    }
    Ok(Division { quotients, remainder: groebner::from_terms(field, n, rem) })
}

/// Cofactors expressing a member of an ideal over its generators and the
/// ring relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lift {
    pub generators: Vec<Polynomial>,
    pub relations: Vec<Polynomial>,
}

impl Lift {
    pub fn combine(&self, ideal: &IdealHandle) -> Polynomial {
        let mut acc = ideal.ring.zero();
        for (c, g) in self.generators.iter().zip(&ideal.generators) {
            acc = &acc + &(c * g);
        }
        for (c, g) in self.relations.iter().zip(ideal.ring.relations()) {
            acc = &acc + &(c * g);
        }
        acc
    }

    pub fn verify(&self, f: &Polynomial, ideal: &IdealHandle) -> bool {
        self.generators.len() == ideal.generators.len()
            && self.relations.len() == ideal.ring.relations().len()
            && self.combine(ideal) == *f
    }
}

pub struct IdealHandle {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    budget: u64,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>,
    tracked: OnceLock<Arc<TrackedBasis>>,
}

impl Clone for IdealHandle {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().unwrap().clone();
        let tracked = OnceLock::new();
        if let Some(t) = self.tracked.get() {
            let _ = tracked.set(t.clone());
        }
        IdealHandle {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            budget: self.budget,
            cache: Mutex::new(cache),
            tracked,
        }
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealHandle({self})")
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| self.ring.fmt_poly(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl IdealHandle {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check(g)?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealHandle {
            ring: ring.clone(),
            generators,
            budget: DEFAULT_BUDGET,
            cache: Mutex::new(HashMap::new()),
            tracked: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<PolyRing>, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|g| ring.poly(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![ring.one()]).unwrap()
    }

    /// Set the reduction-step budget for Gröbner computations.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self.cache = Mutex::new(HashMap::new());
        self.tracked = OnceLock::new();
        self
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &ScalarField {
        self.ring.field()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Generators followed by the ring relations.
    pub fn all_generators(&self) -> Vec<Polynomial> {
        self.generators.iter().chain(self.ring.relations()).cloned().collect()
    }

    fn engine(&self, order: MonomialOrder) -> Engine<'_> {
        Engine { field: self.ring.field(), nvars: self.ring.nvars(), order, counter: Counter::new(self.budget) }
    }

    fn same_ring(&self, other: &IdealHandle) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    /// Reduced Gröbner basis of generators plus relations. Cached per order;
    /// concurrent fills compute the same basis.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(b) = self.cache.lock().unwrap().get(&order) {
            return Ok(b.clone());
        }
        let basis = Arc::new(self.engine(order).reduced_basis(&self.all_generators())?);
        self.cache.lock().unwrap().entry(order).or_insert_with(|| basis.clone());
        Ok(basis)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check(f)?;
        let basis = self.groebner(MonomialOrder::GRevLex)?;
        Ok(reduce(f, &basis, MonomialOrder::GRevLex)?.remainder)
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `J ⊆ self`.
    pub fn contains(&self, j: &IdealHandle) -> Result<bool> {
        self.same_ring(j)?;
        for g in &j.generators {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, j: &IdealHandle) -> Result<bool> {
        Ok(self.contains(j)? && j.contains(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.member(&self.ring.one())
    }

    /// Cofactors of `f` over generators and relations, or `None` if `f` is
    /// not a member.
    pub fn lift(&self, f: &Polynomial) -> Result<Option<Lift>> {
        self.ring.check(f)?;
        let gens = self.all_generators();
        let tracked = match self.tracked.get() {
            Some(t) => t.clone(),
            None => {
                let t = Arc::new(self.engine(MonomialOrder::GRevLex).buchberger(&gens, true)?);
                let _ = self.tracked.set(t.clone());
                t
            }
        };
        let field = self.ring.field();
        let n = self.ring.nvars();
        let order = MonomialOrder::GRevLex;
        let mut counter = Counter::new(self.budget);
        let (rem, steps) = groebner::reduce_terms(field, order, groebner::to_terms(f, order), &tracked.polys, true, &mut counter)?;
        if !rem.is_empty() {
            return Ok(None);
        }
        let mut cof = vec![Polynomial::zero(field, n); gens.len()];
        for (k, m, c) in steps {
            for (j, r) in tracked.reps[k].iter().enumerate() {
                if !r.is_zero() {
                    cof[j] = &cof[j] + &r.mul_term(&m, &c);
                }
            }
        }
        let relations = cof.split_off(self.generators.len());
        let lift = Lift { generators: cof, relations };
        debug_assert!(lift.verify(f, self));
        Ok(Some(lift))
    }

    pub fn sum(&self, j: &IdealHandle) -> Result<IdealHandle> {
        self.same_ring(j)?;
        let gens = self.generators.iter().chain(&j.generators).cloned().collect();
        Ok(IdealHandle::new(&self.ring, gens)?.with_budget(self.budget))
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<IdealHandle> {
        let gens = self.generators.iter().chain(extra).cloned().collect();
        Ok(IdealHandle::new(&self.ring, gens)?.with_budget(self.budget))
    }

    /// Ring with a fresh variable appended or prepended, relations carried.
    fn extended_ring(&self, first: bool) -> (Arc<PolyRing>, Vec<usize>, usize) {
        let n = self.ring.nvars();
        let mut name = "t".to_string();
        while self.ring.vars().contains(&name) {
            name.push('_');
        }
        let (map, t): (Vec<usize>, usize) = if first { ((1..=n).collect(), 0) } else { ((0..n).collect(), n) };
        let mut vars = self.ring.vars().to_vec();
        if first {
            vars.insert(0, name);
        } else {
            vars.push(name);
        }
        let rels = self.ring.relations().iter().map(|r| r.remap(n + 1, &map)).collect();
        let ring = PolyRing::with_relations(self.ring.field().clone(), vars, rels).expect("fresh variable is unique");
        (ring, map, t)
    }

    /// `f ∈ √I`, by testing `1 ∈ I + (1 - t f)`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        self.ring.check(f)?;
        let (ring, map, t) = self.extended_ring(false);
        let n = ring.nvars();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.remap(n, &map)).collect();
        gens.push(&ring.one() - &(&ring.var_at(t) * &f.remap(n, &map)));
        IdealHandle::new(&ring, gens)?.with_budget(self.budget).is_unit()
    }

    /// `I ∩ J`, by eliminating `t` from `t I + (1 - t) J`.
    pub fn intersect(&self, j: &IdealHandle) -> Result<IdealHandle> {
        self.same_ring(j)?;
        let (ring, map, t) = self.extended_ring(true);
        let n = ring.nvars();
        let tv = ring.var_at(t);
        let one_minus = &ring.one() - &tv;
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| &tv * &g.remap(n, &map)).collect();
        gens.extend(j.generators.iter().map(|g| &one_minus * &g.remap(n, &map)));
        let big = IdealHandle::new(&ring, gens)?.with_budget(self.budget);
        let basis = big.groebner(MonomialOrder::Block(1))?;
        let keep: Vec<usize> = map.clone();
        let out = basis.iter().filter_map(|g| g.restrict(&keep)).collect();
        Ok(IdealHandle::new(&self.ring, out)?.with_budget(self.budget))
    }

    /// `I : f`.
    pub fn colon(&self, f: &Polynomial) -> Result<IdealHandle> {
        self.ring.check(f)?;
        if f.is_zero() {
            return Ok(IdealHandle::unit(&self.ring).with_budget(self.budget));
        }
        // Upstairs: ((I + J) ∩ (f)) / f, which contains J.
        let ambient = self.ring.ambient();
        let lifted = IdealHandle::new(&ambient, self.all_generators())?.with_budget(self.budget);
        let principal = IdealHandle::new(&ambient, vec![f.clone()])?;
        let inter = lifted.intersect(&principal)?;
        let mut gens = Vec::new();
        for g in inter.generators() {
            gens.push(g.exact_div(f).ok_or_else(|| Error::Invalid("colon quotient is not exact".into()))?);
        }
        Ok(IdealHandle::new(&self.ring, gens)?.with_budget(self.budget))
    }

    /// `I : f^∞` by iterating colons until the chain stabilizes.
    pub fn saturate(&self, f: &Polynomial) -> Result<IdealHandle> {
        if f.is_zero() {
            return Err(Error::Precondition("saturation by zero".into()));
        }
        let mut cur = self.clone();
        loop {
            let next = cur.colon(f)?;
            if cur.contains(&next)? {
                return Ok(next);
            }
            cur = next;
        }
    }

    /// `I : f^∞` via a single elimination of `t` from `I + (1 - t f)`.
    pub fn saturate_rabinowitsch(&self, f: &Polynomial) -> Result<IdealHandle> {
        self.ring.check(f)?;
        let (ring, map, t) = self.extended_ring(true);
        let n = ring.nvars();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.remap(n, &map)).collect();
        gens.push(&ring.one() - &(&ring.var_at(t) * &f.remap(n, &map)));
        let big = IdealHandle::new(&ring, gens)?.with_budget(self.budget);
        let basis = big.groebner(MonomialOrder::Block(1))?;
        let out = basis.iter().filter_map(|g| g.restrict(&map)).collect();
        Ok(IdealHandle::new(&self.ring, out)?.with_budget(self.budget))
    }

    /// Saturation by the multiplicative set generated by `us`. This equals
    /// saturation by their product: a power of the product is a U-element,
    /// and any U-element divides a power of the product.
    pub fn saturate_by(&self, us: &[Polynomial]) -> Result<IdealHandle> {
        let mut prod = self.ring.one();
        for u in us {
            self.ring.check(u)?;
            prod = &prod * u;
        }
        self.saturate(&prod)
    }

    /// `I ∩ k[keep]` as an ideal of the polynomial ring in the kept
    /// variables (in the given order).
    pub fn eliminate(&self, keep: &[usize]) -> Result<IdealHandle> {
        let n = self.ring.nvars();
        for &k in keep {
            if k >= n {
                return Err(Error::Invalid(format!("variable index {k} out of range")));
            }
        }
        let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        // Permute so eliminated variables come first.
        let mut map = vec![0; n];
        for (pos, &v) in drop.iter().chain(keep.iter()).enumerate() {
            map[v] = pos;
        }
        let gens: Vec<Polynomial> = self.all_generators().iter().map(|g| g.remap(n, &map)).collect();
        let vars: Vec<String> = drop.iter().chain(keep.iter()).map(|&i| self.ring.vars()[i].clone()).collect();
        let perm_ring = PolyRing::new(self.ring.field().clone(), vars)?;
        let big = IdealHandle::new(&perm_ring, gens)?.with_budget(self.budget);
        let basis = big.groebner(MonomialOrder::Block(drop.len()))?;
        let kept_slots: Vec<usize> = (drop.len()..n).collect();
        let out_ring = PolyRing::new(self.ring.field().clone(), keep.iter().map(|&i| self.ring.vars()[i].clone()).collect())?;
        let out = basis.iter().filter_map(|g| g.restrict(&kept_slots)).collect();
        Ok(IdealHandle::new(&out_ring, out)?.with_budget(self.budget))
    }

    /// Generators of the reduced grevlex basis, printed.
    pub fn basis_strings(&self) -> Result<Vec<String>> {
        Ok(self.groebner(MonomialOrder::GRevLex)?.iter().map(|g| self.ring.fmt_poly(g)).collect())
    }
}

pub fn groebner(ideal: &IdealHandle, order: MonomialOrder) -> Result<Arc<Vec<Polynomial>>> {
    ideal.groebner(order)
}

pub fn ideal_member(f: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    ideal.member(f)
}

/// `J ⊆ I`.
pub fn ideal_contains(i: &IdealHandle, j: &IdealHandle) -> Result<bool> {
    i.contains(j)
}

pub fn ideal_eq(i: &IdealHandle, j: &IdealHandle) -> Result<bool> {
    i.equals(j)
}

pub fn radical_member(f: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    ideal.radical_member(f)
}

pub fn saturate(ideal: &IdealHandle, f: &Polynomial) -> Result<IdealHandle> {
    ideal.saturate(f)
}

pub fn eliminate(ideal: &IdealHandle, keep: &[usize]) -> Result<IdealHandle> {
    ideal.eliminate(keep)
}
